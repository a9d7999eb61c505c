"""
Haar wavelet basis used to sparsify flattened bands.
"""

from csplume.wavelet.haar import (
    decomposition_levels,
    haar_analysis,
    haar_forward,
    haar_forward_cube,
    haar_inverse,
    haar_inverse_cube,
    haar_synthesis,
    l1_norm,
)

__all__ = [
    "decomposition_levels",
    "haar_analysis",
    "haar_synthesis",
    "haar_forward",
    "haar_inverse",
    "haar_forward_cube",
    "haar_inverse_cube",
    "l1_norm",
]
