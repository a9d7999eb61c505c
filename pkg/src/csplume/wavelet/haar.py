"""
Orthonormal 1-D Haar transform of flattened bands.

Full-depth decomposition: a pair (a, b) maps to ((a + b)/sqrt(2), (a - b)/sqrt(2))
and the recursion continues on the approximation half, so a length n = 2^L
signal yields L levels. Coefficients are laid out as
``[scaling, coarsest detail, ..., finest details]``. The transform is
orthonormal, hence H^-1 = H^T.
"""

import numpy as np
import pywt

from csplume.errors import NonPowerOfTwoError
from csplume.models.cube import FlatCube
from csplume.models.wavelet import WaveletCoeffs
from csplume.types import FloatArray

_WAVELET = pywt.Wavelet("haar")


def decomposition_levels(n: int) -> int:
    """
    Number of Haar levels for a length-n signal.

    Raises:
        NonPowerOfTwoError: If n is not a positive power of two.

    Example:
        >>> decomposition_levels(4096)
        12
    """
    if n < 1 or n & (n - 1):
        raise NonPowerOfTwoError(f"Haar transform needs a power-of-two length, got {n}")
    return n.bit_length() - 1


def haar_analysis(x: FloatArray) -> FloatArray:
    """
    Forward transform along axis 0 of a vector or an (n, m) matrix.

    Columns are transformed independently.
    """
    levels = decomposition_levels(x.shape[0])
    x = np.asarray(x, dtype=np.float64)
    if levels == 0:
        return x.copy()
    parts = pywt.wavedec(x, _WAVELET, mode="periodization", level=levels, axis=0)
    return np.concatenate(parts, axis=0)


def haar_synthesis(u: FloatArray) -> FloatArray:
    """Inverse of ``haar_analysis`` along axis 0."""
    levels = decomposition_levels(u.shape[0])
    u = np.asarray(u, dtype=np.float64)
    if levels == 0:
        return u.copy()
    # slot 0 is the scaling coefficient, then detail blocks of 1, 2, 4, ... n/2
    bounds = [1] + [2**j for j in range(1, levels + 1)]
    parts = [u[:1]] + [u[bounds[j] : bounds[j + 1]] for j in range(levels)]
    return np.asarray(pywt.waverec(parts, _WAVELET, mode="periodization", axis=0))


def haar_forward(x: FloatArray) -> WaveletCoeffs:
    """
    Full-depth orthonormal Haar analysis of one signal.

    Args:
        x: Real vector whose length is a power of two.

    Returns:
        WaveletCoeffs with L = log2(n) levels.

    Raises:
        NonPowerOfTwoError: For any other length.

    Example:
        >>> haar_forward(np.ones(4)).values.round(12).tolist()
        [2.0, 0.0, 0.0, 0.0]
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a vector, got shape {x.shape}")
    return WaveletCoeffs(haar_analysis(x), decomposition_levels(x.size))


def haar_inverse(coeffs: WaveletCoeffs) -> FloatArray:
    """
    Haar synthesis: the signal whose analysis is ``coeffs``.

    Example:
        >>> haar_inverse(WaveletCoeffs(np.array([2.0, 0, 0, 0]), 2)).round(12).tolist()
        [1.0, 1.0, 1.0, 1.0]
    """
    return haar_synthesis(coeffs.values)


def haar_forward_cube(flat: FlatCube) -> FlatCube:
    """
    U = H X: transform every band column of a flattened cube.

    Raises:
        NonPowerOfTwoError: If flat.n is not a power of two.
    """
    return FlatCube(haar_analysis(flat.columns))


def haar_inverse_cube(coeffs: FlatCube) -> FlatCube:
    """X = H^-1 U, column by column."""
    return FlatCube(haar_synthesis(coeffs.columns))


def l1_norm(coeffs: FlatCube) -> float:
    """
    l1 norm of U taken as if U were flattened to one length n*b vector.

    Example:
        >>> l1_norm(FlatCube(np.array([[1.0, -2.0], [0.5, 0.0]])))
        3.5
    """
    return float(np.abs(coeffs.columns).sum())
