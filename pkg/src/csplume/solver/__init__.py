"""
Split Bregman l1 reconstruction in the Haar basis.
"""

from csplume.solver.shrinkage import shrink
from csplume.solver.split_bregman import (
    column_norms,
    composite_adjoint,
    composite_forward,
    reconstruct_band,
    reconstruct_cube,
    reconstruct_frames,
    u_update,
)

__all__ = [
    # shrinkage
    "shrink",
    # split_bregman
    "composite_forward",
    "composite_adjoint",
    "column_norms",
    "u_update",
    "reconstruct_band",
    "reconstruct_cube",
    "reconstruct_frames",
]
