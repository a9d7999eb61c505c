"""
Soft thresholding, the proximal map of gamma * ||.||_1.
"""

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.types import FloatArray


def shrink(z: FloatArray, gamma: float) -> FloatArray:
    """
    Componentwise soft threshold sign(z) * max(|z| - gamma, 0).

    Entries with |z| == gamma map to exactly 0.

    Args:
        z: Input array of any shape.
        gamma: Non-negative threshold.

    Returns:
        Thresholded array of the same shape.

    Raises:
        InvalidParameterError: If gamma is negative.

    Example:
        >>> shrink(np.array([2.0, -0.5, 0.0]), 1.0).tolist()
        [1.0, -0.0, 0.0]
    """
    if gamma < 0:
        raise InvalidParameterError(f"shrink threshold must be non-negative, got {gamma}")
    z = np.asarray(z, dtype=np.float64)
    return np.sign(z) * np.maximum(np.abs(z) - gamma, 0.0)
