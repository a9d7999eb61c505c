"""
Fast Walsh-Hadamard transform in natural (Sylvester) order.
"""

import numpy as np

from csplume.errors import NonPowerOfTwoError
from csplume.types import FloatArray


def fwht(x: FloatArray) -> FloatArray:
    """
    Unnormalized Walsh-Hadamard transform along axis 0, O(n log n).

    Equivalent to ``scipy.linalg.hadamard(n) @ x``; columns of a 2-D input are
    transformed independently.

    Args:
        x: Vector or (n, m) matrix with n a power of two.

    Returns:
        New array of the same shape.

    Raises:
        NonPowerOfTwoError: If n is not a power of two.

    Example:
        >>> fwht(np.array([1.0, 0.0, 0.0, 0.0])).tolist()
        [1.0, 1.0, 1.0, 1.0]
    """
    y = np.array(x, dtype=np.float64, copy=True, order="C")
    n = y.shape[0]
    if n < 1 or n & (n - 1):
        raise NonPowerOfTwoError(f"Walsh-Hadamard transform needs a power-of-two length, got {n}")
    rest = y.shape[1:]
    h = 1
    while h < n:
        blocks = y.reshape((n // (2 * h), 2, h) + rest)
        upper = blocks[:, 0]
        lower = blocks[:, 1]
        difference = upper - lower
        upper += lower
        lower[...] = difference
        h *= 2
    return y
