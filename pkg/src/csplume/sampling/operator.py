"""
Randomized, row-subsampled Walsh-Hadamard measurement operator S.

S = R W D P: P permutes the signal, D flips signs, W is the orthonormal
Walsh-Hadamard matrix and R keeps k rows, always including the constant row 0.
Rows of S are orthonormal, so S S^T = I_k. Everything is applied through the
fast transform; ``materialize`` exists only to check the fast paths.
"""

import logging
import math

import numpy as np
from scipy.linalg import hadamard

from csplume.errors import DimensionMismatchError, InvalidParameterError, NonPowerOfTwoError
from csplume.models.cube import FlatCube
from csplume.models.sampling import Measurements, SamplingOperator
from csplume.sampling.hadamard import fwht
from csplume.types import FloatArray

logger = logging.getLogger(__name__)

MAX_MATERIALIZE = 4096


def measurement_count(n: int, rate: float) -> int:
    """
    k = max(1, floor(rate * n)).

    Example:
        >>> measurement_count(4096, 0.10)
        409
    """
    return max(1, math.floor(rate * n))


def build_sampler(n: int, rate: float, seed: int, flip_signs: bool = True) -> SamplingOperator:
    """
    Draw a sampling operator deterministically from (n, rate, seed).

    Row 0 is always kept; the other k - 1 rows are drawn uniformly without
    replacement from [1, n). The column permutation and, when ``flip_signs`` is
    set, the sign flips come from the same generator.

    Args:
        n: Signal length, a power of two.
        rate: Sampling fraction in (0, 1].
        seed: Non-negative 64-bit seed.
        flip_signs: Draw random signs; with False the constant row measures the band mean.

    Returns:
        SamplingOperator with k = max(1, floor(rate * n)).

    Raises:
        NonPowerOfTwoError: If n is not a power of two.
        InvalidParameterError: If rate is outside (0, 1] or seed is negative.

    Example:
        >>> build_sampler(4096, 0.10, seed=7).k
        409
    """
    if n < 1 or n & (n - 1):
        raise NonPowerOfTwoError(f"sampling needs a power-of-two signal length, got {n}")
    if not 0.0 < rate <= 1.0:
        raise InvalidParameterError(f"sampling rate must lie in (0, 1], got {rate}")
    if not 0 <= seed < 2**64:
        raise InvalidParameterError(f"seed must be a non-negative 64-bit integer, got {seed}")
    k = measurement_count(n, rate)
    rng = np.random.default_rng(seed)
    drawn = rng.choice(np.arange(1, n, dtype=np.int64), size=k - 1, replace=False)
    rows = np.concatenate(([0], np.sort(drawn))).astype(np.int64)
    permutation = rng.permutation(n).astype(np.int64)
    if flip_signs:
        signs = rng.choice(np.array([-1.0, 1.0]), size=n)
    else:
        signs = np.ones(n)
    logger.debug("built sampler n=%d k=%d seed=%d flip_signs=%s", n, k, seed, flip_signs)
    return SamplingOperator(
        n=n,
        k=k,
        seed=seed,
        rate=rate,
        row_indices=rows,
        column_permutation=permutation,
        sign_flips=signs,
        flip_signs=flip_signs,
    )


def _broadcast(vector: FloatArray, ndim: int) -> FloatArray:
    return vector.reshape((-1,) + (1,) * (ndim - 1))


def forward(op: SamplingOperator, x: FloatArray) -> FloatArray:
    """Apply S to a vector or to every column of an (n, m) matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != op.n:
        raise DimensionMismatchError(f"operator expects length {op.n}, got {x.shape[0]}")
    mixed = x[op.column_permutation] * _broadcast(op.sign_flips, x.ndim)
    return fwht(mixed)[op.row_indices] / math.sqrt(op.n)


def adjoint(op: SamplingOperator, y: FloatArray) -> FloatArray:
    """Apply S^T to a vector or to every column of a (k, m) matrix."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != op.k:
        raise DimensionMismatchError(f"adjoint expects length {op.k}, got {y.shape[0]}")
    embedded = np.zeros((op.n,) + y.shape[1:])
    embedded[op.row_indices] = y
    spread = fwht(embedded) * (_broadcast(op.sign_flips, y.ndim) / math.sqrt(op.n))
    out = np.empty_like(spread)
    out[op.column_permutation] = spread
    return out


def apply(op: SamplingOperator, x: FloatArray) -> FloatArray:
    """
    y = S x for one length-n vector.

    Raises:
        DimensionMismatchError: If x does not have length n.

    Example:
        >>> op = build_sampler(8, 0.5, seed=3)
        >>> apply(op, np.zeros(8)).tolist()
        [0.0, 0.0, 0.0, 0.0]
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatchError(f"apply expects a vector, got shape {x.shape}")
    return forward(op, x)


def apply_adjoint(op: SamplingOperator, y: FloatArray) -> FloatArray:
    """
    x = S^T y for one length-k vector; the exact adjoint of ``apply``.

    Raises:
        DimensionMismatchError: If y does not have length k.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise DimensionMismatchError(f"apply_adjoint expects a vector, got shape {y.shape}")
    return adjoint(op, y)


def sample_cube(op: SamplingOperator, flat: FlatCube) -> Measurements:
    """
    Y = S X: sample every band column of a flattened cube.

    Raises:
        DimensionMismatchError: If flat.n differs from op.n.
    """
    if flat.n != op.n:
        raise DimensionMismatchError(f"operator built for n={op.n}, cube has n={flat.n}")
    return Measurements(forward(op, flat.columns), n=op.n)


def adjoint_cube(op: SamplingOperator, measurements: Measurements) -> FlatCube:
    """S^T Y, column by column; exact inverse of ``sample_cube`` at rate 1."""
    if measurements.n != op.n or measurements.k != op.k:
        raise DimensionMismatchError(
            f"measurements (n={measurements.n}, k={measurements.k}) "
            f"do not match operator (n={op.n}, k={op.k})"
        )
    return FlatCube(adjoint(op, measurements.Y))


def materialize(op: SamplingOperator) -> FloatArray:
    """
    Dense k x n matrix of S, for validating the fast paths.

    Raises:
        InvalidParameterError: If n exceeds 4096.
    """
    if op.n > MAX_MATERIALIZE:
        raise InvalidParameterError(f"refusing to materialize S for n={op.n} > {MAX_MATERIALIZE}")
    rows = hadamard(op.n).astype(np.float64)[op.row_indices] * op.sign_flips / math.sqrt(op.n)
    dense = np.empty((op.k, op.n))
    dense[:, op.column_permutation] = rows
    return dense
