"""
Sampling operator and measurement data models.
"""

from dataclasses import dataclass

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.types import FloatArray, IntArray


@dataclass(frozen=True, eq=False)
class SamplingOperator:
    """
    Row-subsampled, randomized Walsh-Hadamard measurement operator S (k x n).

    S x = (1/sqrt(n)) * rowselect(WHT(signs * x[permutation])). The matrix is
    never stored; ``materialize`` in ``csplume.sampling`` builds it for checks.

    Attributes:
        n: Signal length, a power of two.
        k: Number of measurements.
        seed: Seed the random parts were drawn from.
        rate: Requested sampling fraction.
        row_indices: k sorted distinct Hadamard rows; always contains row 0.
        column_permutation: Permutation of range(n) applied before the transform.
        sign_flips: +1/-1 vector of length n.
        flip_signs: Whether sign_flips were drawn at random (all +1 otherwise).
    """

    n: int
    k: int
    seed: int
    rate: float
    row_indices: IntArray
    column_permutation: IntArray
    sign_flips: FloatArray
    flip_signs: bool = True

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise InvalidParameterError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        rows = np.array(self.row_indices, dtype=np.int64)
        if rows.shape != (self.k,) or rows[0] != 0 or np.any(np.diff(rows) <= 0):
            raise InvalidParameterError("row indices must be k sorted distinct rows starting at 0")
        permutation = np.array(self.column_permutation, dtype=np.int64)
        signs = np.array(self.sign_flips, dtype=np.float64)
        if permutation.shape != (self.n,) or signs.shape != (self.n,):
            raise InvalidParameterError("permutation and sign flips must have length n")
        for name, array in (
            ("row_indices", rows),
            ("column_permutation", permutation),
            ("sign_flips", signs),
        ):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def effective_rate(self) -> float:
        """Fraction k/n actually sampled."""
        return self.k / self.n


@dataclass(frozen=True, eq=False)
class Measurements:
    """
    The k x b output Y = S X of one cube.

    Attributes:
        Y: Measurement matrix of shape (k, b), one column per band.
        n: Length of the flattened bands that were sampled.
    """

    Y: FloatArray
    n: int

    def __post_init__(self) -> None:
        Y = np.array(self.Y, dtype=np.float64, copy=True)
        if Y.ndim != 2 or not 1 <= Y.shape[0] <= self.n:
            raise InvalidParameterError(f"measurements must be (k, b) with k <= n, got {Y.shape}")
        Y.setflags(write=False)
        object.__setattr__(self, "Y", Y)

    @property
    def k(self) -> int:
        return int(self.Y.shape[0])

    @property
    def b(self) -> int:
        return int(self.Y.shape[1])

    @property
    def rate(self) -> float:
        """Sampling fraction k/n; ``100 * rate`` percent sampling."""
        return self.k / self.n


@dataclass(frozen=True, eq=False)
class MeasurementVideo:
    """
    Per-frame measurements of a video plus what is needed to rebuild S.

    Attributes:
        frames: Measurements of each frame, in frame order.
        n1: Rows of the sampled bands.
        n2: Columns of the sampled bands.
        seed: Operator seed.
        rate: Requested sampling fraction.
        flip_signs: Whether the operator used random sign flips.
    """

    frames: tuple[Measurements, ...]
    n1: int
    n2: int
    seed: int
    rate: float
    flip_signs: bool = True

    def __post_init__(self) -> None:
        frames = tuple(self.frames)
        if not frames:
            raise InvalidParameterError("a measurement video needs at least one frame")
        shape = frames[0].Y.shape
        if any(f.Y.shape != shape or f.n != self.n1 * self.n2 for f in frames):
            raise InvalidParameterError("all frames must share (k, b) and n = n1 * n2")
        object.__setattr__(self, "frames", frames)

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def n(self) -> int:
        return self.n1 * self.n2

    @property
    def k(self) -> int:
        return self.frames[0].k

    @property
    def b(self) -> int:
        return self.frames[0].b
