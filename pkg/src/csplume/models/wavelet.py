"""
Wavelet coefficient data model.
"""

from dataclasses import dataclass

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.types import FloatArray


@dataclass(frozen=True, eq=False)
class WaveletCoeffs:
    """
    Full-depth orthonormal Haar coefficients of one length-n signal.

    Layout is ``[scaling, coarsest detail, ..., finest details]``: slot 0 holds
    the scaling coefficient and the last n/2 slots the finest-level details.

    Attributes:
        values: Coefficient vector of length n (a power of two).
        levels: Number of decomposition levels, log2(n).

    Example:
        >>> WaveletCoeffs(np.array([2.0, 0.0, 0.0, 0.0]), levels=2).n
        4
    """

    values: FloatArray
    levels: int

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1 or values.size != 2**self.levels:
            raise InvalidParameterError(
                f"{values.size} coefficients do not match {self.levels} levels"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)
