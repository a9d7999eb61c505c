"""
Hyperspectral cube data models.

A cube is held in memory as a ``(b, n1, n2)`` float64 array: band-major, each
band row-major. ``data.ravel()`` is therefore exactly the on-disk element order.
"""

from dataclasses import dataclass, field

import numpy as np

from csplume.errors import DimensionMismatchError, InvalidParameterError
from csplume.types import FloatArray


def _frozen_array(values: object, ndim: int, name: str) -> FloatArray:
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise InvalidParameterError(f"{name} must be {ndim}-D, got shape {array.shape}")
    if any(size < 1 for size in array.shape):
        raise InvalidParameterError(f"{name} dimensions must be positive, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidParameterError(f"{name} contains NaN or Inf")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class HyperCube:
    """
    One hyperspectral image of n1 rows, n2 columns and b bands.

    Attributes:
        data: Radiance values of shape (b, n1, n2), unitless counts.

    Example:
        >>> cube = HyperCube(np.zeros((20, 64, 64)))
        >>> (cube.n1, cube.n2, cube.b)
        (64, 64, 20)
    """

    data: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "data", _frozen_array(self.data, 3, "cube data"))

    @property
    def b(self) -> int:
        return int(self.data.shape[0])

    @property
    def n1(self) -> int:
        return int(self.data.shape[1])

    @property
    def n2(self) -> int:
        return int(self.data.shape[2])

    @property
    def values(self) -> FloatArray:
        """Flat view of length n1*n2*b in band-major order."""
        return self.data.reshape(-1)

    def pixels(self) -> FloatArray:
        """Return the cube as an (n1*n2, b) matrix, one spectrum per row."""
        return self.data.reshape(self.b, -1).T

    @classmethod
    def from_pixels(cls, pixels: FloatArray, n1: int, n2: int) -> "HyperCube":
        """Build a cube from an (n1*n2, b) spectrum matrix."""
        if pixels.ndim != 2 or pixels.shape[0] != n1 * n2:
            raise DimensionMismatchError(
                f"expected ({n1 * n2}, b) pixels for a {n1}x{n2} grid, got {pixels.shape}"
            )
        return cls(pixels.T.reshape(pixels.shape[1], n1, n2))


@dataclass(frozen=True, eq=False)
class FlatCube:
    """
    A cube with every band flattened to a column: the n x b matrix X.

    Attributes:
        columns: Array of shape (n, b); column j is band j flattened row-major.
    """

    columns: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", _frozen_array(self.columns, 2, "flat cube"))

    @property
    def n(self) -> int:
        return int(self.columns.shape[0])

    @property
    def b(self) -> int:
        return int(self.columns.shape[1])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    A length-b spectral vector (target signature or pixel under test).

    Attributes:
        values: Real vector of length b.

    Example:
        >>> Spectrum([0.0, 1.0, 0.0]).b
        3
    """

    values: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_array(self.values, 1, "spectrum"))

    @property
    def b(self) -> int:
        return int(self.values.shape[0])

    def normalized(self) -> "Spectrum":
        """Return the spectrum scaled to unit Euclidean norm."""
        norm = float(np.linalg.norm(self.values))
        if norm == 0.0:
            raise InvalidParameterError("cannot normalize a zero spectrum")
        return Spectrum(self.values / norm)


@dataclass(frozen=True, eq=False)
class CubeVideo:
    """
    A time-ordered, non-empty sequence of equally shaped cubes.

    Attributes:
        frames: The cubes, in acquisition order.
        frame_period: Abstract time step between frames.
    """

    frames: tuple[HyperCube, ...]
    frame_period: float = field(default=1.0)

    def __post_init__(self) -> None:
        frames = tuple(self.frames)
        if not frames:
            raise InvalidParameterError("a video needs at least one frame")
        shape = frames[0].data.shape
        for index, frame in enumerate(frames):
            if frame.data.shape != shape:
                raise DimensionMismatchError(
                    f"frame {index} has shape {frame.data.shape}, expected {shape}"
                )
        object.__setattr__(self, "frames", frames)

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def n1(self) -> int:
        return self.frames[0].n1

    @property
    def n2(self) -> int:
        return self.frames[0].n2

    @property
    def b(self) -> int:
        return self.frames[0].b

    def stack(self) -> FloatArray:
        """Return all frames as one (frame_count, b, n1, n2) array."""
        return np.stack([frame.data for frame in self.frames])

    @classmethod
    def from_array(cls, array: FloatArray, frame_period: float = 1.0) -> "CubeVideo":
        """Build a video from a (frame_count, b, n1, n2) array."""
        if array.ndim != 4:
            raise InvalidParameterError(f"expected a 4-D array, got shape {array.shape}")
        return cls(tuple(HyperCube(frame) for frame in array), frame_period)
