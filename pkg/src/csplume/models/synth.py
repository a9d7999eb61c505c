"""
Synthetic plume scenario data models.
"""

from dataclasses import asdict, dataclass, fields
from typing import Any

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.types import BoolArray, FloatArray

BACKGROUND_KINDS = ("plateau", "polynomial")


@dataclass(frozen=True)
class SynthConfig:
    """
    Parameters of a synthetic plume release video.

    The plume adds alpha(r, c, t) * signature to a smooth background, with
    alpha = peak_strength * envelope(t) * exp(-dist^2 / (2 sigma(t)^2)).
    The envelope rises linearly from release_start to peak, falls linearly to
    decay and then holds tail_level.

    Attributes:
        n1: Rows per band.
        n2: Columns per band.
        b: Number of bands.
        frame_count: Number of frames in the video.
        seed: Seed of every random draw in the scenario.
        background_kind: "plateau" (dyadic blocks) or "polynomial" (low-order 2-D).
        background_level: Mean radiance of the background.
        background_range: Peak-to-peak spatial variation of the background field.
        background_components: Independent spatial fields mixed across bands.
        plateau_size: Edge length of the dyadic plateaus (power of two).
        polynomial_order: Total degree of the polynomial field.
        signature: Target signature; None draws a Gaussian line from the fields below.
        signature_center: Position of the default line, as a fraction of the band range.
        signature_width: Width of the default line, in bands.
        plume_center: (row, col) of the plume at release.
        plume_sigma: Spatial standard deviation of the plume, in pixels.
        release_start: Frame where the release begins.
        peak: Frame of maximum concentration.
        decay: Frame where the main release has dispersed.
        peak_strength: kappa, concentration at the centre at the peak frame.
        noise_sigma: Standard deviation of i.i.d. Gaussian noise per element.
        drift: (rows, cols) the plume centre moves per frame after release.
        spread_rate: Relative growth of plume_sigma per frame after release.
        tail_level: Envelope value held after decay.
    """

    n1: int = 64
    n2: int = 64
    b: int = 20
    frame_count: int = 140
    seed: int = 0
    background_kind: str = "plateau"
    background_level: float = 100.0
    background_range: float = 20.0
    background_components: int = 3
    plateau_size: int = 8
    polynomial_order: int = 2
    signature: tuple[float, ...] | None = None
    signature_center: float = 0.5
    signature_width: float = 1.5
    plume_center: tuple[float, float] = (32.0, 32.0)
    plume_sigma: float = 6.0
    release_start: int = 20
    peak: int = 40
    decay: int = 70
    peak_strength: float = 6.0
    noise_sigma: float = 1.0
    drift: tuple[float, float] = (0.0, 0.0)
    spread_rate: float = 0.0
    tail_level: float = 0.0

    def __post_init__(self) -> None:
        if min(self.n1, self.n2, self.b, self.frame_count) < 1:
            raise InvalidParameterError("dimensions and frame_count must be positive")
        if not self.release_start < self.peak < self.decay <= self.frame_count:
            raise InvalidParameterError(
                "need release_start < peak < decay <= frame_count, got "
                f"{self.release_start}, {self.peak}, {self.decay}, {self.frame_count}"
            )
        if self.peak_strength < 0 or self.noise_sigma < 0:
            raise InvalidParameterError("peak_strength and noise_sigma must be non-negative")
        if self.background_kind not in BACKGROUND_KINDS:
            raise InvalidParameterError(f"background_kind must be one of {BACKGROUND_KINDS}")
        if self.plateau_size < 1 or self.plateau_size & (self.plateau_size - 1):
            raise InvalidParameterError("plateau_size must be a power of two")
        if self.plume_sigma <= 0 or self.signature_width <= 0:
            raise InvalidParameterError("plume_sigma and signature_width must be positive")
        if self.background_components < 1 or self.polynomial_order < 0:
            raise InvalidParameterError("background needs at least one component")
        if not 0.0 <= self.tail_level <= 1.0 or self.spread_rate < 0:
            raise InvalidParameterError("tail_level must lie in [0, 1] and spread_rate >= 0")
        if self.signature is not None:
            signature = tuple(float(v) for v in self.signature)
            if len(signature) != self.b or not any(signature):
                raise InvalidParameterError("signature must be a non-zero vector of length b")
            object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "plume_center", tuple(float(v) for v in self.plume_center))
        object.__setattr__(self, "drift", tuple(float(v) for v in self.drift))

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        for key in ("signature", "plume_center", "drift"):
            if data[key] is not None:
                data[key] = list(data[key])
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SynthConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameterError(f"unknown scenario fields: {sorted(unknown)}")
        values = dict(data)
        for key in ("signature", "plume_center", "drift"):
            if values.get(key) is not None:
                values[key] = tuple(values[key])
        return cls(**values)


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """
    Plume concentration used to generate a synthetic video.

    Attributes:
        alpha: Concentration per frame and pixel, shape (frame_count, n1, n2).
        mask: alpha > 0.05 * peak_strength, same shape.
        signature: Unit-norm signature the plume was drawn with.
    """

    alpha: FloatArray
    mask: BoolArray
    signature: FloatArray

    def __post_init__(self) -> None:
        if self.alpha.shape != self.mask.shape or self.alpha.ndim != 3:
            raise InvalidParameterError("alpha and mask must share a (frames, n1, n2) shape")
        for array in (self.alpha, self.mask, self.signature):
            array.setflags(write=False)

    def plume_pixels(self, frame: int) -> int:
        """Number of ground-truth plume pixels in one frame."""
        return int(np.count_nonzero(self.mask[frame]))
