"""
Detection data models: background model, configuration, maps and series.
"""

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.types import FloatArray


class Statistic(str, Enum):
    """Per-pixel statistic a detection arm thresholds."""

    ACE = "ace"
    BULK = "bulk"
    BULK_PERSISTENCE = "bulk+persistence"


@dataclass(frozen=True, eq=False)
class BackgroundModel:
    """
    Background mean and loaded MLE covariance of chemical-free pixels.

    Attributes:
        mean: Mean spectrum, length b.
        covariance: Loaded covariance Gamma, b x b, symmetric positive definite.
        epsilon: Diagonal-loading fraction applied (multiplies trace/b).
        cholesky: Lower Cholesky factor L with Gamma = L L^T.
        pixel_count: Number of pixels the estimate is based on.
    """

    mean: FloatArray
    covariance: FloatArray
    epsilon: float
    cholesky: FloatArray
    pixel_count: int

    @property
    def b(self) -> int:
        return int(self.mean.shape[0])


@dataclass(frozen=True)
class DetectionConfig:
    """
    Settings of one detection arm.

    Attributes:
        neighborhood_radius: r of the (2r+1) x (2r+1) bulk coherence window.
        persistence_length: Consecutive frames a pixel must stay above threshold.
        threshold_margin: delta in threshold = (1 + delta) * background max.
        statistic: Which statistic is thresholded.
        demean: Subtract the background mean from the pixel under test.
        signature_is_absolute: Also subtract the mean from the signature.
        histogram_bins: Number of uniform bins on [0, 1] for histograms.

    Example:
        >>> DetectionConfig().neighborhood_size
        9
    """

    neighborhood_radius: int = 1
    persistence_length: int = 5
    threshold_margin: float = 0.05
    statistic: Statistic = Statistic.BULK_PERSISTENCE
    demean: bool = True
    signature_is_absolute: bool = False
    histogram_bins: int = 50

    def __post_init__(self) -> None:
        object.__setattr__(self, "statistic", Statistic(self.statistic))
        if self.neighborhood_radius < 0:
            raise InvalidParameterError("neighborhood_radius must be non-negative")
        if self.persistence_length < 1:
            raise InvalidParameterError("persistence_length must be at least 1")
        if self.threshold_margin < 0:
            raise InvalidParameterError("threshold_margin must be non-negative")
        if self.histogram_bins < 1:
            raise InvalidParameterError("histogram_bins must be at least 1")

    @property
    def neighborhood_size(self) -> int:
        """M, the number of pixels in a full window."""
        return (2 * self.neighborhood_radius + 1) ** 2

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["statistic"] = self.statistic.value
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DetectionConfig":
        return cls(**data)


@dataclass(frozen=True, eq=False)
class DetectionMap:
    """
    One per-pixel statistic image with values in [0, 1].

    Attributes:
        values: Array of shape (n1, n2).
    """

    values: FloatArray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise InvalidParameterError(f"a detection map is 2-D, got shape {values.shape}")
        if values.size and (values.min() < 0.0 or values.max() > 1.0):
            raise InvalidParameterError("detection map values must lie in [0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))


@dataclass(frozen=True, eq=False)
class DetectionSeries:
    """
    Per-frame detection maps of one arm with their threshold and counts.

    Attributes:
        maps: One map per frame, in frame order.
        threshold: Detection threshold the counts refer to.
        counts: Number of pixels strictly above threshold, per frame.
    """

    maps: tuple[DetectionMap, ...]
    threshold: float
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.maps) != len(self.counts):
            raise InvalidParameterError("one count per map is required")

    def __len__(self) -> int:
        return len(self.maps)

    def stack(self) -> FloatArray:
        """Return all maps as a (frame_count, n1, n2) array."""
        return np.stack([m.values for m in self.maps])


@dataclass(frozen=True, eq=False)
class DetectionResult:
    """
    Output of one detection arm (raw or reconstructed) over a whole video.

    Attributes:
        model: Background model estimated from this arm's own background frames.
        threshold: Threshold calibrated on this arm's background maps.
        statistic: Per-frame statistic before the persistence gate.
        series: Final per-frame maps and counts for the configured statistic.
        background_frames: Frames the model and threshold were taken from.
    """

    model: BackgroundModel
    threshold: float
    statistic: DetectionSeries
    series: DetectionSeries
    background_frames: tuple[int, ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return self.series.counts

    def peak_frame(self) -> int:
        """First frame with the largest count."""
        return int(max(range(len(self.counts)), key=lambda t: (self.counts[t], -t)))
