"""
Threshold calibration, counting and histograms of detection maps.
"""

import logging
from collections.abc import Iterable

import numpy as np

from csplume.errors import EmptySelectionError, InvalidParameterError
from csplume.models.detection import DetectionMap
from csplume.types import FloatArray, IntArray

logger = logging.getLogger(__name__)


def calibrate_threshold(background_maps: Iterable[DetectionMap], delta: float = 0.05) -> float:
    """
    Place the threshold slightly above everything seen on background frames.

    threshold = (1 + delta) * max over all pixels of all background maps.
    Maps must come from the same statistic, pipeline arm and signature as the
    data that will be thresholded.

    Raises:
        EmptySelectionError: If no background maps are given.

    Example:
        >>> round(calibrate_threshold([DetectionMap(np.full((2, 2), 0.2))], 0.05), 12)
        0.21
    """
    if delta < 0:
        raise InvalidParameterError(f"threshold margin must be non-negative, got {delta}")
    peaks = [float(m.values.max()) for m in background_maps]
    if not peaks:
        raise EmptySelectionError("threshold calibration needs at least one background map")
    threshold = (1.0 + delta) * max(peaks)
    logger.debug("threshold %.6g from %d background maps", threshold, len(peaks))
    return threshold


def count_above(detection_map: DetectionMap, threshold: float) -> int:
    """Number of pixels strictly above threshold."""
    return int(np.count_nonzero(detection_map.values > threshold))


def histogram(detection_map: DetectionMap, bins: int = 50) -> tuple[IntArray, FloatArray]:
    """
    Counts of map values in ``bins`` uniform bins on [0, 1].

    Bins are closed on the left and open on the right except the last, which
    is closed; counts sum to the pixel count.

    Returns:
        (counts, edges) with ``len(edges) == bins + 1``.
    """
    if bins < 1:
        raise InvalidParameterError(f"bins must be at least 1, got {bins}")
    counts, edges = np.histogram(detection_map.values, bins=bins, range=(0.0, 1.0))
    return counts, edges
