"""
Temporal persistence gate on a series of detection maps.
"""

import numpy as np

from csplume.errors import InvalidParameterError
from csplume.models.detection import DetectionMap, DetectionSeries
from csplume.types import FloatArray, IntArray


def run_lengths(above: np.ndarray) -> IntArray:
    """
    Length of the run of consecutive True frames each entry belongs to (0 if False).

    Args:
        above: Boolean array with time on axis 0.
    """
    forward = np.zeros(above.shape, dtype=np.int64)
    backward = np.zeros(above.shape, dtype=np.int64)
    frames = above.shape[0]
    for t in range(frames):
        previous = forward[t - 1] if t else 0
        forward[t] = np.where(above[t], previous + 1, 0)
    for t in range(frames - 1, -1, -1):
        following = backward[t + 1] if t < frames - 1 else 0
        backward[t] = np.where(above[t], following + 1, 0)
    return np.where(above, forward + backward - 1, 0)


def persist(values: FloatArray, threshold: float, length: int) -> FloatArray:
    """Zero every value not inside a run of >= length frames above threshold."""
    above = values > threshold
    return np.where(run_lengths(above) >= length, values, 0.0)


def persistence_filter(series: DetectionSeries, threshold: float, length: int) -> DetectionSeries:
    """
    Keep a pixel's value only while it stays above threshold long enough.

    A value at frame t survives iff t lies in a run of at least ``length``
    consecutive frames where that pixel exceeds ``threshold``; every other
    value becomes 0.

    Args:
        series: Per-frame maps in time order.
        threshold: Level a pixel must strictly exceed.
        length: Minimum run length L (5 in the reference setup).

    Returns:
        The filtered series, with counts recomputed against ``threshold``.
    """
    if length < 1:
        raise InvalidParameterError(f"persistence length must be at least 1, got {length}")
    kept = persist(series.stack(), threshold, length)
    maps = tuple(DetectionMap(frame) for frame in kept)
    counts = tuple(int(np.count_nonzero(frame > threshold)) for frame in kept)
    return DetectionSeries(maps=maps, threshold=threshold, counts=counts)
