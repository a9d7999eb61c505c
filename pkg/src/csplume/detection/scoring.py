"""
Scores of detection maps against ground truth.
"""

import numpy as np

from csplume.errors import DimensionMismatchError
from csplume.models.detection import DetectionMap
from csplume.types import BoolArray

PLUME_PERCENTILE = 10.0
BACKGROUND_PERCENTILE = 99.9


def separation_gap(detection_map: DetectionMap, mask: BoolArray) -> float:
    """
    Gap between plume-class and background-class statistic values.

    Returns the 10th percentile of values on plume pixels minus the 99.9th
    percentile on background pixels; positive when the classes separate.
    NaN when either class is empty.
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != detection_map.shape:
        raise DimensionMismatchError(f"mask shape {mask.shape} != map shape {detection_map.shape}")
    plume = detection_map.values[mask]
    background = detection_map.values[~mask]
    if plume.size == 0 or background.size == 0:
        return float("nan")
    return float(
        np.percentile(plume, PLUME_PERCENTILE) - np.percentile(background, BACKGROUND_PERCENTILE)
    )


def spatial_accuracy(
    detection_map: DetectionMap, mask: BoolArray, threshold: float
) -> tuple[float, float]:
    """
    Precision and recall of the above-threshold pixels against the truth mask.

    Precision is NaN when nothing is detected, recall is NaN when the mask is empty.
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != detection_map.shape:
        raise DimensionMismatchError(f"mask shape {mask.shape} != map shape {detection_map.shape}")
    detected = detection_map.values > threshold
    hits = int(np.count_nonzero(detected & mask))
    n_detected = int(np.count_nonzero(detected))
    n_true = int(np.count_nonzero(mask))
    precision = hits / n_detected if n_detected else float("nan")
    recall = hits / n_true if n_true else float("nan")
    return precision, recall
