"""
Background estimation, ACE, bulk coherence, persistence and thresholds.
"""

from csplume.detection.ace import ace, ace_map
from csplume.detection.arm import detect_video, statistic_map
from csplume.detection.background import (
    background_from_covariance,
    estimate_background,
    load_covariance,
)
from csplume.detection.coherence import bulk_coherence
from csplume.detection.persistence import persist, persistence_filter, run_lengths
from csplume.detection.scoring import separation_gap, spatial_accuracy
from csplume.detection.threshold import calibrate_threshold, count_above, histogram

__all__ = [
    # background
    "estimate_background",
    "background_from_covariance",
    "load_covariance",
    # ace
    "ace",
    "ace_map",
    # coherence
    "bulk_coherence",
    # persistence
    "persistence_filter",
    "persist",
    "run_lengths",
    # threshold
    "calibrate_threshold",
    "count_above",
    "histogram",
    # scoring
    "separation_gap",
    "spatial_accuracy",
    # arm
    "detect_video",
    "statistic_map",
]
