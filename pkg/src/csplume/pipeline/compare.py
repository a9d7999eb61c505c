"""
Raw versus reconstructed arm comparison.
"""

import logging
from collections.abc import Sequence

import numpy as np
import pandas as pd

from csplume.errors import DimensionMismatchError
from csplume.models.comparison import ComparisonSummary

logger = logging.getLogger(__name__)


def best_gap(scores: pd.DataFrame | None) -> float:
    """Largest per-frame separation gap in a score table, NaN if none is defined."""
    if scores is None:
        return float("nan")
    gaps = scores["separation_gap"].to_numpy(dtype=np.float64)
    finite = gaps[np.isfinite(gaps)]
    return float(finite.max()) if finite.size else float("nan")


def compare_counts(
    raw: Sequence[int],
    recon: Sequence[int],
    scores_raw: pd.DataFrame | None = None,
    scores_recon: pd.DataFrame | None = None,
) -> ComparisonSummary:
    """
    Summarize two count curves of the same video.

    Args:
        raw: Per-frame counts of the raw arm.
        recon: Per-frame counts of the reconstructed arm.
        scores_raw: Optional per-frame score table of the raw arm.
        scores_recon: Optional per-frame score table of the reconstructed arm.

    Returns:
        Peaks, frames where recon exceeds raw, and best separation gaps.

    Raises:
        DimensionMismatchError: If the curves or score tables differ in length.

    Example:
        >>> summary = compare_counts([0, 3, 1], [1, 4, 2])
        >>> summary.recon_above_raw, summary.peak_frame_recon
        ((0, 1, 2), 1)
    """
    raw_counts = np.asarray(raw, dtype=np.int64)
    recon_counts = np.asarray(recon, dtype=np.int64)
    if raw_counts.shape != recon_counts.shape or raw_counts.size == 0:
        raise DimensionMismatchError(
            f"count curves differ in length: {raw_counts.size} raw vs {recon_counts.size} recon"
        )
    for scores in (scores_raw, scores_recon):
        if scores is not None and len(scores) != raw_counts.size:
            raise DimensionMismatchError(
                f"score table has {len(scores)} rows, count curves have {raw_counts.size}"
            )
    summary = ComparisonSummary(
        frame_count=int(raw_counts.size),
        peak_raw=int(raw_counts.max()),
        peak_frame_raw=int(np.argmax(raw_counts)),
        peak_recon=int(recon_counts.max()),
        peak_frame_recon=int(np.argmax(recon_counts)),
        recon_above_raw=tuple(int(t) for t in np.flatnonzero(recon_counts > raw_counts)),
        gap_raw=best_gap(scores_raw),
        gap_recon=best_gap(scores_recon),
    )
    logger.info(
        "compare: peak raw %d, peak recon %d, recon above raw in %d frames",
        summary.peak_raw,
        summary.peak_recon,
        len(summary.recon_above_raw),
    )
    return summary
