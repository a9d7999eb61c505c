"""
Arm comparison and rate sweep result models.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ComparisonSummary:
    """
    Raw versus reconstructed detection counts over one video.

    Attributes:
        frame_count: Frames compared.
        peak_raw: Largest raw-arm count.
        peak_frame_raw: First frame reaching peak_raw.
        peak_recon: Largest reconstructed-arm count.
        peak_frame_recon: First frame reaching peak_recon.
        recon_above_raw: Frames where the reconstructed count is strictly larger.
        gap_raw: Best per-frame separation gap of the raw arm (NaN if unscored).
        gap_recon: Best per-frame separation gap of the reconstructed arm.

    Example:
        >>> summary = ComparisonSummary(3, 5, 1, 6, 1, (1,), 0.1, 0.3)
        >>> round(summary.gap_difference, 12), summary.amplification
        (0.2, 1.2)
    """

    frame_count: int
    peak_raw: int
    peak_frame_raw: int
    peak_recon: int
    peak_frame_recon: int
    recon_above_raw: tuple[int, ...]
    gap_raw: float = math.nan
    gap_recon: float = math.nan

    @property
    def gap_difference(self) -> float:
        """gap_recon - gap_raw; positive when reconstruction separates the classes better."""
        return self.gap_recon - self.gap_raw

    @property
    def amplification(self) -> float:
        """Peak count ratio recon / raw (inf when the raw arm detects nothing)."""
        if self.peak_raw == 0:
            return math.inf if self.peak_recon else 1.0
        return self.peak_recon / self.peak_raw


@dataclass(frozen=True)
class SweepPoint:
    """
    One arm of a sampling-rate sweep.

    Attributes:
        arm: "raw" or "recon".
        rate: Sampling fraction (1.0 for the raw arm).
        k: Measurements per band.
        threshold: Calibrated threshold of the arm.
        peak_count: Largest detected-pixel count.
        peak_frame: First frame reaching peak_count.
        best_gap: Best per-frame separation gap against ground truth.
        unconverged_bands: Bands over all frames that missed tol_constraint.
    """

    arm: str
    rate: float
    k: int
    threshold: float
    peak_count: int
    peak_frame: int
    best_gap: float
    unconverged_bands: int = 0
