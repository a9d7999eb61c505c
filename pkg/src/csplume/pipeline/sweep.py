"""
Sampling-rate sweep: repeat sample, reconstruct and detect at several rates.
"""

import logging
from collections.abc import Sequence

import pandas as pd

from csplume.errors import InvalidParameterError
from csplume.models.comparison import SweepPoint
from csplume.models.cube import CubeVideo, Spectrum
from csplume.models.detection import DetectionConfig, DetectionResult
from csplume.models.solver import SolverConfig
from csplume.pipeline.compare import best_gap
from csplume.pipeline.stages import detect, reconstruct_video, sample_video, score_detection
from csplume.types import BoolArray

logger = logging.getLogger(__name__)


def _point(arm: str, rate: float, k: int, result: DetectionResult, mask: BoolArray, unconverged: int) -> SweepPoint:
    return SweepPoint(
        arm=arm,
        rate=rate,
        k=k,
        threshold=result.threshold,
        peak_count=max(result.counts),
        peak_frame=result.peak_frame(),
        best_gap=best_gap(score_detection(result, mask)),
        unconverged_bands=unconverged,
    )


def run_sweep(
    video: CubeVideo,
    mask: BoolArray,
    signature: Spectrum,
    rates: Sequence[float],
    background_frames: Sequence[int],
    seed: int = 1,
    flip_signs: bool = True,
    solver: SolverConfig | None = None,
    detection: DetectionConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """
    Detect on the raw video once and on its reconstruction at every rate.

    Each arm gets its own background model and threshold.

    Args:
        video: Raw video.
        mask: Ground-truth plume mask, shape (frames, n1, n2).
        signature: Target signature.
        rates: Sampling fractions in (0, 1].
        background_frames: Chemical-free frames.
        seed: Operator seed used at every rate.
        flip_signs: Operator sign flips.
        solver: Solver settings.
        detection: Detection settings.
        workers: Threads per stage.

    Returns:
        The raw arm followed by one point per rate, in the order given.
    """
    if not rates:
        raise InvalidParameterError("a sweep needs at least one rate")
    detection = detection or DetectionConfig()
    n = video.n1 * video.n2
    raw = detect(video, signature, background_frames, detection, workers=workers)
    points = [_point("raw", 1.0, n, raw, mask, 0)]
    for rate in rates:
        measurements, op = sample_video(video, rate, seed, flip_signs=flip_signs)
        recon, reports = reconstruct_video(measurements, op, solver, workers=workers)
        unconverged = sum(not r.converged for frame in reports for r in frame)
        result = detect(recon, signature, background_frames, detection, workers=workers)
        point = _point("recon", rate, op.k, result, mask, unconverged)
        logger.info(
            "sweep: rate %.4g peak %d (raw %d), best gap %.4g",
            rate,
            point.peak_count,
            points[0].peak_count,
            point.best_gap,
        )
        points.append(point)
    return points


def sweep_table(points: Sequence[SweepPoint]) -> pd.DataFrame:
    """One row per sweep point, columns named after the SweepPoint fields."""
    return pd.DataFrame(
        {
            "arm": [p.arm for p in points],
            "rate": [p.rate for p in points],
            "k": [p.k for p in points],
            "threshold": [p.threshold for p in points],
            "peak_count": [p.peak_count for p in points],
            "peak_frame": [p.peak_frame for p in points],
            "best_gap": [p.best_gap for p in points],
            "unconverged_bands": [p.unconverged_bands for p in points],
        }
    )
