"""
One detection arm: background model, statistic, threshold and persistence for a video.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from csplume.detection.ace import ace_map
from csplume.detection.background import estimate_background
from csplume.detection.coherence import bulk_coherence
from csplume.detection.persistence import persistence_filter
from csplume.detection.threshold import calibrate_threshold, count_above
from csplume.errors import EmptySelectionError
from csplume.models.cube import CubeVideo, HyperCube, Spectrum
from csplume.models.detection import (
    BackgroundModel,
    DetectionConfig,
    DetectionMap,
    DetectionResult,
    DetectionSeries,
    Statistic,
)

logger = logging.getLogger(__name__)


def statistic_map(
    cube: HyperCube, signature: Spectrum, model: BackgroundModel, cfg: DetectionConfig
) -> DetectionMap:
    """ACE map of one frame, combined over neighborhoods unless the statistic is plain ACE."""
    scores = ace_map(
        cube,
        signature,
        model,
        demean=cfg.demean,
        signature_is_absolute=cfg.signature_is_absolute,
    )
    if cfg.statistic is Statistic.ACE:
        return scores
    return bulk_coherence(scores, cfg.neighborhood_radius)


def detect_video(
    video: CubeVideo,
    signature: Spectrum,
    background_frames: Sequence[int],
    cfg: DetectionConfig | None = None,
    workers: int = 1,
) -> DetectionResult:
    """
    Run one detection arm over a video.

    The background model and the threshold come from ``background_frames`` of
    this same video, so the raw and reconstructed arms are each calibrated on
    their own data.

    Args:
        video: Raw or reconstructed video.
        signature: Target signature.
        background_frames: Chemical-free frames.
        cfg: Detection settings; defaults to DetectionConfig().
        workers: Threads for the per-frame maps.

    Returns:
        Model, threshold, unfiltered statistic and final series.
    """
    cfg = cfg or DetectionConfig()
    frames = tuple(int(i) for i in background_frames)
    if not frames:
        raise EmptySelectionError("a detection arm needs background frames")
    model = estimate_background(video, frames)

    def one(cube: HyperCube) -> DetectionMap:
        return statistic_map(cube, signature, model, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            maps = tuple(pool.map(one, video.frames))
    else:
        maps = tuple(one(cube) for cube in video.frames)

    threshold = calibrate_threshold([maps[i] for i in frames], cfg.threshold_margin)
    statistic = DetectionSeries(
        maps=maps,
        threshold=threshold,
        counts=tuple(count_above(m, threshold) for m in maps),
    )
    if cfg.statistic is Statistic.BULK_PERSISTENCE:
        series = persistence_filter(statistic, threshold, cfg.persistence_length)
    else:
        series = statistic
    logger.info(
        "%s arm: threshold %.6g, peak count %d",
        cfg.statistic.value,
        threshold,
        max(series.counts),
    )
    return DetectionResult(
        model=model,
        threshold=threshold,
        statistic=statistic,
        series=series,
        background_frames=frames,
    )
