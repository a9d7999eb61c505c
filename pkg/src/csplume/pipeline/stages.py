"""
Stage drivers: synth, sample, reconstruct, detect, score.

Each stage reads and writes plain artifacts so the CLI subcommands and the
one-shot ``run`` produce the same files.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from csplume.cube.hsc import load_video, save_video
from csplume.cube.layout import flatten, unflatten
from csplume.detection.arm import detect_video
from csplume.detection.scoring import separation_gap, spatial_accuracy
from csplume.detection.threshold import histogram
from csplume.errors import DimensionMismatchError
from csplume.models.cube import CubeVideo, Spectrum
from csplume.models.detection import DetectionConfig, DetectionResult
from csplume.models.sampling import MeasurementVideo, SamplingOperator
from csplume.models.solver import SolverConfig, SolverReport
from csplume.models.synth import GroundTruth, SynthConfig
from csplume.pipeline.tables import save_signature, write_counts, write_histogram
from csplume.sampling.hsm import rebuild_operator
from csplume.sampling.operator import build_sampler, sample_cube
from csplume.solver.split_bregman import reconstruct_frames
from csplume.synth.generator import MASK_FRACTION, generate_video
from csplume.types import BoolArray, FloatArray

logger = logging.getLogger(__name__)


def synthesize(
    cfg: SynthConfig,
    video_path: str | Path,
    truth_path: str | Path,
    signature_path: str | Path,
    workers: int = 1,
) -> tuple[CubeVideo, GroundTruth]:
    """Generate a scenario and write the video, the alpha video and the signature."""
    video, truth = generate_video(cfg, workers=workers)
    save_video(video, video_path)
    save_truth(truth, truth_path)
    save_signature(Spectrum(truth.signature), signature_path)
    logger.info("synth: wrote %s, %s, %s", video_path, truth_path, signature_path)
    return video, truth


def save_truth(truth: GroundTruth, path: str | Path) -> None:
    """Store alpha as a one-band video."""
    save_video(CubeVideo.from_array(truth.alpha[:, None, :, :]), path)


def load_truth_mask(path: str | Path, peak_strength: float) -> BoolArray:
    """Plume mask alpha > 0.05 * kappa from a stored alpha video, shape (frames, n1, n2)."""
    alpha = load_video(path).stack()
    if alpha.shape[1] != 1:
        raise DimensionMismatchError(f"{path}: ground truth must have one band, found {alpha.shape[1]}")
    if peak_strength <= 0:
        return np.zeros(alpha[:, 0].shape, dtype=bool)
    return alpha[:, 0] > MASK_FRACTION * peak_strength


def sample_video(
    video: CubeVideo, rate: float, seed: int, flip_signs: bool = True
) -> tuple[MeasurementVideo, SamplingOperator]:
    """
    Measure every band of every frame with one operator.

    Raises:
        NonPowerOfTwoError: If n1 * n2 is not a power of two.
    """
    op = build_sampler(video.n1 * video.n2, rate, seed, flip_signs=flip_signs)
    frames = tuple(sample_cube(op, flatten(cube)) for cube in video.frames)
    logger.info(
        "sample: %d frames at rate %.4g (k=%d of n=%d)", len(frames), rate, op.k, op.n
    )
    measurements = MeasurementVideo(
        frames=frames,
        n1=video.n1,
        n2=video.n2,
        seed=seed,
        rate=rate,
        flip_signs=flip_signs,
    )
    return measurements, op


def reconstruct_video(
    measurements: MeasurementVideo,
    op: SamplingOperator | None = None,
    cfg: SolverConfig | None = None,
    workers: int = 1,
    strict: bool = False,
) -> tuple[CubeVideo, list[list[SolverReport]]]:
    """
    Reconstruct every frame of a measurement video.

    Args:
        measurements: Measurements with the operator parameters.
        op: Operator to use; rebuilt from ``measurements`` when omitted.
        cfg: Solver settings.
        workers: Frames reconstructed concurrently; output order is frame order.
        strict: Raise ConvergenceError if any band misses tol_constraint.

    Returns:
        The reconstructed video and per-frame, per-band reports.
    """
    op = op or rebuild_operator(measurements)
    flats, reports = reconstruct_frames(measurements.frames, op, cfg, workers=workers, strict=strict)
    video = CubeVideo(tuple(unflatten(flat, measurements.n1, measurements.n2) for flat in flats))
    iterations = [r.outer_iterations for frame in reports for r in frame]
    logger.info(
        "reconstruct: %d frames, mean %.1f outer iterations per band",
        len(video),
        float(np.mean(iterations)),
    )
    return video, reports


def write_detection(
    result: DetectionResult,
    cfg: DetectionConfig,
    counts_path: str | Path,
    histogram_path: str | Path,
    histogram_frame: int | None = None,
) -> int:
    """
    Write counts (with sidecar) and the histogram of one frame.

    Args:
        histogram_frame: Frame to histogram; the peak-count frame by default.

    Returns:
        The frame that was histogrammed.
    """
    frame = result.peak_frame() if histogram_frame is None else histogram_frame
    if not 0 <= frame < len(result.series):
        raise DimensionMismatchError(f"histogram frame {frame} outside video of {len(result.series)}")
    meta = {
        "statistic": cfg.statistic.value,
        "threshold": repr(result.threshold),
        "threshold_margin": cfg.threshold_margin,
        "neighborhood_radius": cfg.neighborhood_radius,
        "persistence_length": cfg.persistence_length,
        "demean": cfg.demean,
        "background_frames": ",".join(str(i) for i in result.background_frames),
        "background_pixels": result.model.pixel_count,
        "covariance_loading": result.model.epsilon,
        "histogram_frame": frame,
    }
    write_counts(result.counts, counts_path, meta=meta)
    counts, edges = histogram(result.series.maps[frame], cfg.histogram_bins)
    write_histogram(counts, edges, histogram_path)
    logger.info("detect: threshold %.6g, counts in %s", result.threshold, counts_path)
    return frame


def detect(
    video: CubeVideo,
    signature: Spectrum,
    background_frames: Sequence[int],
    cfg: DetectionConfig,
    workers: int = 1,
) -> DetectionResult:
    """Run one detection arm after checking the signature fits the video."""
    if signature.b != video.b:
        raise DimensionMismatchError(f"signature has {signature.b} values, video has {video.b} bands")
    return detect_video(video, signature, background_frames, cfg, workers=workers)


def score_detection(result: DetectionResult, mask: BoolArray) -> pd.DataFrame:
    """
    Per-frame separation gap and spatial accuracy against a plume mask.

    The gap is taken on the statistic before the persistence gate, which
    zeroes most pixels of both classes; precision and recall use the final maps.

    Returns:
        A table with columns frame, plume_pixels, separation_gap, precision, recall.
    """
    if mask.shape[0] != len(result.series) or mask.shape[1:] != result.series.maps[0].shape:
        raise DimensionMismatchError(
            f"truth mask {mask.shape} does not match {len(result.series)} maps "
            f"of {result.series.maps[0].shape}"
        )
    rows = []
    pairs = zip(result.statistic.maps, result.series.maps)
    for t, (statistic_map, detection_map) in enumerate(pairs):
        precision, recall = spatial_accuracy(detection_map, mask[t], result.threshold)
        rows.append(
            {
                "frame": t,
                "plume_pixels": int(np.count_nonzero(mask[t])),
                "separation_gap": separation_gap(statistic_map, mask[t]),
                "precision": precision,
                "recall": recall,
            }
        )
    return pd.DataFrame(rows)


def relative_band_error(reference: CubeVideo, other: CubeVideo) -> FloatArray:
    """Per-frame, per-band ||other - reference|| / ||reference||, shape (frames, b)."""
    if reference.stack().shape != other.stack().shape:
        raise DimensionMismatchError("videos differ in shape")
    a = reference.stack().reshape(len(reference), reference.b, -1)
    d = other.stack().reshape(len(other), other.b, -1) - a
    norms = np.linalg.norm(a, axis=2)
    return np.linalg.norm(d, axis=2) / np.where(norms > 0, norms, 1.0)
