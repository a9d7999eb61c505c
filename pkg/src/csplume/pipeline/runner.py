"""
Whole pipeline from one manifest: synth, sample, reconstruct, detect both arms, compare.

Every stage reads its inputs back from the files the previous stage wrote, so a
run is byte-for-byte what the individual subcommands would produce.
"""

import logging
from pathlib import Path

from csplume.cube.hsc import load_video, save_video
from csplume.models.comparison import ComparisonSummary
from csplume.models.manifest import PipelineManifest
from csplume.pipeline.compare import compare_counts
from csplume.pipeline.manifest import artifact_path, record_checksum, save_manifest
from csplume.pipeline.stages import (
    detect,
    load_truth_mask,
    reconstruct_video,
    sample_video,
    score_detection,
    synthesize,
    write_detection,
)
from csplume.pipeline.tables import load_signature, read_counts, write_comparison, write_scores
from csplume.sampling.hsm import load_measurements, save_measurements

logger = logging.getLogger(__name__)


def run_pipeline(
    manifest: PipelineManifest,
    manifest_path: str | Path | None = None,
    strict: bool = False,
) -> ComparisonSummary:
    """
    Execute every stage of a manifest and record artifact checksums.

    Args:
        manifest: Pipeline description; ``checksums`` is filled in place.
        manifest_path: Where to write the updated manifest, if anywhere.
        strict: Fail on solver non-convergence.

    Returns:
        The raw versus reconstructed comparison summary.
    """
    Path(manifest.workdir).mkdir(parents=True, exist_ok=True)

    def path(name: str) -> Path:
        return artifact_path(manifest, name)

    synthesize(
        manifest.synth,
        path("video"),
        path("truth"),
        path("signature"),
        workers=manifest.workers,
    )
    for name in ("video", "truth", "signature"):
        record_checksum(manifest, name)

    raw = load_video(path("video"))
    measurements, _ = sample_video(raw, manifest.rate, manifest.operator_seed, manifest.flip_signs)
    save_measurements(measurements, path("measurements"))
    record_checksum(manifest, "measurements")

    recon, _ = reconstruct_video(
        load_measurements(path("measurements")),
        cfg=manifest.solver,
        workers=manifest.workers,
        strict=strict,
    )
    save_video(recon, path("reconstruction"))
    record_checksum(manifest, "reconstruction")

    signature = load_signature(path("signature"), raw.b)
    mask = load_truth_mask(path("truth"), manifest.synth.peak_strength)
    scores = {}
    for arm, source in (("raw", "video"), ("recon", "reconstruction")):
        video = load_video(path(source))
        result = detect(
            video,
            signature,
            manifest.background_frames,
            manifest.detection,
            workers=manifest.workers,
        )
        write_detection(result, manifest.detection, path(f"counts_{arm}"), path(f"histogram_{arm}"))
        scores[arm] = score_detection(result, mask)
        write_scores(scores[arm], path(f"separation_{arm}"))
        for name in (f"counts_{arm}", f"histogram_{arm}", f"separation_{arm}"):
            record_checksum(manifest, name)

    counts_raw = read_counts(path("counts_raw"))
    counts_recon = read_counts(path("counts_recon"))
    write_comparison(counts_raw, counts_recon, path("comparison"))
    record_checksum(manifest, "comparison")
    summary = compare_counts(counts_raw, counts_recon, scores["raw"], scores["recon"])

    if manifest_path is not None:
        save_manifest(manifest, manifest_path)
    return summary
