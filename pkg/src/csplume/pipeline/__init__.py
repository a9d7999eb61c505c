"""
Pipeline stages, manifests, comparison and rate sweeps.
"""

from csplume.pipeline.compare import best_gap, compare_counts
from csplume.pipeline.manifest import (
    artifact_path,
    file_checksum,
    load_manifest,
    record_checksum,
    save_manifest,
)
from csplume.pipeline.runner import run_pipeline
from csplume.pipeline.stages import (
    detect,
    load_truth_mask,
    reconstruct_video,
    relative_band_error,
    sample_video,
    save_truth,
    score_detection,
    synthesize,
    write_detection,
)
from csplume.pipeline.sweep import run_sweep, sweep_table
from csplume.pipeline.tables import (
    load_signature,
    read_counts,
    read_scores,
    save_signature,
    write_comparison,
    write_counts,
    write_histogram,
    write_scores,
    write_sweep,
)

__all__ = [
    # stages
    "synthesize",
    "save_truth",
    "load_truth_mask",
    "sample_video",
    "reconstruct_video",
    "detect",
    "write_detection",
    "score_detection",
    "relative_band_error",
    # tables
    "save_signature",
    "load_signature",
    "write_counts",
    "read_counts",
    "write_histogram",
    "write_comparison",
    "write_scores",
    "read_scores",
    "write_sweep",
    # manifest
    "load_manifest",
    "save_manifest",
    "file_checksum",
    "artifact_path",
    "record_checksum",
    # compare
    "compare_counts",
    "best_gap",
    # runner
    "run_pipeline",
    # sweep
    "run_sweep",
    "sweep_table",
]
