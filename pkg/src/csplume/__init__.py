"""
csplume - compressive sampling and plume detection for hyperspectral video.

Bands of each cube are measured with a randomized, row-subsampled Walsh-Hadamard
operator, recovered by l1 minimization in the Haar basis with split Bregman,
and scored for a target gas with ACE, bulk coherence and persistence.
"""

__version__ = "0.1.0"
__author__ = "csplume"

from csplume.cube import extract_roi, flatten, load_video, save_video, unflatten
from csplume.detection import (
    ace,
    ace_map,
    bulk_coherence,
    calibrate_threshold,
    count_above,
    detect_video,
    estimate_background,
    histogram,
    persistence_filter,
    separation_gap,
    spatial_accuracy,
)
from csplume.models import (
    BackgroundModel,
    ComparisonSummary,
    CubeVideo,
    DetectionConfig,
    DetectionMap,
    DetectionResult,
    DetectionSeries,
    FlatCube,
    GroundTruth,
    HyperCube,
    Measurements,
    MeasurementVideo,
    PipelineManifest,
    SamplingOperator,
    SolverConfig,
    SolverReport,
    Spectrum,
    Statistic,
    SweepPoint,
    SynthConfig,
    WaveletCoeffs,
)
from csplume.sampling import (
    adjoint,
    apply,
    apply_adjoint,
    build_sampler,
    forward,
    load_measurements,
    materialize,
    sample_cube,
    save_measurements,
)
from csplume.solver import reconstruct_band, reconstruct_cube, shrink
from csplume.synth import default_scenario, generate_video, get_scenario, list_scenarios
from csplume.wavelet import (
    haar_forward,
    haar_forward_cube,
    haar_inverse,
    haar_inverse_cube,
    l1_norm,
)

__all__ = [
    # Cube
    "HyperCube",
    "FlatCube",
    "Spectrum",
    "CubeVideo",
    "flatten",
    "unflatten",
    "extract_roi",
    "load_video",
    "save_video",
    # Wavelet
    "WaveletCoeffs",
    "haar_forward",
    "haar_inverse",
    "haar_forward_cube",
    "haar_inverse_cube",
    "l1_norm",
    # Sampling
    "SamplingOperator",
    "Measurements",
    "MeasurementVideo",
    "build_sampler",
    "apply",
    "apply_adjoint",
    "forward",
    "adjoint",
    "sample_cube",
    "materialize",
    "save_measurements",
    "load_measurements",
    # Solver
    "SolverConfig",
    "SolverReport",
    "shrink",
    "reconstruct_band",
    "reconstruct_cube",
    # Detection
    "BackgroundModel",
    "DetectionConfig",
    "DetectionMap",
    "DetectionSeries",
    "DetectionResult",
    "Statistic",
    "estimate_background",
    "ace",
    "ace_map",
    "bulk_coherence",
    "persistence_filter",
    "calibrate_threshold",
    "count_above",
    "histogram",
    "separation_gap",
    "spatial_accuracy",
    "detect_video",
    # Synth
    "SynthConfig",
    "GroundTruth",
    "default_scenario",
    "generate_video",
    "get_scenario",
    "list_scenarios",
    # Pipeline
    "PipelineManifest",
    "ComparisonSummary",
    "SweepPoint",
]
