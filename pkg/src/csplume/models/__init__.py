"""
Data Models for csplume

Dataclasses for the cubes, operators, solver settings, detection products and
scenarios that flow through the pipeline.
"""

from csplume.models.comparison import ComparisonSummary, SweepPoint
from csplume.models.cube import CubeVideo, FlatCube, HyperCube, Spectrum
from csplume.models.detection import (
    BackgroundModel,
    DetectionConfig,
    DetectionMap,
    DetectionResult,
    DetectionSeries,
    Statistic,
)
from csplume.models.manifest import ARTIFACTS, PipelineManifest
from csplume.models.sampling import Measurements, MeasurementVideo, SamplingOperator
from csplume.models.solver import SolverConfig, SolverReport
from csplume.models.synth import GroundTruth, SynthConfig
from csplume.models.wavelet import WaveletCoeffs

__all__ = [
    # cube
    "CubeVideo",
    "FlatCube",
    "HyperCube",
    "Spectrum",
    # wavelet
    "WaveletCoeffs",
    # sampling
    "Measurements",
    "MeasurementVideo",
    "SamplingOperator",
    # solver
    "SolverConfig",
    "SolverReport",
    # detection
    "BackgroundModel",
    "DetectionConfig",
    "DetectionMap",
    "DetectionResult",
    "DetectionSeries",
    "Statistic",
    # synth
    "GroundTruth",
    "SynthConfig",
    # pipeline
    "ARTIFACTS",
    "PipelineManifest",
    "ComparisonSummary",
    "SweepPoint",
]
