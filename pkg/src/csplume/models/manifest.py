"""
Pipeline manifest data model.
"""

from dataclasses import dataclass, field
from typing import Any

from csplume.errors import ManifestError
from csplume.models.detection import DetectionConfig
from csplume.models.solver import SolverConfig
from csplume.models.synth import SynthConfig

ARTIFACTS = (
    "video",
    "truth",
    "signature",
    "measurements",
    "reconstruction",
    "counts_raw",
    "counts_recon",
    "histogram_raw",
    "histogram_recon",
    "separation_raw",
    "separation_recon",
    "comparison",
)


@dataclass
class PipelineManifest:
    """
    Everything needed to rerun the synth-sample-reconstruct-detect-compare pipeline.

    Attributes:
        workdir: Directory the artifact file names are relative to.
        synth: Scenario the raw video is generated from.
        rate: Sampling fraction of the measurement operator.
        operator_seed: Seed of the measurement operator.
        flip_signs: Whether the operator draws random sign flips.
        solver: Split Bregman settings.
        detection: Detection settings shared by both arms.
        background_frames: Chemical-free frames used for background and threshold.
        paths: Artifact file name per stage, see ``ARTIFACTS``.
        checksums: SHA-256 of each artifact, filled in as stages run.
        workers: Threads used for per-frame work.
    """

    workdir: str
    synth: SynthConfig
    rate: float = 0.10
    operator_seed: int = 1
    flip_signs: bool = True
    solver: SolverConfig = field(default_factory=SolverConfig)
    detection: DetectionConfig = field(default_factory=DetectionConfig)
    background_frames: list[int] = field(default_factory=list)
    paths: dict[str, str] = field(default_factory=dict)
    checksums: dict[str, str] = field(default_factory=dict)
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.paths:
            self.paths = {name: _default_file_name(name) for name in ARTIFACTS}
        missing = [name for name in ARTIFACTS if name not in self.paths]
        if missing:
            raise ManifestError(f"manifest paths missing entries: {missing}")
        if not self.background_frames:
            self.background_frames = list(range(self.synth.release_start))

    def to_dict(self) -> dict[str, Any]:
        return {
            "workdir": self.workdir,
            "synth": self.synth.to_dict(),
            "operator": {
                "rate": self.rate,
                "seed": self.operator_seed,
                "flip_signs": self.flip_signs,
            },
            "solver": self.solver.to_dict(),
            "detection": self.detection.to_dict(),
            "background_frames": list(self.background_frames),
            "paths": dict(self.paths),
            "checksums": dict(self.checksums),
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineManifest":
        required = ("workdir", "synth", "operator", "solver", "detection", "background_frames")
        missing = [key for key in required if key not in data]
        if missing:
            raise ManifestError(f"manifest missing fields: {missing}")
        operator = data["operator"]
        if not {"rate", "seed"} <= set(operator):
            raise ManifestError("manifest operator needs 'rate' and 'seed'")
        return cls(
            workdir=data["workdir"],
            synth=SynthConfig.from_dict(data["synth"]),
            rate=float(operator["rate"]),
            operator_seed=int(operator["seed"]),
            flip_signs=bool(operator.get("flip_signs", True)),
            solver=SolverConfig.from_dict(data["solver"]),
            detection=DetectionConfig.from_dict(data["detection"]),
            background_frames=[int(i) for i in data["background_frames"]],
            paths=dict(data.get("paths", {})),
            checksums=dict(data.get("checksums", {})),
            workers=int(data.get("workers", 1)),
        )


def _default_file_name(artifact: str) -> str:
    extensions = {
        "video": "video.hsc",
        "truth": "truth.hsc",
        "signature": "signature.txt",
        "measurements": "measurements.hsm",
        "reconstruction": "reconstruction.hsc",
        "comparison": "comparison.csv",
    }
    return extensions.get(artifact, f"{artifact}.csv")
