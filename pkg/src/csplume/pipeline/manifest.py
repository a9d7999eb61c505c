"""
JSON manifests and artifact checksums.
"""

import hashlib
import json
import logging
from pathlib import Path

from csplume.errors import ManifestError
from csplume.models.manifest import PipelineManifest

logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


def file_checksum(path: str | Path) -> str:
    """SHA-256 hex digest of a file."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(_CHUNK), b""):
            digest.update(block)
    return digest.hexdigest()


def artifact_path(manifest: PipelineManifest, artifact: str) -> Path:
    """Location of one artifact, relative to the manifest's workdir."""
    if artifact not in manifest.paths:
        raise ManifestError(f"manifest has no path for artifact {artifact!r}")
    return Path(manifest.workdir) / manifest.paths[artifact]


def record_checksum(manifest: PipelineManifest, artifact: str) -> str:
    """Hash an artifact that a stage just wrote and store it in the manifest."""
    checksum = file_checksum(artifact_path(manifest, artifact))
    manifest.checksums[artifact] = checksum
    return checksum


def load_manifest(path: str | Path) -> PipelineManifest:
    """
    Read a manifest; a relative workdir is taken relative to the manifest file.

    Raises:
        ManifestError: If the file is not valid JSON or lacks required fields.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ManifestError(f"manifest {path} must hold a JSON object")
    try:
        manifest = PipelineManifest.from_dict(data)
    except ManifestError:
        raise
    except (TypeError, KeyError, ValueError) as exc:
        raise ManifestError(f"invalid manifest {path}: {exc}") from exc
    if not Path(manifest.workdir).is_absolute():
        manifest.workdir = str(path.parent / manifest.workdir)
    return manifest


def save_manifest(manifest: PipelineManifest, path: str | Path, workdir: str | None = None) -> None:
    """
    Write a manifest as indented JSON.

    Args:
        workdir: Value stored as workdir instead of ``manifest.workdir``,
            typically the path relative to the manifest file.
    """
    data = manifest.to_dict()
    if workdir is not None:
        data["workdir"] = workdir
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    logger.info("manifest written to %s", path)
