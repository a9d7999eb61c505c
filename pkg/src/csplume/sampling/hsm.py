"""
HSM measurement files.

Layout, little-endian: magic ``HSM1``, u32 n, k, b, frame_count, u64 seed,
f64 rate, u32 n1, n2, flags, then k * b float32 values per frame. Within a
frame the k measurements of band 0 come first, then band 1, and so on.
Flag bit 0 records random sign flips. (n, rate, seed, flags) rebuild S exactly.
"""

import logging
from pathlib import Path

import numpy as np

from csplume.cube.hsc import read_header, read_payload, to_payload
from csplume.errors import DimensionMismatchError, FormatError
from csplume.models.sampling import Measurements, MeasurementVideo, SamplingOperator
from csplume.sampling.operator import build_sampler

logger = logging.getLogger(__name__)

HSM_MAGIC = b"HSM1"
HSM_HEADER = np.dtype(
    [
        ("magic", "S4"),
        ("n", "<u4"),
        ("k", "<u4"),
        ("b", "<u4"),
        ("frame_count", "<u4"),
        ("seed", "<u8"),
        ("rate", "<f8"),
        ("n1", "<u4"),
        ("n2", "<u4"),
        ("flags", "<u4"),
    ]
)
FLAG_SIGN_FLIPS = 1


def save_measurements(measurements: MeasurementVideo, path: str | Path) -> None:
    """
    Write per-frame measurements and the operator triple to one HSM file.

    Args:
        measurements: Measurements of every frame.
        path: Destination file.
    """
    flags = FLAG_SIGN_FLIPS if measurements.flip_signs else 0
    header = np.array(
        [
            (
                HSM_MAGIC,
                measurements.n,
                measurements.k,
                measurements.b,
                len(measurements),
                measurements.seed,
                measurements.rate,
                measurements.n1,
                measurements.n2,
                flags,
            )
        ],
        dtype=HSM_HEADER,
    )
    payload = np.stack([frame.Y.T for frame in measurements.frames])
    Path(path).write_bytes(header.tobytes() + to_payload(payload))
    logger.debug("wrote %d measurement frames (k=%d) to %s", len(measurements), measurements.k, path)


def load_measurements(path: str | Path) -> MeasurementVideo:
    """
    Read an HSM file.

    Raises:
        BadMagicError: If the magic bytes are not ``HSM1``.
        TruncatedPayloadError: If the payload is shorter than the header says.
        DimensionOverflowError: If header dimensions are zero or absurd.
        FormatError: If n differs from n1 * n2 or k exceeds n.
    """
    raw = Path(path).read_bytes()
    header = read_header(raw, HSM_MAGIC, HSM_HEADER)
    n, k, b = int(header["n"]), int(header["k"]), int(header["b"])
    n1, n2 = int(header["n1"]), int(header["n2"])
    frame_count = int(header["frame_count"])
    values = read_payload(raw, HSM_HEADER.itemsize, (frame_count, b, k))
    if n != n1 * n2 or k > n:
        raise FormatError(f"inconsistent header: n={n}, k={k}, grid {n1}x{n2}")
    return MeasurementVideo(
        frames=tuple(Measurements(frame.T, n=n) for frame in values),
        n1=n1,
        n2=n2,
        seed=int(header["seed"]),
        rate=float(header["rate"]),
        flip_signs=bool(int(header["flags"]) & FLAG_SIGN_FLIPS),
    )


def rebuild_operator(measurements: MeasurementVideo) -> SamplingOperator:
    """
    Reconstruct the exact operator that produced a measurement file.

    Raises:
        DimensionMismatchError: If the rebuilt operator's k disagrees with the data.
    """
    op = build_sampler(measurements.n, measurements.rate, measurements.seed, measurements.flip_signs)
    if op.k != measurements.k:
        raise DimensionMismatchError(
            f"rebuilt operator has k={op.k}, file stores k={measurements.k}"
        )
    return op
