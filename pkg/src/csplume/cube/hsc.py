"""
HSC video files.

Layout, little-endian: magic ``HSC1``, u32 n1, n2, b, frame_count, then
frame_count * n1 * n2 * b float32 values. Frames are consecutive, each frame
band-major and each band row-major.
"""

import logging
from pathlib import Path

import numpy as np

from csplume.errors import (
    BadMagicError,
    DimensionOverflowError,
    FormatError,
    NonFiniteDataError,
    TruncatedPayloadError,
)
from csplume.models.cube import CubeVideo

logger = logging.getLogger(__name__)

HSC_MAGIC = b"HSC1"
HSC_HEADER = np.dtype(
    [("magic", "S4"), ("n1", "<u4"), ("n2", "<u4"), ("b", "<u4"), ("frame_count", "<u4")]
)
PAYLOAD_DTYPE = np.dtype("<f4")

# Larger payloads are treated as corrupt headers rather than allocated.
MAX_ELEMENTS = 2**32


def read_header(raw: bytes, magic: bytes, header_dtype: np.dtype) -> np.void:
    """
    Check the magic bytes and decode a fixed-size header record.

    Raises:
        BadMagicError: If the file does not start with ``magic``.
        TruncatedPayloadError: If the file ends inside the header.
    """
    if raw[: len(magic)] != magic:
        raise BadMagicError(f"expected magic {magic!r}, found {raw[:len(magic)]!r}")
    if len(raw) < header_dtype.itemsize:
        raise TruncatedPayloadError(
            f"header needs {header_dtype.itemsize} bytes, file has {len(raw)}"
        )
    return np.frombuffer(raw, dtype=header_dtype, count=1)[0]


def read_payload(raw: bytes, offset: int, dims: tuple[int, ...]) -> np.ndarray:
    """
    Decode ``prod(dims)`` float32 values starting at ``offset`` into float64.

    Raises:
        DimensionOverflowError: If a dimension is zero or the product is too large.
        TruncatedPayloadError: If fewer bytes follow the header than promised.
        FormatError: If bytes are left over after the payload.
        NonFiniteDataError: If the payload holds NaN or Inf.
    """
    count = 1
    for size in dims:
        count *= int(size)
    if min(dims) < 1 or count > MAX_ELEMENTS:
        raise DimensionOverflowError(f"header dimensions {dims} are not a valid payload")
    expected = count * PAYLOAD_DTYPE.itemsize
    available = len(raw) - offset
    if available < expected:
        raise TruncatedPayloadError(f"payload needs {expected} bytes, file has {available}")
    if available > expected:
        raise FormatError(f"{available - expected} trailing bytes after payload")
    values = np.frombuffer(raw, dtype=PAYLOAD_DTYPE, count=count, offset=offset)
    if not np.all(np.isfinite(values)):
        raise NonFiniteDataError("payload contains NaN or Inf")
    return values.astype(np.float64).reshape(dims)


def to_payload(values: np.ndarray) -> bytes:
    """Encode values as little-endian float32 bytes, refusing overflow to Inf."""
    payload = np.ascontiguousarray(values, dtype=PAYLOAD_DTYPE)
    if not np.all(np.isfinite(payload)):
        raise NonFiniteDataError("values do not fit in float32")
    return payload.tobytes()


def save_video(video: CubeVideo, path: str | Path) -> None:
    """
    Write a video as a single HSC file.

    Args:
        video: Video to store; values are rounded to float32.
        path: Destination file.

    Example:
        >>> import tempfile, os
        >>> video = CubeVideo.from_array(np.ones((2, 3, 4, 4)))
        >>> target = os.path.join(tempfile.mkdtemp(), "v.hsc")
        >>> save_video(video, target)
        >>> len(load_video(target))
        2
    """
    header = np.array(
        [(HSC_MAGIC, video.n1, video.n2, video.b, len(video))], dtype=HSC_HEADER
    )
    Path(path).write_bytes(header.tobytes() + to_payload(video.stack()))
    logger.debug("wrote %d frames of %dx%dx%d to %s", len(video), video.n1, video.n2, video.b, path)


def load_video(path: str | Path) -> CubeVideo:
    """
    Read an HSC file.

    Args:
        path: File written by ``save_video``.

    Returns:
        The stored video, in float64.

    Raises:
        BadMagicError: If the magic bytes are not ``HSC1``.
        TruncatedPayloadError: If the payload is shorter than the header says.
        DimensionOverflowError: If the header dimensions are zero or absurd.
    """
    raw = Path(path).read_bytes()
    header = read_header(raw, HSC_MAGIC, HSC_HEADER)
    dims = (int(header["frame_count"]), int(header["b"]), int(header["n1"]), int(header["n2"]))
    return CubeVideo.from_array(read_payload(raw, HSC_HEADER.itemsize, dims))
