"""
Plain-text artifacts: signature files and the CSV tables of every stage.

Counts: ``frame,count``. Histograms: ``bin_left,bin_right,count``.
Comparison: ``frame,count_raw,count_recon``. Scores:
``frame,plume_pixels,separation_gap,precision,recall``. A detection CSV gets a
``.txt`` sidecar echoing the threshold and background model parameters.
"""

import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from csplume.errors import DimensionMismatchError, FormatError
from csplume.models.cube import Spectrum
from csplume.types import FloatArray, IntArray

logger = logging.getLogger(__name__)

COUNT_COLUMNS = ("frame", "count")
HISTOGRAM_COLUMNS = ("bin_left", "bin_right", "count")
COMPARISON_COLUMNS = ("frame", "count_raw", "count_recon")
SCORE_COLUMNS = ("frame", "plume_pixels", "separation_gap", "precision", "recall")


def save_signature(signature: Spectrum, path: str | Path) -> None:
    """Write a signature as plain text, one value per line."""
    np.savetxt(path, signature.values, fmt="%.17g")


def load_signature(path: str | Path, b: int | None = None) -> Spectrum:
    """
    Read a one-value-per-line signature file.

    Raises:
        FormatError: If the file is empty, not a single column or non-finite.
        DimensionMismatchError: If ``b`` is given and the length differs.
    """
    try:
        values = np.loadtxt(path, dtype=np.float64, ndmin=1)
    except ValueError as exc:
        raise FormatError(f"{path}: not a one-float-per-line signature ({exc})") from exc
    if values.ndim != 1 or values.size == 0 or not np.all(np.isfinite(values)):
        raise FormatError(f"{path}: signature must be a non-empty column of finite values")
    if b is not None and values.size != b:
        raise DimensionMismatchError(f"{path}: signature has {values.size} values, data has {b} bands")
    return Spectrum(values)


def _read_table(path: str | Path, columns: Sequence[str]) -> pd.DataFrame:
    try:
        table = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path}: unreadable CSV ({exc})") from exc
    if tuple(table.columns) != tuple(columns):
        raise FormatError(f"{path}: expected columns {list(columns)}, found {list(table.columns)}")
    return table


def _write_table(table: pd.DataFrame, path: str | Path) -> None:
    table.to_csv(path, index=False, lineterminator="\n")
    logger.debug("wrote %s (%d rows)", path, len(table))


def write_counts(counts: Sequence[int], path: str | Path, meta: Mapping[str, Any] | None = None) -> None:
    """Write a ``frame,count`` CSV and, with ``meta``, its ``.txt`` sidecar."""
    table = pd.DataFrame({"frame": np.arange(len(counts)), "count": np.asarray(counts, dtype=np.int64)})
    _write_table(table, path)
    if meta is not None:
        lines = [f"{key} = {value}" for key, value in meta.items()]
        Path(path).with_suffix(".txt").write_text("\n".join(lines) + "\n")


def read_counts(path: str | Path) -> IntArray:
    """
    Read a ``frame,count`` CSV.

    Raises:
        FormatError: If the columns differ or frames are not 0, 1, 2, ...
    """
    table = _read_table(path, COUNT_COLUMNS)
    if not np.array_equal(table["frame"].to_numpy(), np.arange(len(table))):
        raise FormatError(f"{path}: frames must run 0, 1, 2, ... without gaps")
    return table["count"].to_numpy(dtype=np.int64)


def write_histogram(counts: IntArray, edges: FloatArray, path: str | Path) -> None:
    table = pd.DataFrame({"bin_left": edges[:-1], "bin_right": edges[1:], "count": counts})
    _write_table(table, path)


def write_comparison(raw: Sequence[int], recon: Sequence[int], path: str | Path) -> None:
    table = pd.DataFrame(
        {
            "frame": np.arange(len(raw)),
            "count_raw": np.asarray(raw, dtype=np.int64),
            "count_recon": np.asarray(recon, dtype=np.int64),
        }
    )
    _write_table(table, path)


def write_scores(scores: pd.DataFrame, path: str | Path) -> None:
    _write_table(scores.loc[:, list(SCORE_COLUMNS)], path)


def read_scores(path: str | Path) -> pd.DataFrame:
    return _read_table(path, SCORE_COLUMNS)


def write_sweep(table: pd.DataFrame, path: str | Path) -> None:
    _write_table(table, path)
