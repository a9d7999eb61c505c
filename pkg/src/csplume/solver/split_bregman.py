"""
Constrained split Bregman reconstruction of sampled bands.

Solves, band by band,

    min ||u||_1  subject to  y = S H^-1 u,   x* = H^-1 u*

with A = S H^-1. Both factors have orthonormal rows, so A A^T = I and A^T A is
an orthogonal projection; the u-subproblem (lam I + mu A^T A) u = rhs then has
the closed form used in ``u_update`` and no inner linear solver is needed.

Each call works on a (k, m) block of measurement columns at once. Columns never
interact: norms are taken column by column on contiguous copies, so a band
reconstructs bit-for-bit the same alone or inside a cube.
"""

import logging
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from csplume.errors import ConvergenceError, DimensionMismatchError
from csplume.models.cube import FlatCube
from csplume.models.sampling import Measurements, SamplingOperator
from csplume.models.solver import SolverConfig, SolverReport
from csplume.sampling.operator import adjoint, forward
from csplume.solver.shrinkage import shrink
from csplume.types import FloatArray
from csplume.wavelet.haar import haar_analysis, haar_synthesis

logger = logging.getLogger(__name__)

_TINY = 1e-300


def composite_forward(op: SamplingOperator, u: FloatArray) -> FloatArray:
    """A u = S H^-1 u for Haar coefficients u (vector or columns)."""
    return forward(op, haar_synthesis(u))


def composite_adjoint(op: SamplingOperator, y: FloatArray) -> FloatArray:
    """A^T y = H S^T y."""
    return haar_analysis(adjoint(op, y))


def column_norms(a: FloatArray) -> FloatArray:
    """Euclidean norm of every column of a 2-D array, independent of its width."""
    return np.array([np.linalg.norm(np.ascontiguousarray(a[:, j])) for j in range(a.shape[1])])


def u_update(
    op: SamplingOperator,
    d: FloatArray,
    b: FloatArray,
    y_hat: FloatArray,
    cfg: SolverConfig,
) -> tuple[FloatArray, FloatArray]:
    """
    Solve (lam I + mu A^T A) u = lam (d - b) + mu A^T y_hat in closed form.

    With P = A^T A and w the right-hand side, u = (w - mu/(lam + mu) P w) / lam.
    Because A A^T = I this equals v + c A^T (y_hat - A v) with v = d - b and
    c = mu / (lam + mu), which costs one A and one A^T.

    Returns:
        The new u and its image A u.
    """
    c = cfg.mu / (cfg.lam + cfg.mu)
    v = d - b
    av = composite_forward(op, v)
    gap = y_hat - av
    return v + c * composite_adjoint(op, gap), av + c * gap


def _solve_block(
    Y: FloatArray,
    op: SamplingOperator,
    cfg: SolverConfig,
    bands: Sequence[int],
) -> tuple[FloatArray, list[SolverReport]]:
    """Reconstruct the Haar coefficients of every column of a (k, m) block."""
    start = time.perf_counter()
    k, m = Y.shape
    U = np.zeros((op.n, m))
    scale = column_norms(Y) / np.sqrt(k)
    outer = np.zeros(m, dtype=np.int64)
    elapsed = np.zeros(m)
    histories: list[list[float]] = [[] for _ in range(m)]
    solvable = np.flatnonzero(scale > 0)

    if op.k == op.n:
        # a single feasible point: x = S^T y
        U[:, solvable] = composite_adjoint(op, Y[:, solvable])
    elif solvable.size:
        y = Y[:, solvable] / scale[solvable]
        y_norm = column_norms(y)
        u = composite_adjoint(op, y)
        d = np.zeros_like(u)
        bregman = np.zeros_like(u)
        y_hat = y.copy()
        au = y.copy()
        active = np.arange(solvable.size)
        gamma = 1.0 / cfg.lam
        for iteration in range(1, cfg.max_outer + 1):
            u_prev = u[:, active]
            uu, dd, bb, yh = u_prev, d[:, active], bregman[:, active], y_hat[:, active]
            for _ in range(cfg.max_inner):
                uu, auu = u_update(op, dd, bb, yh, cfg)
                dd = shrink(uu + bb, gamma)
                bb = bb + uu - dd
            misfit = auu - y[:, active]
            yh = yh - misfit
            u[:, active], d[:, active], bregman[:, active] = uu, dd, bb
            y_hat[:, active], au[:, active] = yh, auu

            residual = column_norms(misfit) / y_norm[active]
            change = column_norms(uu - u_prev) / np.maximum(column_norms(uu), _TINY)
            for local, value in zip(active, residual):
                histories[solvable[local]].append(float(value))
            done = ((residual <= cfg.tol_constraint) & (change <= cfg.tol_constraint)) | (
                change <= cfg.tol_change
            )
            finished = active[done]
            outer[solvable[finished]] = iteration
            elapsed[solvable[finished]] = time.perf_counter() - start
            active = active[~done]
            if active.size == 0:
                break
        outer[solvable[active]] = cfg.max_outer
        elapsed[solvable[active]] = time.perf_counter() - start
        U[:, solvable] = u * scale[solvable]

    X = haar_synthesis(U)
    Y_norm = column_norms(Y)
    final_residual = column_norms(forward(op, X) - Y) / np.maximum(Y_norm, _TINY)
    final_residual[Y_norm == 0] = 0.0
    elapsed[elapsed == 0] = time.perf_counter() - start
    reports = []
    for j, band in enumerate(bands):
        converged = bool(final_residual[j] <= cfg.tol_constraint)
        report = SolverReport(
            band=int(band),
            outer_iterations=int(outer[j]),
            final_constraint_residual=float(final_residual[j]),
            final_l1=float(np.abs(U[:, j]).sum()),
            converged=converged,
            wall_time=float(elapsed[j]),
            residual_history=tuple(histories[j]),
        )
        if converged:
            logger.debug(
                "band %d converged after %d outer iterations (residual %.3e)",
                band,
                report.outer_iterations,
                report.final_constraint_residual,
            )
        else:
            logger.debug(
                "band %d stopped at %d outer iterations with residual %.3e > %.1e",
                band,
                report.outer_iterations,
                report.final_constraint_residual,
                cfg.tol_constraint,
            )
        reports.append(report)
    return X, reports


def reconstruct_band(
    y: FloatArray, op: SamplingOperator, cfg: SolverConfig | None = None
) -> tuple[FloatArray, SolverReport]:
    """
    Recover one flattened band from its k measurements.

    Args:
        y: Measurement vector of length op.k.
        op: The operator that produced y.
        cfg: Solver settings; defaults to SolverConfig().

    Returns:
        The length-n band x* = H^-1 u* and its convergence report.

    Raises:
        DimensionMismatchError: If y does not have length op.k.

    Example:
        >>> from csplume.sampling.operator import build_sampler
        >>> op = build_sampler(64, 0.5, seed=0)
        >>> x, report = reconstruct_band(np.zeros(op.k), op)
        >>> float(np.abs(x).max()), report.converged
        (0.0, True)
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != op.k:
        raise DimensionMismatchError(f"expected {op.k} measurements, got shape {y.shape}")
    X, reports = _solve_block(y[:, None], op, cfg or SolverConfig(), bands=[0])
    return X[:, 0], reports[0]


def reconstruct_cube(
    measurements: Measurements,
    op: SamplingOperator,
    cfg: SolverConfig | None = None,
    workers: int = 1,
) -> tuple[FlatCube, list[SolverReport]]:
    """
    Recover every band of a cube independently (the problem separates by band).

    Args:
        measurements: The k x b measurements Y.
        op: The operator that produced Y.
        cfg: Solver settings; defaults to SolverConfig().
        workers: Threads to split the bands over.

    Returns:
        The reconstructed flattened cube and one report per band, in band order.

    Raises:
        DimensionMismatchError: If the measurements do not match the operator.
    """
    cfg = cfg or SolverConfig()
    if measurements.n != op.n or measurements.k != op.k:
        raise DimensionMismatchError(
            f"measurements (n={measurements.n}, k={measurements.k}) "
            f"do not match operator (n={op.n}, k={op.k})"
        )
    chunks = [c for c in np.array_split(np.arange(measurements.b), max(1, workers)) if c.size]
    if len(chunks) == 1:
        X, reports = _solve_block(measurements.Y, op, cfg, bands=list(chunks[0]))
        return FlatCube(X), reports
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(
            pool.map(lambda c: _solve_block(measurements.Y[:, c], op, cfg, bands=list(c)), chunks)
        )
    X = np.concatenate([part for part, _ in results], axis=1)
    return FlatCube(X), [report for _, part in results for report in part]


def reconstruct_frames(
    frames: Sequence[Measurements],
    op: SamplingOperator,
    cfg: SolverConfig | None = None,
    workers: int = 1,
    strict: bool = False,
) -> tuple[list[FlatCube], list[list[SolverReport]]]:
    """
    Reconstruct a sequence of cubes, one thread per frame.

    Results are returned in frame order whatever the completion order.

    Raises:
        ConvergenceError: If ``strict`` and any band missed its tolerance.
    """
    cfg = cfg or SolverConfig()

    def one(frame: Measurements) -> tuple[FlatCube, list[SolverReport]]:
        return reconstruct_cube(frame, op, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, frames))
    else:
        results = [one(frame) for frame in frames]
    cubes = [cube for cube, _ in results]
    reports = [frame_reports for _, frame_reports in results]
    failed = [
        (index, r.band) for index, frame_reports in enumerate(reports)
        for r in frame_reports if not r.converged
    ]
    if failed:
        logger.warning("%d bands did not reach tol_constraint", len(failed))
        if strict:
            raise ConvergenceError(f"{len(failed)} (frame, band) pairs did not converge: {failed[:5]}")
    return cubes, reports
