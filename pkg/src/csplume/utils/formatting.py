"""
Formatting utilities for solver, comparison and sweep summaries.
"""

import math
from collections.abc import Sequence

from csplume.models.comparison import ComparisonSummary, SweepPoint
from csplume.models.solver import SolverReport


def _gap(value: float) -> str:
    return "n/a" if math.isnan(value) else f"{value:+.4f}"


def format_comparison_summary(summary: ComparisonSummary) -> str:
    """
    Format a raw versus reconstructed comparison as a string.

    Args:
        summary: ComparisonSummary returned by compare_counts().

    Returns:
        Formatted multi-line summary.

    Example:
        >>> summary = ComparisonSummary(140, 50, 40, 80, 41, (40, 41), 0.1, 0.3)
        >>> print(format_comparison_summary(summary))  # doctest: +NORMALIZE_WHITESPACE
        ==================================================
          Raw vs Reconstructed (140 frames)
        ==================================================
          Peak Raw:         50 px at frame 40
          Peak Recon:       80 px at frame 41
          Amplification:    1.60x
          Recon > Raw:      2 frames (40..41)
          Gap Raw:          +0.1000
          Gap Recon:        +0.3000
          Gap Difference:   +0.2000
        ==================================================
    """
    above = summary.recon_above_raw
    span = f" ({above[0]}..{above[-1]})" if above else ""
    lines = [
        "",
        "=" * 50,
        f"  Raw vs Reconstructed ({summary.frame_count} frames)",
        "=" * 50,
        f"  Peak Raw:         {summary.peak_raw} px at frame {summary.peak_frame_raw}",
        f"  Peak Recon:       {summary.peak_recon} px at frame {summary.peak_frame_recon}",
        f"  Amplification:    {summary.amplification:.2f}x",
        f"  Recon > Raw:      {len(above)} frames{span}",
        f"  Gap Raw:          {_gap(summary.gap_raw)}",
        f"  Gap Recon:        {_gap(summary.gap_recon)}",
        f"  Gap Difference:   {_gap(summary.gap_difference)}",
        "=" * 50,
        "",
    ]
    return "\n".join(lines)


def print_comparison_summary(summary: ComparisonSummary) -> None:
    """Print a formatted comparison summary to stdout."""
    print(format_comparison_summary(summary))


def format_solver_summary(reports: Sequence[Sequence[SolverReport]]) -> str:
    """
    Summarize per-frame, per-band solver reports in a few lines.

    Example:
        >>> r = SolverReport(0, 12, 5e-7, 3.0, True, 0.01)
        >>> print(format_solver_summary([[r, r]]))
        Bands solved:      2 (1 frames)
        Converged:         2/2
        Outer iterations:  mean 12.0, max 12
        Worst residual:    5.000e-07
    """
    flat = [r for frame in reports for r in frame]
    if not flat:
        return "Bands solved:      0"
    iterations = [r.outer_iterations for r in flat]
    converged = sum(r.converged for r in flat)
    lines = [
        f"Bands solved:      {len(flat)} ({len(reports)} frames)",
        f"Converged:         {converged}/{len(flat)}",
        f"Outer iterations:  mean {sum(iterations) / len(iterations):.1f}, max {max(iterations)}",
        f"Worst residual:    {max(r.final_constraint_residual for r in flat):.3e}",
    ]
    return "\n".join(lines)


def print_solver_summary(reports: Sequence[Sequence[SolverReport]]) -> None:
    print(format_solver_summary(reports))


def format_sweep_table(points: Sequence[SweepPoint]) -> str:
    """
    Format a rate sweep as an aligned text table.

    Example:
        >>> p = SweepPoint("raw", 1.0, 4096, 0.0123, 57, 40, 0.25)
        >>> print(format_sweep_table([p]))
        arm     rate      k   threshold   peak  frame        gap  unconv
        raw    1.000   4096    0.012300     57     40    +0.2500       0
    """
    header = f"{'arm':<5} {'rate':>6} {'k':>6} {'threshold':>11} {'peak':>6} {'frame':>6} {'gap':>10} {'unconv':>7}"
    rows = [header]
    for p in points:
        rows.append(
            f"{p.arm:<5} {p.rate:>6.3f} {p.k:>6d} {p.threshold:>11.6f} {p.peak_count:>6d} "
            f"{p.peak_frame:>6d} {_gap(p.best_gap):>10} {p.unconverged_bands:>7d}"
        )
    return "\n".join(rows)


def print_sweep_table(points: Sequence[SweepPoint]) -> None:
    print(format_sweep_table(points))
