"""
Utility functions for csplume.
"""

from csplume.utils.formatting import (
    format_comparison_summary,
    format_solver_summary,
    format_sweep_table,
    print_comparison_summary,
    print_solver_summary,
    print_sweep_table,
)

__all__ = [
    "format_comparison_summary",
    "print_comparison_summary",
    "format_solver_summary",
    "print_solver_summary",
    "format_sweep_table",
    "print_sweep_table",
]
