"""
Walsh-Hadamard measurement operator and HSM measurement files.
"""

from csplume.sampling.hadamard import fwht
from csplume.sampling.hsm import load_measurements, rebuild_operator, save_measurements
from csplume.sampling.operator import (
    adjoint,
    adjoint_cube,
    apply,
    apply_adjoint,
    build_sampler,
    forward,
    materialize,
    measurement_count,
    sample_cube,
)

__all__ = [
    # hadamard
    "fwht",
    # operator
    "build_sampler",
    "measurement_count",
    "apply",
    "apply_adjoint",
    "forward",
    "adjoint",
    "sample_cube",
    "adjoint_cube",
    "materialize",
    # hsm
    "save_measurements",
    "load_measurements",
    "rebuild_operator",
]
