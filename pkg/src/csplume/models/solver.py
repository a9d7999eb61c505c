"""
Split Bregman solver configuration and report models.
"""

from dataclasses import asdict, dataclass, field
from typing import Any

from csplume.errors import InvalidParameterError


@dataclass(frozen=True)
class SolverConfig:
    """
    Parameters of the constrained split Bregman solver.

    Attributes:
        mu: Weight of the measurement constraint term.
        lam: Weight of the splitting term; the shrink threshold is 1/lam.
        max_outer: Maximum number of Bregman (constraint) updates.
        max_inner: Splitting iterations per Bregman update.
        tol_constraint: Stop once ||S x - y|| / ||y|| falls below this.
        tol_change: Stop once the relative change of the iterate falls below this.

    Example:
        >>> SolverConfig().max_outer
        200
    """

    mu: float = 1.0
    lam: float = 1.0
    max_outer: int = 200
    max_inner: int = 1
    tol_constraint: float = 1e-6
    tol_change: float = 1e-8

    def __post_init__(self) -> None:
        if self.mu <= 0 or self.lam <= 0:
            raise InvalidParameterError("mu and lam must be positive")
        if self.max_outer < 1 or self.max_inner < 1:
            raise InvalidParameterError("iteration limits must be at least 1")
        for name in ("tol_constraint", "tol_change"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise InvalidParameterError(f"{name} must lie in (0, 1), got {value}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SolverConfig":
        return cls(**data)


@dataclass(frozen=True)
class SolverReport:
    """
    Convergence diagnostics of one band reconstruction.

    Attributes:
        band: Band index the report belongs to (0 for a lone band).
        outer_iterations: Bregman updates performed.
        final_constraint_residual: ||S x - y|| / ||y|| on return.
        final_l1: l1 norm of the returned Haar coefficients.
        converged: Whether the residual tolerance was met.
        wall_time: Seconds spent on this band.
        residual_history: Relative residual after every outer iteration.
    """

    band: int
    outer_iterations: int
    final_constraint_residual: float
    final_l1: float
    converged: bool
    wall_time: float
    residual_history: tuple[float, ...] = field(default=(), repr=False)
