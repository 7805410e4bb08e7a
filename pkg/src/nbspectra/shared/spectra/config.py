"""Solver configuration."""
from dataclasses import dataclass, field
from typing import Optional

from ..ensembles import SeedSpec
from ..errors import ValidationError

DENSE_TOL = 1e-10
ITERATIVE_TOL = 1e-6
DENSE_CHECK_MAX = 4096


@dataclass(frozen=True)
class SpectralConfig:
    """Tolerances, iteration caps and seeding for the eigensolvers.

    `tol` overrides both the dense and the iterative default when given.
    """

    tol: Optional[float] = None
    max_iter: int = 300
    restarts: int = 3
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))
    dense_check_limit: int = 1024
    sign_vectors: int = 32
    ritz_every: int = 10

    def __post_init__(self) -> None:
        if self.tol is not None and self.tol <= 0:
            raise ValidationError("tol must be positive", field="tol")
        if self.max_iter < 1:
            raise ValidationError("max_iter must be >= 1", field="max_iter")
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1", field="restarts")
        if not 0 <= self.dense_check_limit <= DENSE_CHECK_MAX:
            raise ValidationError(
                f"dense_check_limit must lie in [0, {DENSE_CHECK_MAX}]",
                field="dense_check_limit",
            )
        if self.sign_vectors < 2:
            raise ValidationError("sign_vectors must be >= 2", field="sign_vectors")

    @property
    def dense_tol(self) -> float:
        return self.tol if self.tol is not None else DENSE_TOL

    @property
    def iterative_tol(self) -> float:
        return self.tol if self.tol is not None else ITERATIVE_TOL
