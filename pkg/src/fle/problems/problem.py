from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..geometry import FeasibleRegion, InfeasiblePointError


def describe_violation(region: FeasibleRegion, x, tol=1e-10):
    """Human-readable description of the first violated constraint, or None."""
    x = np.asarray(x, dtype=float)
    for i in range(region.m):
        r = region.A[i] @ x - region.b[i]
        if abs(r) > tol:
            return f"equality row {i + 1} (residual {r:.3e})"
    ax = region.A_I @ x
    for i in range(region.m_I):
        if ax[i] < region.lower[i] - tol:
            return f"lower bound of inequality row {i + 1} ({ax[i]!r} < {region.lower[i]!r})"
        if ax[i] > region.upper[i] + tol:
            return f"upper bound of inequality row {i + 1} ({ax[i]!r} > {region.upper[i]!r})"
    return None


@dataclass
class Problem:
    name: str
    objective: Callable
    region: FeasibleRegion
    x0: np.ndarray
    f_L: float | None = None
    gradient: Callable | None = None
    smooth: bool = True
    convex: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=float)
        if self.x0.shape != (self.region.n,):
            raise ValueError(f"{self.name}: x0 must have length {self.region.n}")
        bad = describe_violation(self.region, self.x0)
        if bad is not None:
            raise InfeasiblePointError(f"{self.name}: x0 violates {bad}")
        if not np.isfinite(self.objective(self.x0)):
            raise ValueError(f"{self.name}: objective is not finite at x0")

    @property
    def n(self) -> int:
        return self.region.n
