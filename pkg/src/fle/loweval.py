"""Low-Eval iterations: probabilistic feasible direct search.

Poll directions are sampled from generators of the approximate tangent cone
at cone parameter ``xi = alpha``, so every poll point ``x + alpha W d`` with a
unit ``d`` stays feasible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (FeasibleRegion, approx_active_sets, normal_cone_generators,
                       sample_polling_directions, tangent_cone_generators)


@dataclass(frozen=True)
class DirectSearchParams:
    expand: float = 2.0  # lambda >= 1
    contract: float = 0.5  # theta in (0, 1)
    gamma1: float = 1e-5
    gamma2: float = 1e-5
    count_fraction: float = 0.5

    def __post_init__(self):
        if self.expand < 1:
            raise ValueError("expansion factor must be >= 1")
        if not 0 < self.contract < 1:
            raise ValueError("contraction factor must lie in (0, 1)")
        if self.gamma1 <= 0 or self.gamma2 <= 0:
            raise ValueError("forcing constants must be positive")
        if not 0 < self.count_fraction <= 1:
            raise ValueError("count_fraction must lie in (0, 1]")


def forcing(alpha, gamma1=1e-5, gamma2=1e-5):
    """Forcing function ``min(gamma1, gamma2 * alpha**2)``."""
    return min(gamma1, gamma2 * alpha * alpha)


def polling_set(region: FeasibleRegion, x, alpha, count_fraction, rng):
    """Sampled reduced-space unit directions feasible for stepsize ``alpha``."""
    active = approx_active_sets(region, x, alpha)
    cone = tangent_cone_generators(normal_cone_generators(region, active))
    return sample_polling_directions(cone, count_fraction, rng)


@dataclass
class LowEvalOutcome:
    success: bool
    x_next: np.ndarray
    f_next: float
    alpha_next: float
    evals: int
    polled: int
    directions: np.ndarray


def low_eval_iteration(f, region: FeasibleRegion, x, fx, alpha,
                       params: DirectSearchParams = DirectSearchParams(),
                       rng=None) -> LowEvalOutcome:
    """Opportunistic poll of ``x + alpha W d`` over a sampled polling set."""
    if rng is None:
        rng = np.random.default_rng()
    x = np.asarray(x, dtype=float)
    dirs = polling_set(region, x, alpha, params.count_fraction, rng)
    # rho can fall below the spacing of floats near fx, where ft <= fx - rho
    # alone would accept ft == fx; require the decrease form as well
    rho = forcing(alpha, params.gamma1, params.gamma2)
    evals = 0
    for d in dirs:
        trial = x + alpha * (region.W @ d)
        ft = f(trial)
        evals += 1
        if np.isfinite(ft) and fx - ft >= rho and ft <= fx - rho:
            return LowEvalOutcome(True, trial, ft, params.expand * alpha, evals,
                                  len(dirs), dirs)
    return LowEvalOutcome(False, x, fx, params.contract * alpha, evals, len(dirs), dirs)
