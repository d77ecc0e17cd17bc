"""Convergence test and Dolan-More performance profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BenchResult:
    """Outcome of one (problem, solver) cell for one tolerance.

    ``t`` is the number of evaluations needed to pass the convergence test,
    or ``math.inf`` when the solver never passed it.
    """

    problem: str
    solver: str
    t: float
    f_best: float
    evals_used: float
    tau: float | None = None
    error: str | None = None

    @property
    def solved(self) -> bool:
        return math.isfinite(self.t)


def convergence_eval_count(trace, f0, f_L, tau):
    """First cumulative evaluation count at which ``f0 - f >= (1 - tau)(f0 - f_L)``.

    ``trace`` is a :class:`fle.driver.RunRecord` or an iterable of
    ``(cumulative_evals, f)`` pairs in evaluation order.  The starting point
    counts as evaluation 1.  Returns ``math.inf`` if the test never holds.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    if f_L > f0:
        raise ValueError(f"f_L = {f_L!r} exceeds f(x0) = {f0!r}")
    target = (1.0 - tau) * (f0 - f_L)
    if hasattr(trace, "iterations"):
        pairs = [(1, trace.f0)] + [(it.evals, it.f) for it in trace.iterations]
    else:
        pairs = list(trace)
    for evals, f in pairs:
        if f0 - f >= target:
            return int(evals)
    return math.inf


def performance_ratios(results) -> dict:
    """``r[p, s] = t[p, s] / min_s t[p, s]`` (``inf`` for failures).

    Problems where every solver failed get ``inf`` for all solvers.
    """
    results = list(results)
    if not results:
        raise ValueError("no results")
    best: dict[str, float] = {}
    for r in results:
        best[r.problem] = min(best.get(r.problem, math.inf), r.t)
    ratios = {}
    for r in results:
        b = best[r.problem]
        ratios[r.problem, r.solver] = r.t / b if math.isfinite(r.t) else math.inf
    return ratios


@dataclass(frozen=True)
class ProfileCurve:
    solver: str
    # (alpha, rho(alpha)) with alpha increasing
    points: tuple

    @property
    def alphas(self) -> np.ndarray:
        return np.array([a for a, _ in self.points])

    @property
    def rhos(self) -> np.ndarray:
        return np.array([r for _, r in self.points])

    def rho(self, alpha: float) -> float:
        """Right-continuous step value at ``alpha`` (0 below the first point)."""
        value = 0.0
        for a, r in self.points:
            if a <= alpha:
                value = r
            else:
                break
        return value


def performance_profiles(results, alphas=None) -> list[ProfileCurve]:
    """Performance-profile curves, one per solver (sorted by solver name).

    Every problem that appears in ``results`` counts in the denominator,
    including those no solver solved.  A missing (problem, solver) cell
    counts as a failure.  By default the grid is ``1`` plus every finite
    realised ratio, i.e. exactly the jump points of the step functions.
    """
    results = list(results)
    ratios = performance_ratios(results)
    problems = sorted({r.problem for r in results})
    solvers = sorted({r.solver for r in results})
    if alphas is None:
        grid = sorted({1.0} | {v for v in ratios.values() if math.isfinite(v)})
    else:
        grid = sorted(float(a) for a in alphas)
        if not grid or grid[0] < 1.0:
            raise ValueError("alpha grid must be non-empty with values >= 1")
    n_p = len(problems)
    curves = []
    for s in solvers:
        rs = [ratios.get((p, s), math.inf) for p in problems]
        points = tuple((a, sum(1 for r in rs if r <= a) / n_p) for a in grid)
        curves.append(ProfileCurve(s, points))
    return curves


def solved_fraction(results, solver) -> float:
    rows = [r for r in results if r.solver == solver]
    if not rows:
        raise ValueError(f"no results for solver {solver!r}")
    return sum(r.solved for r in rows) / len(rows)
