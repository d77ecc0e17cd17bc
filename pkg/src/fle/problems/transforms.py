"""Objective transforms: multiplicative noise, l1 penalties and minimax."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace

import numpy as np

from .objectives import MaxOf
from .problem import Problem

PENALTY_TARGETS = ("LI", "LE", "B", "HalfB")


@dataclass(frozen=True)
class Noisy:
    eps: float = 1e-3
    seed: int = 0
    # draw a new realisation on every call instead of keying on x
    fresh: bool = False

    def __post_init__(self):
        if self.eps < 0:
            raise ValueError("noise level must be nonnegative")


@dataclass(frozen=True)
class L1Penalty:
    weight: float = 100.0
    target: str = "LI"

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError("penalty weight must be positive")
        if self.target not in PENALTY_TARGETS:
            raise ValueError(f"target must be one of {PENALTY_TARGETS}")


@dataclass(frozen=True)
class Minimax:
    partials: tuple


class NoisyObjective:
    """``phi(x) (1 + xi(x))`` with ``xi ~ U(-eps, eps)``.

    In keyed mode ``xi`` comes from a Philox stream whose key is derived from
    ``(seed, x)``, so repeated evaluations at the same point agree.
    """

    def __init__(self, base, eps, seed=0, fresh=False):
        self.base = base
        self.eps = float(eps)
        self.seed = int(seed)
        self.fresh = fresh
        self._stream = np.random.Generator(np.random.Philox(self.seed)) if fresh else None

    def noise(self, x):
        if self.eps == 0.0:
            return 0.0
        if self.fresh:
            return float(self._stream.uniform(-self.eps, self.eps))
        x = np.ascontiguousarray(x, dtype=float)
        digest = hashlib.blake2b(x.tobytes(), digest_size=16,
                                 key=self.seed.to_bytes(8, "little", signed=True)).digest()
        key = np.frombuffer(digest, dtype=np.uint64)
        return float(np.random.Generator(np.random.Philox(key=key)).uniform(-self.eps, self.eps))

    def __call__(self, x):
        return float(self.base(x) * (1.0 + self.noise(x)))


class PenalizedObjective:
    """``phi(x) + weight * (sum of l1 violations of the penalised rows)``."""

    def __init__(self, base, weight, A_eq, b_eq, A_in, lower, upper):
        self.base = base
        self.weight = float(weight)
        self.A_eq, self.b_eq = A_eq, b_eq
        self.A_in, self.lower, self.upper = A_in, lower, upper

    def penalty(self, x):
        x = np.asarray(x, dtype=float)
        total = float(np.sum(np.abs(self.A_eq @ x - self.b_eq)))
        if self.A_in.shape[0]:
            ax = self.A_in @ x
            with np.errstate(invalid="ignore"):
                below = np.where(np.isfinite(self.lower), self.lower - ax, 0.0)
                above = np.where(np.isfinite(self.upper), ax - self.upper, 0.0)
            total += float(np.sum(np.maximum(below, 0.0)) + np.sum(np.maximum(above, 0.0)))
        return total

    def __call__(self, x):
        return float(self.base(x) + self.weight * self.penalty(x))


def penalized_rows(region, target):
    """``(equality_rows, inequality_rows)`` moved into the objective."""
    bounds = region.bound_rows()
    if target == "LE":
        return np.arange(region.m), np.zeros(0, dtype=int)
    if target == "LI":
        return np.zeros(0, dtype=int), np.setdiff1d(np.arange(region.m_I), bounds)
    if target == "B":
        return np.zeros(0, dtype=int), bounds
    return np.zeros(0, dtype=int), bounds[:math.ceil(len(bounds) / 2)]


def apply_transform(problem: Problem, transform) -> Problem:
    """New problem with ``transform`` applied (``None`` returns ``problem``)."""
    if transform is None:
        return problem
    if isinstance(transform, Noisy):
        obj = NoisyObjective(problem.objective, transform.eps, transform.seed,
                             transform.fresh)
        return replace(problem, name=f"{problem.name}~noisy", objective=obj,
                       gradient=None, smooth=False,
                       meta={**problem.meta, "transform": transform})
    if isinstance(transform, L1Penalty):
        region = problem.region
        eq, ineq = penalized_rows(region, transform.target)
        if len(eq) + len(ineq) == 0:
            raise ValueError(f"{problem.name} has no {transform.target} constraints to penalize")
        obj = PenalizedObjective(problem.objective, transform.weight,
                                 region.A[eq], region.b[eq], region.A_I[ineq],
                                 region.lower[ineq], region.upper[ineq])
        reduced = region.drop_rows(equality=eq, inequality=ineq)
        return Problem(f"{problem.name}~l1{transform.target}", obj, reduced,
                       problem.x0, None, None, smooth=False, convex=problem.convex,
                       meta={**problem.meta, "transform": transform})
    if isinstance(transform, Minimax):
        return replace(problem, name=f"{problem.name}~minimax",
                       objective=MaxOf(transform.partials), gradient=None,
                       smooth=False, f_L=None,
                       meta={**problem.meta, "transform": transform})
    raise TypeError(f"unknown transform {transform!r}")


def evaluate(problem: Problem, x, transform=None) -> float:
    return apply_transform(problem, transform).objective(x)


def parse_transform(spec: str | None, seed=0):
    """Parse ``none``, ``noisy:EPS`` or ``l1:WEIGHT:TARGET``."""
    if spec is None or spec == "none":
        return None
    kind, _, rest = spec.partition(":")
    if kind == "noisy":
        return Noisy(float(rest) if rest else 1e-3, seed)
    if kind == "l1":
        parts = rest.split(":") if rest else []
        weight = float(parts[0]) if parts and parts[0] else 100.0
        target = parts[1] if len(parts) > 1 else "LI"
        return L1Penalty(weight, target)
    raise ValueError(f"unknown transform spec {spec!r}")
