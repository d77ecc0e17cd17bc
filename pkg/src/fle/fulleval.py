"""Full-Eval iterations: finite-difference quasi-Newton steps with a projected,
backtracking line search.

Gradients and the inverse-Hessian approximation ``H`` live in the reduced
space spanned by the columns of ``W``, so the search direction
``-W H W^T g`` never leaves the affine hull of the equality constraints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import FeasibleRegion, project

FULL = "full"
LOW = "low"

SQRT_EPS = math.sqrt(np.finfo(float).eps)


class FiniteDifferenceError(ArithmeticError):
    """Objective returned a non-finite value at a finite-difference probe."""

    def __init__(self, index, value):
        super().__init__(f"non-finite objective value {value!r} at probe {index}")
        self.index = index
        self.value = value


@dataclass(frozen=True)
class LineSearchParams:
    beta_bar: float = 1.0
    tau: float = 0.5
    c: float = 1e-4
    gamma: float = 1.0
    eps_c: float = 1e-10
    h: float = SQRT_EPS
    u_g_prime: float = 1.0
    omega: float = 0.5
    j_max: int = 20
    fd_respect_bounds: bool = False
    # restart H = I when the quasi-Newton direction fails the angle test
    qn_reset: bool = True
    kappa: float = 1e-8

    def __post_init__(self):
        if not 0 < self.beta_bar:
            raise ValueError("beta_bar must be positive")
        if not 0 < self.tau < 1:
            raise ValueError("tau must lie in (0, 1)")
        if not 0 < self.c < 1:
            raise ValueError("c must lie in (0, 1)")
        if not 0 < self.eps_c < 1:
            raise ValueError("eps_c must lie in (0, 1)")
        if not 0 < self.omega < 1:
            raise ValueError("omega must lie in (0, 1)")
        if self.gamma <= 0 or self.h <= 0 or self.u_g_prime <= 0:
            raise ValueError("gamma, h and u_g_prime must be positive")
        if not 0 <= self.kappa <= 1:
            raise ValueError("kappa must lie in [0, 1]")
        if self.j_max < 0:
            raise ValueError("j_max must be nonnegative")


@dataclass
class FullEvalState:
    """Information carried from one Full-Eval iteration to the next."""

    H: np.ndarray
    x_prev: np.ndarray | None = None
    g_prev: np.ndarray | None = None
    nb: int = 0
    initialized: bool = False
    # True while the next update should first rescale H to (y's / y'y) I
    rescale_pending: bool = False

    @classmethod
    def initial(cls, dim: int) -> "FullEvalState":
        return cls(H=np.eye(dim))


def _probe_ok(region, point):
    return region.violation(point) <= 1e-12


def fd_reduced_gradient(f, region: FeasibleRegion, x, h, fx=None,
                        respect_bounds=False):
    """Forward differences of ``f`` along the columns of ``W``.

    Returns ``(g_r, evals)``.  ``fx`` is ``f(x)``; it is evaluated (and
    counted) when not supplied.  With ``respect_bounds`` a probe that leaves
    the inequality constraints is replaced by a backward difference.
    """
    x = np.asarray(x, dtype=float)
    evals = 0
    if fx is None:
        fx = f(x)
        evals += 1
    g = np.empty(region.dim)
    for i in range(region.dim):
        w = region.W[:, i]
        step = h
        probe = x + h * w
        if respect_bounds and region.m_I and not _probe_ok(region, probe):
            step = -h
            probe = x - h * w
        val = f(probe)
        evals += 1
        if not np.isfinite(val):
            raise FiniteDifferenceError(i, val)
        g[i] = (val - fx) / step
    return g, evals


def projected_step(region, x, g_r):
    """``P[x - W g_r] - x``: the criticality vector for gradient ``W g_r``."""
    return project(region, x - region.W @ g_r, start=x) - x


@dataclass
class CriticalityResult:
    h: float
    g_r: np.ndarray
    q: np.ndarray
    evals: int
    iterations: int
    # inner loop exhausted without meeting the accuracy test (near-stationary)
    converged: bool


def criticality_step(f, region, x, fx, h0, u_g_prime, omega, j_max, g_r=None,
                     respect_bounds=False) -> CriticalityResult:
    """Shrink the finite-difference parameter until ``h <= u_g' ||q^h||``."""
    evals = 0
    if g_r is None:
        g_r, evals = fd_reduced_gradient(f, region, x, h0, fx, respect_bounds)
    q = projected_step(region, x, g_r)
    q0_norm = float(np.linalg.norm(q))
    h = h0
    j = 0
    while h > u_g_prime * np.linalg.norm(q):
        if j >= j_max or q0_norm == 0.0:
            return CriticalityResult(h, g_r, q, evals, j, True)
        j += 1
        h = omega ** j * u_g_prime * q0_norm
        g_r, used = fd_reduced_gradient(f, region, x, h, fx, respect_bounds)
        evals += used
        q = projected_step(region, x, g_r)
    return CriticalityResult(h, g_r, q, evals, j, False)


def bfgs_update(H, s, y, eps_c=1e-10):
    """Inverse BFGS update; returns ``H`` untouched when ``s'y < eps_c |s||y|``."""
    sy = float(s @ y)
    if not sy >= eps_c * np.linalg.norm(s) * np.linalg.norm(y) or sy == 0.0:
        return H
    rho = 1.0 / sy
    V = np.eye(len(s)) - rho * np.outer(y, s)
    Hn = V.T @ H @ V + rho * np.outer(s, s)
    return 0.5 * (Hn + Hn.T)


def _search_direction(region, x, g_r, H):
    """``P[x - W H g_r] - x`` and its slope ``g^T d``."""
    target = project(region, x - region.W @ (H @ g_r), start=x)
    d = target - x
    return d, float(g_r @ (region.W.T @ d))


def _angle_ok(slope, q, d, kappa):
    return -slope >= kappa * np.linalg.norm(q) * np.linalg.norm(d) and slope < 0


@dataclass
class FullEvalOutcome:
    t_next: str
    x_next: np.ndarray
    f_next: float
    alpha_next: float
    state: FullEvalState
    evals: int
    success: bool
    beta: float | None = None
    # g^T (xbar_k - x_k), the estimated directional derivative
    slope: float | None = None
    direction: np.ndarray | None = None
    criticality_converged: bool = False
    line_search_exhausted: bool = False
    trials: list = field(default_factory=list)


def full_eval_iteration(state: FullEvalState, f, region: FeasibleRegion, x, fx,
                        alpha, params: LineSearchParams = LineSearchParams(),
                        switching=True, stop_on_criticality=True) -> FullEvalOutcome:
    """One Full-Eval iteration from the feasible point ``x`` with ``f(x) = fx``.

    With ``switching`` (the hybrid method) the line search gives up once
    ``beta < gamma * alpha`` and hands over to Low-Eval.  Without it
    (pure Full-Eval) backtracking continues down to ``1e-16 * beta_bar``.
    When the criticality step runs out of inner iterations the outcome is
    flagged ``criticality_converged``; unless ``stop_on_criticality`` is
    false, no step is attempted in that case.
    """
    x = np.asarray(x, dtype=float)
    g_r, evals = fd_reduced_gradient(f, region, x, params.h, fx,
                                     params.fd_respect_bounds)
    q = projected_step(region, x, g_r)
    if params.h > params.u_g_prime * np.linalg.norm(q):
        crit = criticality_step(f, region, x, fx, params.h, params.u_g_prime,
                                params.omega, params.j_max, g_r=g_r,
                                respect_bounds=params.fd_respect_bounds)
        evals += crit.evals
        g_r, q = crit.g_r, crit.q
        if crit.converged and stop_on_criticality:
            new_state = replace(state, x_prev=x.copy(), g_prev=g_r.copy(), nb=0,
                                initialized=True)
            return FullEvalOutcome(FULL, x, fx, alpha, new_state, evals, False,
                                   criticality_converged=True)

    H = state.H
    if state.initialized:
        s = region.W.T @ (x - state.x_prev)
        y = g_r - state.g_prev
        if state.rescale_pending:
            sy, yy = float(s @ y), float(y @ y)
            if yy > 0 and sy >= params.eps_c * np.linalg.norm(s) * np.linalg.norm(y):
                H = (sy / yy) * np.eye(region.dim)
        H = bfgs_update(H, s, y, params.eps_c)

    d, slope = _search_direction(region, x, g_r, H)
    reset = False
    if params.qn_reset and not _angle_ok(slope, q, d, params.kappa):
        H = np.eye(region.dim)
        d, slope = _search_direction(region, x, g_r, H)
        reset = True
    first = not state.initialized

    beta = params.beta_bar
    floor = params.gamma * alpha if switching else 1e-16 * params.beta_bar
    nb = 0
    trials = []
    accepted = None
    descent = np.linalg.norm(d) > np.finfo(float).eps * (1.0 + np.linalg.norm(x)) and slope < 0
    if descent:
        while beta >= floor:
            trial = x + beta * d
            ft = f(trial)
            evals += 1
            trials.append((beta, ft))
            # both forms of the Armijo test, so tiny decrements cannot pass
            # through rounding of fx + c beta slope
            dec = params.c * beta * slope
            if np.isfinite(ft) and fx - ft >= -dec and ft <= fx + dec:
                accepted = (trial, ft)
                break
            beta *= params.tau
            nb += 1

    success = accepted is not None
    new_state = FullEvalState(H=H, x_prev=x.copy(), g_prev=g_r.copy(), nb=nb,
                              initialized=True,
                              rescale_pending=(first or reset) and success)
    if success:
        x_next, f_next = accepted
        return FullEvalOutcome(FULL, x_next, f_next, alpha, new_state, evals, True,
                               beta=beta, slope=slope, direction=d, trials=trials)
    return FullEvalOutcome(LOW, x, fx, alpha, new_state, evals, False,
                           slope=slope, direction=d, trials=trials,
                           line_search_exhausted=True)
