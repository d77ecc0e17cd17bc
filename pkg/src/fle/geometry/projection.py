"""Euclidean projection onto a :class:`FeasibleRegion`.

The projection is a least-distance QP.  Writing ``y = xbar + W t`` turns it
into ``min ||t - t0||^2`` over ``{t : lower' <= C t <= upper'}`` with
``C = A_I W``, which we solve with a primal active-set method.
"""

from __future__ import annotations

import numpy as np

from .region import FeasibleRegion


# active-set iterations allowed per constraint row
MAX_ITER_FACTOR = 10


class ProjectionError(RuntimeError):
    """Active-set iteration cap hit; ``fallback`` is the best feasible point."""

    def __init__(self, message, fallback):
        super().__init__(message)
        self.fallback = fallback


def _one_sided(region: FeasibleRegion):
    """Stack the finite bounds as ``G t <= h`` in reduced coordinates."""
    shift = region.A_I @ region.xbar
    up = np.flatnonzero(np.isfinite(region.upper))
    lo = np.flatnonzero(np.isfinite(region.lower))
    G = np.vstack([region.C[up], -region.C[lo]])
    h = np.concatenate([region.upper[up] - shift[up], -(region.lower[lo] - shift[lo])])
    return G, h


def project(region: FeasibleRegion, z, start=None):
    """Closest feasible point to ``z``.

    ``start`` is an optional feasible point used to warm start the
    active-set iteration (the current iterate is a good choice).
    """
    return project_with_active(region, z, start)[0]


def project_with_active(region: FeasibleRegion, z, start=None):
    """Projection plus the list of one-sided constraints active at the answer.

    Constraint ``j`` of the returned working set refers to the stacking used
    by :func:`_one_sided` (finite upper bounds first, then finite lower
    bounds).
    """
    z = np.asarray(z, dtype=float)
    if region.box_index is not None:
        x = z.copy()
        cols = region.box_index
        x[cols] = np.clip(z[cols], region.lower, region.upper)
        return x, None

    t0 = region.reduce(z)
    if region.m_I == 0:
        return region.lift(t0), []

    G, h = _one_sided(region)
    scale = 1.0 + np.linalg.norm(t0)
    tol = 1e-12 * scale

    if region.violation(z) <= 1e-14 * scale:
        return z.copy(), []
    if start is None:
        t = np.zeros(region.dim)
    else:
        t = region.reduce(start)
    slack0 = h - G @ t
    if np.any(slack0 < -1e-9 * scale):
        t = np.zeros(region.dim)

    working: list[int] = []
    cap = MAX_ITER_FACTOR * (region.m + region.m_I)
    for _ in range(cap):
        r = t0 - t
        if working:
            Gw = G[working]
            lam = np.linalg.lstsq(Gw @ Gw.T, Gw @ r, rcond=None)[0]
            p = r - Gw.T @ lam
        else:
            lam = np.zeros(0)
            p = r
        if np.linalg.norm(p) <= tol:
            if not working:
                return region.lift(t), working
            # KKT: t - t0 + Gw^T mu = 0, mu >= 0
            mu = np.linalg.lstsq(G[working].T, r, rcond=None)[0]
            k = int(np.argmin(mu))
            if mu[k] >= -1e-12 * scale:
                return region.lift(t), working
            working.pop(k)
            continue
        Gp = G @ p
        slack = np.maximum(h - G @ t, 0.0)
        step, block = 1.0, -1
        for j in np.flatnonzero(Gp > 1e-14 * np.linalg.norm(p)):
            if j in working:
                continue
            s = slack[j] / Gp[j]
            if s < step:
                step, block = s, j
        t = t + step * p
        if block >= 0:
            working.append(int(block))
    raise ProjectionError(
        f"projection did not converge within {cap} active-set iterations",
        region.lift(t))
