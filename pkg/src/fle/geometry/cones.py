"""Approximate active sets, normal/tangent cone generators and polling sets.

All cone computations happen in the reduced ``(n - m)``-dimensional space
parameterised by the columns of ``W``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .region import FEAS_TOL, FeasibleRegion, InfeasiblePointError

ACTIVE_TIE_TOL = 1e-12
POLAR_TOL = 1e-10


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class ActiveSet:
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    xi: float

    @property
    def empty(self) -> bool:
        return not self.upper and not self.lower


@dataclass(frozen=True, eq=False)
class ConeGenerators:
    """Tangent cone as ``span(lineality) + cone(pointed)``.

    Both arrays hold one unit vector per row.
    """

    lineality: np.ndarray
    pointed: np.ndarray

    @property
    def dim(self) -> int:
        return self.lineality.shape[1]

    @property
    def empty(self) -> bool:
        return self.lineality.shape[0] == 0 and self.pointed.shape[0] == 0

    def directions(self) -> np.ndarray:
        """A positive spanning set of the cone (``±`` lineality plus pointed)."""
        return np.vstack([self.lineality, -self.lineality, self.pointed])


def approx_active_sets(region: FeasibleRegion, x, xi: float) -> ActiveSet:
    """Inequality rows within ``xi * ||W^T A_I^T e_i||`` of a finite bound."""
    if xi <= 0:
        raise ValueError("xi must be positive")
    viol = region.violation(x)
    if viol > FEAS_TOL:
        raise InfeasiblePointError(f"point violates the constraints by {viol:.3e}")
    xt = region.reduce(x)
    base = region.A_I @ region.xbar
    ax = base + region.C @ xt
    thresh = xi * region.row_norms + ACTIVE_TIE_TOL
    with np.errstate(invalid="ignore"):
        up = np.isfinite(region.upper) & (np.abs(region.upper - ax) <= thresh)
        lo = np.isfinite(region.lower) & (np.abs(region.lower - ax) <= thresh)
    return ActiveSet(tuple(np.flatnonzero(up).tolist()),
                     tuple(np.flatnonzero(lo).tolist()), float(xi))


def normal_cone_generators(region: FeasibleRegion, active: ActiveSet) -> np.ndarray:
    """Rows ``C_i`` for upper-active and ``-C_i`` for lower-active constraints."""
    C = region.C
    gens = [C[i] for i in active.upper] + [-C[i] for i in active.lower]
    if not gens:
        return np.zeros((0, region.dim))
    return np.array(gens)


def _span_bases(N, d):
    """Orthonormal bases of ``span(rows of N)`` and its orthogonal complement."""
    if N.shape[0] == 0:
        return np.zeros((d, 0)), np.eye(d)
    _, sing, vt = np.linalg.svd(N)
    tol = max(N.shape) * np.finfo(float).eps * sing[0]
    r = int(np.sum(sing > tol))
    return vt[:r].T, vt[r:].T


def _independent_rows(M, r):
    chosen: list[int] = []
    for i in range(M.shape[0]):
        cand = chosen + [i]
        if np.linalg.matrix_rank(M[cand]) == len(cand):
            chosen = cand
            if len(chosen) == r:
                break
    return chosen


def extreme_rays(M, tol=POLAR_TOL) -> np.ndarray:
    """Extreme rays of the pointed cone ``{c : M c <= 0}`` (double description).

    ``M`` must have full column rank.  Rays are returned as unit rows.
    """
    M = np.asarray(M, dtype=float)
    k, r = M.shape
    if r == 0:
        return np.zeros((0, 0))
    if np.linalg.matrix_rank(M) < r:
        raise ConeError("constraint matrix of a pointed cone must have full column rank")
    basis = _independent_rows(M, r)
    R = -np.linalg.inv(M[basis]).T
    R /= np.linalg.norm(R, axis=1, keepdims=True)
    rays = [row for row in R]
    zeros = [frozenset(basis[:j] + basis[j + 1:]) for j in range(r)]
    processed = set(basis)

    for i in range(k):
        if i in processed:
            continue
        a = M[i]
        row_tol = tol * np.linalg.norm(a)
        vals = np.array([ray @ a for ray in rays])
        pos = [j for j, v in enumerate(vals) if v > row_tol]
        neg = [j for j, v in enumerate(vals) if v < -row_tol]
        zer = [j for j, v in enumerate(vals) if abs(v) <= row_tol]
        new_rays = [rays[j] for j in neg] + [rays[j] for j in zer]
        new_zeros = [zeros[j] for j in neg] + [zeros[j] | {i} for j in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < r - 2:
                    continue
                if r > 2 and np.linalg.matrix_rank(M[sorted(common)]) != r - 2:
                    continue
                ray = vals[p] * rays[q] - vals[q] * rays[p]
                ray /= np.linalg.norm(ray)
                new_rays.append(ray)
                new_zeros.append(common | {i})
        rays, zeros = new_rays, new_zeros
        processed.add(i)
        if not rays:
            break

    if not rays:
        return np.zeros((0, r))
    out: list[np.ndarray] = []
    for ray in rays:
        if all(np.linalg.norm(ray - other) > 1e-9 for other in out):
            out.append(ray)
    return np.array(out)


def tangent_cone_generators(normals) -> ConeGenerators:
    """Generators of the polar of ``cone(normals)``.

    ``normals`` is a ``(k, d)`` array; pass a ``(0, d)`` array for an empty
    normal cone.
    """
    N = np.atleast_2d(np.asarray(normals, dtype=float))
    d = N.shape[1]
    if N.shape[0] and np.any(np.linalg.norm(N, axis=1) == 0.0):
        raise ConeError("zero vector among normal cone generators")
    span, lineality = _span_bases(N, d)
    if span.shape[1] == 0:
        return ConeGenerators(lineality.T.copy(), np.zeros((0, d)))
    coords = extreme_rays(N @ span)
    pointed = coords @ span.T if coords.size else np.zeros((0, d))
    if pointed.shape[0]:
        pointed /= np.linalg.norm(pointed, axis=1, keepdims=True)
    return ConeGenerators(lineality.T.copy(), pointed)


def sample_polling_directions(cone: ConeGenerators, count_fraction: float,
                              rng: np.random.Generator) -> np.ndarray:
    """Random polling set drawn from the cone generators.

    The lineality part contributes one uniformly random unit direction and its
    negative; ``ceil(count_fraction * #pointed)`` pointed generators are drawn
    without replacement.  The result is shuffled and has one unit vector per
    row.
    """
    if not 0 < count_fraction <= 1:
        raise ValueError("count_fraction must lie in (0, 1]")
    dirs = []
    L = cone.lineality
    if L.shape[0]:
        c = rng.standard_normal(L.shape[0])
        v = c @ L
        v /= np.linalg.norm(v)
        dirs.extend([v, -v])
    P = cone.pointed
    if P.shape[0]:
        count = math.ceil(count_fraction * P.shape[0])
        picked = rng.choice(P.shape[0], size=count, replace=False)
        dirs.extend(P[picked])
    if not dirs:
        return np.zeros((0, cone.dim))
    dirs = np.array(dirs)
    return dirs[rng.permutation(len(dirs))]
