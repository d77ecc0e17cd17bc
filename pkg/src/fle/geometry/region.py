"""Feasible polyhedron ``{x : A x = b, lower <= A_I x <= upper}``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

FEAS_TOL = 1e-10
ORTHO_TOL = 1e-12


class RegionError(ValueError):
    """Raised when constraint data do not describe a valid region."""


class InfeasiblePointError(ValueError):
    """Raised when a point that must be feasible is not."""


def null_space_basis(A, n=None):
    """Orthonormal basis ``W`` of the null space of ``A``.

    ``A`` may have zero rows, in which case ``n`` must be supplied (or ``A``
    must have shape ``(0, n)``) and the identity is returned.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        if n is None:
            n = A.shape[1]
        return np.eye(n)
    m, n = A.shape
    _, sing, vt = np.linalg.svd(A)
    tol = max(m, n) * np.finfo(float).eps * (sing[0] if sing.size else 0.0)
    rank = int(np.sum(sing > tol))
    if rank < m:
        raise RegionError(
            f"equality matrix is rank deficient: rank {rank} < {m} rows")
    return vt[m:].T.copy()


def _as_matrix(M, n):
    if M is None:
        return np.zeros((0, n))
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return np.zeros((0, n))
    return np.atleast_2d(M)


def _as_vector(v, size, fill):
    if v is None:
        return np.full(size, fill)
    return np.asarray(v, dtype=float).reshape(size)


@dataclass(frozen=True, eq=False)
class FeasibleRegion:
    """The polyhedron ``A x = b``, ``lower <= A_I x <= upper``.

    Use :meth:`build` rather than the raw constructor; it computes the
    null-space basis ``W``, finds a reference point ``xbar`` when none is
    given and checks every structural assumption the solvers rely on.
    """

    A: np.ndarray
    b: np.ndarray
    A_I: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    W: np.ndarray
    xbar: np.ndarray
    # rows of A_I W and their norms, cached for active-set tests
    C: np.ndarray = field(repr=False)
    row_norms: np.ndarray = field(repr=False)
    box_index: np.ndarray | None = field(repr=False, default=None)

    @classmethod
    def build(cls, n, A=None, b=None, A_I=None, lower=None, upper=None,
              xbar=None) -> "FeasibleRegion":
        A = _as_matrix(A, n)
        A_I = _as_matrix(A_I, n)
        m, m_I = A.shape[0], A_I.shape[0]
        if A.shape[1] != n or A_I.shape[1] != n:
            raise RegionError(f"constraint matrices must have {n} columns")
        b = _as_vector(b, m, 0.0)
        lower = _as_vector(lower, m_I, -np.inf)
        upper = _as_vector(upper, m_I, np.inf)
        if np.any(lower >= upper):
            bad = np.flatnonzero(lower >= upper)
            raise RegionError(f"lower < upper violated on rows {bad.tolist()}")
        if np.any(np.isposinf(lower)) or np.any(np.isneginf(upper)):
            raise RegionError("lower bounds cannot be +inf, upper bounds cannot be -inf")

        W = null_space_basis(A, n)
        C = A_I @ W
        row_norms = np.linalg.norm(C, axis=1)
        if np.any(row_norms <= ORTHO_TOL):
            bad = np.flatnonzero(row_norms <= ORTHO_TOL)
            raise RegionError(
                f"inequality rows {bad.tolist()} vanish on the equality null space")

        if xbar is None:
            xbar = _find_feasible_point(A, b, A_I, lower, upper)
        xbar = np.asarray(xbar, dtype=float).reshape(n)
        region = cls(A, b, A_I, lower, upper, W, xbar, C, row_norms,
                     _detect_box(A, A_I))
        viol = region.violation(xbar)
        if viol > FEAS_TOL:
            raise InfeasiblePointError(
                f"reference point violates the constraints by {viol:.3e}")
        return region

    @classmethod
    def box(cls, lower, upper, xbar=None) -> "FeasibleRegion":
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        n = lower.size
        if xbar is None:
            xbar = np.clip(np.zeros(n), lower, upper)
        return cls.build(n, A_I=np.eye(n), lower=lower, upper=upper, xbar=xbar)

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def m_I(self) -> int:
        return self.A_I.shape[0]

    @property
    def dim(self) -> int:
        """Dimension ``n - m`` of the reduced space."""
        return self.W.shape[1]

    def violation(self, x) -> float:
        """Largest constraint violation at ``x`` (zero when feasible)."""
        x = np.asarray(x, dtype=float)
        viol = 0.0
        if self.m:
            viol = float(np.max(np.abs(self.A @ x - self.b)))
        if self.m_I:
            ax = self.A_I @ x
            with np.errstate(invalid="ignore"):
                lo = np.where(np.isfinite(self.lower), self.lower - ax, 0.0)
                hi = np.where(np.isfinite(self.upper), ax - self.upper, 0.0)
            viol = max(viol, float(np.max(lo)), float(np.max(hi)))
        return max(viol, 0.0)

    def is_feasible(self, x, tol=FEAS_TOL) -> bool:
        return self.violation(x) <= tol

    def reduce(self, x):
        """Reduced coordinates ``W^T (x - xbar)``."""
        return self.W.T @ (np.asarray(x, dtype=float) - self.xbar)

    def lift(self, t):
        return self.xbar + self.W @ t

    def drop_rows(self, equality=(), inequality=()) -> "FeasibleRegion":
        """Region with the listed constraint rows removed.

        The reference point is kept, so the result contains ``self``.
        """
        keep_e = np.setdiff1d(np.arange(self.m), np.asarray(equality, dtype=int))
        keep_i = np.setdiff1d(np.arange(self.m_I), np.asarray(inequality, dtype=int))
        return FeasibleRegion.build(
            self.n, self.A[keep_e], self.b[keep_e], self.A_I[keep_i],
            self.lower[keep_i], self.upper[keep_i], xbar=self.xbar)

    def bound_rows(self) -> np.ndarray:
        """Indices of inequality rows that are simple variable bounds."""
        nnz = np.count_nonzero(self.A_I, axis=1)
        return np.flatnonzero(nnz == 1)


def _detect_box(A, A_I):
    """Column index per row when the region is a pure (partial) box."""
    if A.shape[0] or A_I.shape[0] == 0:
        return None
    if np.any(np.count_nonzero(A_I, axis=1) != 1):
        return None
    cols = np.argmax(A_I != 0, axis=1)
    if len(np.unique(cols)) != len(cols):
        return None
    if not np.allclose(A_I[np.arange(len(cols)), cols], 1.0, rtol=0, atol=0):
        return None
    return cols


def _find_feasible_point(A, b, A_I, lower, upper):
    """Feasible point with the largest slack on the inequality rows, via LP."""
    n = A.shape[1]
    # variables (x, s): maximise s subject to lower + s <= A_I x <= upper - s, s <= 1
    rows, rhs = [], []
    for i in range(A_I.shape[0]):
        if np.isfinite(upper[i]):
            rows.append(np.append(A_I[i], 1.0))
            rhs.append(upper[i])
        if np.isfinite(lower[i]):
            rows.append(np.append(-A_I[i], 1.0))
            rhs.append(-lower[i])
    A_ub = np.array(rows) if rows else None
    b_ub = np.array(rhs) if rhs else None
    A_eq = np.hstack([A, np.zeros((A.shape[0], 1))]) if A.shape[0] else None
    res = linprog(np.append(np.zeros(n), -1.0), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq,
                  b_eq=b if A.shape[0] else None,
                  bounds=[(None, None)] * n + [(0.0, 1.0)], method="highs")
    if res.status != 0:
        raise RegionError(f"region appears empty ({res.message})")
    x = res.x[:n]
    if A.shape[0]:
        x = x - np.linalg.lstsq(A, A @ x - b, rcond=None)[0]
    return x
