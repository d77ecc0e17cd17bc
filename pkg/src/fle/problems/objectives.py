"""Objective functions used by the catalog, with analytic gradients where smooth.

Every objective is a small picklable class so problems can be shipped to
worker processes.  ``OBJECTIVES`` maps registry names (used by problem
files) to instances.
"""

from __future__ import annotations

import math

import numpy as np


class Quadratic:
    """``0.5 x'Qx + c'x + const``."""

    def __init__(self, Q, c, const=0.0):
        self.Q = np.asarray(Q, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.const = float(const)
        self.n = self.c.size

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.Q @ x + self.c @ x + self.const)

    def gradient(self, x):
        return self.Q @ np.asarray(x, dtype=float) + self.c

    def lipschitz(self):
        return float(np.max(np.abs(np.linalg.eigvalsh(self.Q))))


class LeastSquares:
    """``||M x - rhs||^2``."""

    def __init__(self, M, rhs):
        self.M = np.asarray(M, dtype=float)
        self.rhs = np.asarray(rhs, dtype=float)
        self.n = self.M.shape[1]

    def __call__(self, x):
        r = self.M @ np.asarray(x, dtype=float) - self.rhs
        return float(r @ r)

    def gradient(self, x):
        return 2.0 * self.M.T @ (self.M @ np.asarray(x, dtype=float) - self.rhs)

    def lipschitz(self):
        return float(2.0 * np.linalg.norm(self.M, 2) ** 2)


class Linear:
    def __init__(self, c, const=0.0):
        self.c = np.asarray(c, dtype=float)
        self.const = float(const)
        self.n = self.c.size

    def __call__(self, x):
        return float(self.c @ np.asarray(x, dtype=float) + self.const)

    def gradient(self, x):
        return self.c.copy()

    def lipschitz(self):
        return 0.0


class HS5:
    n = 2

    def __call__(self, x):
        x1, x2 = x
        return float(math.sin(x1 + x2) + (x1 - x2) ** 2 - 1.5 * x1 + 2.5 * x2 + 1.0)

    def gradient(self, x):
        x1, x2 = x
        cs = math.cos(x1 + x2)
        return np.array([cs + 2 * (x1 - x2) - 1.5, cs - 2 * (x1 - x2) + 2.5])


class HS24:
    n = 2
    _scale = 27.0 * math.sqrt(3.0)

    def __call__(self, x):
        x1, x2 = x
        return float(((x1 - 3.0) ** 2 - 9.0) * x2 ** 3 / self._scale)

    def gradient(self, x):
        x1, x2 = x
        return np.array([2.0 * (x1 - 3.0) * x2 ** 3,
                         3.0 * ((x1 - 3.0) ** 2 - 9.0) * x2 ** 2]) / self._scale


class MaxOf:
    """Pointwise maximum of partial functions (minimax objective)."""

    def __init__(self, partials):
        self.partials = list(partials)

    def __call__(self, x):
        return float(max(p(x) for p in self.partials))

    def values(self, x):
        return np.array([p(x) for p in self.partials])


class _Fn:
    """Named scalar partial function; keeps lambdas out of pickled objects."""

    def __init__(self, name, *args):
        self.name = name
        self.args = args

    def __call__(self, x):
        return float(getattr(self, "_" + self.name)(np.asarray(x, dtype=float), *self.args))

    @staticmethod
    def _mad1_quad(x):
        return x[0] ** 2 + x[1] ** 2 + x[0] * x[1] - 1.0

    @staticmethod
    def _sin0(x):
        return math.sin(x[0])

    @staticmethod
    def _negcos1(x):
        return -math.cos(x[1])

    @staticmethod
    def _neg_dist(x, i, j):
        return -math.hypot(x[2 * i] - x[2 * j], x[2 * i + 1] - x[2 * j + 1])


def mad1():
    return MaxOf([_Fn("mad1_quad"), _Fn("sin0"), _Fn("negcos1")])


def pentagon():
    return MaxOf([_Fn("neg_dist", 0, 1), _Fn("neg_dist", 1, 2), _Fn("neg_dist", 2, 0)])


LSQFIT_A = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
LSQFIT_B = np.array([0.25, 0.3, 0.625, 0.701, 1.0])


def lsqfit():
    return LeastSquares(np.column_stack([LSQFIT_A, np.ones(5)]), LSQFIT_B)


def hs21():
    return Quadratic(np.diag([0.02, 2.0]), np.zeros(2), -100.0)


def hs35():
    Q = np.array([[4.0, 2.0, 2.0], [2.0, 4.0, 0.0], [2.0, 0.0, 2.0]])
    return Quadratic(Q, [-8.0, -6.0, -4.0], 9.0)


def hs76():
    Q = np.array([[2.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, 0.0],
                  [-1.0, 0.0, 2.0, 1.0], [0.0, 0.0, 1.0, 1.0]])
    return Quadratic(Q, [-1.0, -3.0, 1.0, -1.0])


def hs28():
    Q = 2.0 * np.array([[1.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 1.0]])
    return Quadratic(Q, np.zeros(3))


def hs48():
    # (x1-1)^2 + (x2-x3)^2 + (x4-x5)^2
    M = np.array([[1, 0, 0, 0, 0], [0, 1, -1, 0, 0], [0, 0, 0, 1, -1.0]])
    return LeastSquares(M, [1.0, 0.0, 0.0])


def hs51():
    # (x1-x2)^2 + (x2+x3-2)^2 + (x4-1)^2 + (x5-1)^2
    M = np.array([[1, -1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1.0]])
    return LeastSquares(M, [0.0, 2.0, 1.0, 1.0])


def hs3():
    Q = 2e-5 * np.array([[1.0, -1.0], [-1.0, 1.0]])
    return Quadratic(Q, [0.0, 1.0])


def simpllpa():
    return Linear([2.0, 3.0])


def cvxbqp1(n=10):
    # sum_i 0.5 i (x_i + x_{(2i-1) mod n + 1} + x_{(3i-1) mod n + 1})^2
    rows = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in (i, (2 * i - 1) % n + 1, (3 * i - 1) % n + 1):
            rows[i - 1, j - 1] += 1.0
    Q = rows.T @ np.diag(np.arange(1, n + 1, dtype=float)) @ rows
    return Quadratic(Q, np.zeros(n))


def qp_mixed_8():
    Q = np.diag(np.arange(1, 9) / 2.0) + np.ones((8, 8)) / 8.0
    c = np.array([(-1) ** i * i / 4.0 for i in range(1, 9)])
    return Quadratic(Q, c)


def tridiagonal(n, diag):
    return diag * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)


def qp_mixed_12():
    return Quadratic(tridiagonal(12, 3.0), -np.ones(12))


def qp_box_20():
    return Quadratic(tridiagonal(20, 4.0), -1.0 - (np.arange(1, 21) % 3))


_FACTORIES = {
    "lsqfit": lsqfit, "hs21": hs21, "hs24": HS24, "hs35": hs35, "hs76": hs76,
    "simpllpa": simpllpa, "hs28": hs28, "hs48": hs48, "hs51": hs51, "hs3": hs3,
    "hs5": HS5, "cvxbqp1": cvxbqp1, "qp_mixed_8": qp_mixed_8,
    "qp_mixed_12": qp_mixed_12, "qp_box_20": qp_box_20, "mad1": mad1,
    "pentagon": pentagon,
}

OBJECTIVES = tuple(sorted(_FACTORIES))


def get_objective(name):
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise KeyError(f"unknown objective {name!r}") from None
