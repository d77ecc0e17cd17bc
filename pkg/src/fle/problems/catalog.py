"""Built-in test problems.

Starting points are our own feasible choices (several classical starting
points are infeasible).  ``f_L`` values were computed offline with QP/LP
solvers, closed forms or grid search plus local refinement, and are
re-checked against those oracles in the test suite.
"""

from __future__ import annotations

import math

import numpy as np

from ..geometry import FeasibleRegion
from . import objectives as obj
from .problem import Problem
from .transforms import L1Penalty, apply_transform

INF = np.inf
SQRT3 = math.sqrt(3.0)


def _make(name, objective, n, x0, f_L, *, A=None, b=None, A_I=None, lower=None,
          upper=None, smooth=True, convex=True, source="", cls=""):
    region = FeasibleRegion.build(n, A, b, A_I, lower, upper, xbar=x0)
    grad = getattr(objective, "gradient", None) if smooth else None
    return Problem(name, objective, region, x0, f_L, grad, smooth, convex,
                   {"source": source, "class": cls, "objective": name})


def lsqfit():
    return _make("lsqfit", obj.lsqfit(), 2, [0.0, 0.0], 0.06757397575757579,
                 A_I=[[1.0, 1.0], [1.0, 0.0]], lower=[-INF, 0.0], upper=[0.85, INF],
                 source="least-squares line fit (5 points)", cls="LI")


def lsqfit_l1():
    base = lsqfit()
    p = apply_transform(base, L1Penalty(100.0, "LI"))
    p.name = "lsqfit_l1"
    # the penalty is exact for this weight, so the optimum is unchanged
    p.f_L = base.f_L
    p.meta = {**p.meta, "source": "lsqfit with its general inequality as an L1 penalty", "class": "nonsmooth-l1"}
    return p


def hs21():
    return _make("hs21", obj.hs21(), 2, [10.0, 10.0], -99.96,
                 A_I=[[10.0, -1.0], [1.0, 0.0], [0.0, 1.0]],
                 lower=[10.0, 2.0, -50.0], upper=[INF, 50.0, 50.0],
                 source="Hock-Schittkowski 21", cls="LI")


def hs24():
    return _make("hs24", obj.HS24(), 2, [1.0, 0.5], -1.0,
                 A_I=[[1.0 / SQRT3, -1.0], [1.0, SQRT3], [1.0, 0.0], [0.0, 1.0]],
                 lower=[0.0, 0.0, 0.0, 0.0], upper=[INF, 6.0, INF, INF],
                 convex=False, source="Hock-Schittkowski 24", cls="LI")


def hs35():
    return _make("hs35", obj.hs35(), 3, [0.5, 0.5, 0.5], 1.0 / 9.0,
                 A_I=np.vstack([[1.0, 1.0, 2.0], np.eye(3)]),
                 lower=[-INF, 0.0, 0.0, 0.0], upper=[3.0, INF, INF, INF],
                 source="Hock-Schittkowski 35", cls="LI")


def hs76():
    return _make("hs76", obj.hs76(), 4, [0.5, 0.5, 0.5, 0.5], -103.0 / 22.0,
                 A_I=np.vstack([[1.0, 2.0, 1.0, 1.0], [3.0, 1.0, 2.0, -1.0],
                                [0.0, 1.0, 4.0, 0.0], np.eye(4)]),
                 lower=[-INF, -INF, 1.5, 0.0, 0.0, 0.0, 0.0],
                 upper=[5.0, 4.0, INF, INF, INF, INF, INF],
                 source="Hock-Schittkowski 76", cls="LI")


def simpllpa():
    # Same shape as the CUTEr instance (n=2, 2 bounds, 2 LI); the data are ours.
    return _make("simpllpa", obj.simpllpa(), 2, [2.0, 2.0], 3.4,
                 A_I=[[1.0, 2.0], [3.0, 1.0], [1.0, 0.0], [0.0, 1.0]],
                 lower=[2.0, 3.0, 0.0, 0.0], upper=[INF, INF, INF, INF],
                 source="structure of CUTEr simpllpa; LP data chosen here", cls="LI")


def hs28():
    return _make("hs28", obj.hs28(), 3, [-4.0, 1.0, 1.0], 0.0,
                 A=[[1.0, 2.0, 3.0]], b=[1.0], source="Hock-Schittkowski 28", cls="LE")


def hs48():
    return _make("hs48", obj.hs48(), 5, [3.0, 5.0, -3.0, 2.0, -2.0], 0.0,
                 A=[[1.0, 1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 1.0, -2.0, -2.0]], b=[5.0, -3.0],
                 source="Hock-Schittkowski 48", cls="LE")


def hs51():
    return _make("hs51", obj.hs51(), 5, [2.5, 0.5, 2.0, -1.0, 0.5], 0.0,
                 A=[[1.0, 3.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0, -2.0],
                    [0.0, 1.0, 0.0, 0.0, -1.0]], b=[4.0, 0.0, 0.0],
                 source="Hock-Schittkowski 51", cls="LE")


def hs3():
    return _make("hs3", obj.hs3(), 2, [10.0, 1.0], 0.0,
                 A_I=[[0.0, 1.0]], lower=[0.0], upper=[INF],
                 source="Hock-Schittkowski 3", cls="B")


def hs5():
    return _make("hs5", obj.HS5(), 2, [0.0, 0.0], -SQRT3 / 2.0 - math.pi / 3.0,
                 A_I=np.eye(2), lower=[-1.5, -3.0], upper=[4.0, 3.0],
                 convex=False, source="Hock-Schittkowski 5", cls="B")


def cvxbqp1():
    n = 10
    return _make("cvxbqp1", obj.cvxbqp1(n), n, np.full(n, 0.5), 2.475,
                 A_I=np.eye(n), lower=np.full(n, 0.1), upper=np.full(n, 10.0),
                 source="CUTEr cvxbqp1 (n=10)", cls="B")


def qp_mixed_8():
    x0 = np.array([0.5] + [1.0 / 12.0] * 6 + [0.0])
    e = np.eye(8)
    return _make("qp_mixed_8", obj.qp_mixed_8(), 8, x0, -1.7743055555555431,
                 A=np.vstack([np.ones(8), e[0] - e[7]]), b=[1.0, 0.5],
                 A_I=np.vstack([[1.0, 2.0, 1.0, 0, 0, 0, 0, 0], e[3] - e[4], e]),
                 lower=[-INF, -0.5] + [-2.0] * 8, upper=[1.0, INF] + [2.0] * 8,
                 source="synthetic convex QP", cls="LE+LI")


def qp_mixed_12():
    n = 12
    odd = np.array([1.0 if i % 2 == 0 else 0.0 for i in range(n)])
    x0 = np.where(odd > 0, 1.0 / 6.0, 0.1)
    alt = np.zeros(n)
    alt[:3] = [1.0, -1.0, 1.0]
    return _make("qp_mixed_12", obj.qp_mixed_12(), n, x0, -1.8141945773524242,
                 A=[odd], b=[1.0], A_I=np.vstack([np.ones(n), alt, np.eye(n)]),
                 lower=[-INF, -1.0] + [0.0] * n, upper=[2.0, INF] + [1.0] * n,
                 source="synthetic convex QP", cls="LE+LI")


def qp_box_20():
    n = 20
    return _make("qp_box_20", obj.qp_box_20(), n, np.zeros(n), -17.07,
                 A_I=np.eye(n), lower=np.full(n, -1.0), upper=np.full(n, 0.6),
                 source="synthetic convex QP", cls="B")


def mad1():
    return _make("mad1", obj.mad1(), 2, [1.0, 2.0], -0.38965951609721006,
                 A_I=[[1.0, 1.0]], lower=[0.5], upper=[INF], smooth=False, convex=False,
                 source="minimax test set (MAD1, 3 partials)", cls="minimax")


def pentagon():
    A_I, lower, upper = [], [], []
    for i in range(3):
        for j in range(5):
            row = np.zeros(6)
            ang = 2.0 * math.pi * j / 5.0
            row[2 * i], row[2 * i + 1] = math.cos(ang), math.sin(ang)
            A_I.append(row)
            lower.append(-INF)
            upper.append(1.0)
    return _make("pentagon", obj.pentagon(), 6, [-0.5, 0.0, 0.0, -0.5, 0.4, 0.4],
                 -1.8596186959419727, A_I=np.array(A_I), lower=lower, upper=upper,
                 smooth=False, convex=False,
                 source="minimax test set (PENTAGON, 3 partials)", cls="minimax")


_BUILDERS = {f.__name__: f for f in (
    lsqfit, lsqfit_l1, hs21, hs24, hs35, hs76, simpllpa, hs28, hs48, hs51, hs3,
    hs5, cvxbqp1, qp_mixed_8, qp_mixed_12, qp_box_20, mad1, pentagon)}

NAMES = tuple(_BUILDERS)


def get_problem(name) -> Problem:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; known: {', '.join(NAMES)}") from None


def catalog() -> list[Problem]:
    return [build() for build in _BUILDERS.values()]


def smooth_problems() -> list[Problem]:
    return [p for p in catalog() if p.smooth]


def smooth_convex_problems() -> list[Problem]:
    return [p for p in catalog() if p.smooth and p.convex]
