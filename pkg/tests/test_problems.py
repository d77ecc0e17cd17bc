"""Catalog invariants and independent checks of every recorded optimal value."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import linprog, minimize

from fle.geometry import project
from fle.problems import (NAMES, OBJECTIVES, catalog, get_objective, get_problem,
                          smooth_convex_problems, smooth_problems)

cp = pytest.importorskip("cvxpy")

INF = np.inf
TIGHT = dict(tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)


def test_catalog_shape():
    problems = catalog()
    assert len(problems) == len(NAMES) == len(set(NAMES))
    assert [p.name for p in problems] == list(NAMES)
    assert len(smooth_convex_problems()) >= 10
    lsq = get_problem("lsqfit")
    assert (lsq.n, lsq.region.m, lsq.region.m_I) == (2, 0, 2)
    with pytest.raises(KeyError, match="unknown problem"):
        get_problem("rosenbrock")
    with pytest.raises(KeyError):
        get_objective("rosenbrock")
    assert "lsqfit" in OBJECTIVES


@pytest.mark.parametrize("problem", catalog(), ids=lambda p: p.name)
def test_problem_invariants(problem):
    region = problem.region
    assert region.violation(problem.x0) <= 1e-10
    assert problem.f_L is not None
    assert problem.f_L <= problem.objective(problem.x0)
    # no feasible sample beats the recorded optimum
    rng = np.random.default_rng(0)
    for _ in range(200):
        y = project(region, problem.x0 + 2.0 * rng.standard_normal(problem.n))
        assert problem.objective(y) >= problem.f_L - 1e-9


@pytest.mark.parametrize("problem", smooth_problems(), ids=lambda p: p.name)
def test_analytic_gradients(problem):
    rng = np.random.default_rng(1)
    for _ in range(5):
        x = problem.x0 + 0.3 * rng.standard_normal(problem.n)
        g = problem.gradient(x)
        h = 1e-6
        fd = np.array([(problem.objective(x + h * e) - problem.objective(x - h * e)) / (2 * h)
                       for e in np.eye(problem.n)])
        assert_allclose(g, fd, rtol=1e-6, atol=1e-6)


# optimal values

def lsqfit_closed_form():
    a = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    b = np.array([0.25, 0.3, 0.625, 0.701, 1.0])
    u, r = a - 1.0, 0.85 - b
    x = -(u @ r) / (u @ u)
    return float(np.sum((u * x + r) ** 2))


def test_lsqfit_value():
    assert get_problem("lsqfit").f_L == pytest.approx(lsqfit_closed_form(), abs=1e-14)


def test_lsqfit_l1_penalty_is_exact():
    a = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    b = np.array([0.25, 0.3, 0.625, 0.701, 1.0])
    x = cp.Variable(2)
    obj = cp.sum_squares(a * x[0] + x[1] - b) + 100 * cp.pos(x[0] + x[1] - 0.85)
    prob = cp.Problem(cp.Minimize(obj), [x[0] >= 0])
    prob.solve(solver=cp.CLARABEL, **TIGHT)
    assert get_problem("lsqfit_l1").f_L == pytest.approx(prob.value, abs=1e-8)


def solve_qp(objective, constraints):
    prob = cp.Problem(cp.Minimize(objective), constraints)
    prob.solve(solver=cp.CLARABEL, **TIGHT)
    return prob.value


def hs_qp_cases():
    x2, x3, x4, x5 = (cp.Variable(k) for k in (2, 3, 4, 5))
    yield "hs21", solve_qp(0.01 * x2[0] ** 2 + x2[1] ** 2 - 100,
                           [10 * x2[0] - x2[1] >= 10, x2[0] >= 2, x2[0] <= 50,
                            x2[1] >= -50, x2[1] <= 50])
    # 9 - 8x1 - 6x2 - 4x3 + 2x1^2 + 2x2^2 + x3^2 + 2x1x2 + 2x1x3
    H35 = np.array([[4.0, 2, 2], [2, 4, 0], [2, 0, 2]])
    yield "hs35", solve_qp(9 - 8 * x3[0] - 6 * x3[1] - 4 * x3[2]
                           + 0.5 * cp.quad_form(x3, cp.psd_wrap(H35)),
                           [x3 >= 0, x3[0] + x3[1] + 2 * x3[2] <= 3])
    # x1^2 + 0.5x2^2 + x3^2 + 0.5x4^2 - x1x3 + x3x4 - x1 - 3x2 + x3 - x4
    H76 = np.array([[2.0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 2, 1], [0, 0, 1, 1]])
    yield "hs76", solve_qp(0.5 * cp.quad_form(x4, cp.psd_wrap(H76))
                           - x4[0] - 3 * x4[1] + x4[2] - x4[3],
                           [x4 >= 0, x4[0] + 2 * x4[1] + x4[2] + x4[3] <= 5,
                            3 * x4[0] + x4[1] + 2 * x4[2] - x4[3] <= 4,
                            x4[1] + 4 * x4[2] >= 1.5])
    y3 = cp.Variable(3)
    yield "hs28", solve_qp(cp.square(y3[0] + y3[1]) + cp.square(y3[1] + y3[2]),
                           [y3[0] + 2 * y3[1] + 3 * y3[2] == 1])
    yield "hs48", solve_qp(cp.square(x5[0] - 1) + cp.square(x5[1] - x5[2])
                           + cp.square(x5[3] - x5[4]),
                           [cp.sum(x5) == 5, x5[2] - 2 * (x5[3] + x5[4]) == -3])
    y5 = cp.Variable(5)
    yield "hs51", solve_qp(cp.square(y5[0] - y5[1]) + cp.square(y5[1] + y5[2] - 2)
                           + cp.square(y5[3] - 1) + cp.square(y5[4] - 1),
                           [y5[0] + 3 * y5[1] == 4, y5[2] + y5[3] - 2 * y5[4] == 0,
                            y5[1] - y5[4] == 0])
    z2 = cp.Variable(2)
    yield "hs3", solve_qp(z2[1] + 1e-5 * cp.square(z2[1] - z2[0]), [z2[1] >= 0])


@pytest.mark.parametrize("name, value", list(hs_qp_cases()), ids=lambda v: str(v)[:10])
def test_hock_schittkowski_qp_values(name, value):
    assert get_problem(name).f_L == pytest.approx(value, abs=1e-7)


def test_hs_textbook_values():
    # published optimal values of the classical test set
    assert get_problem("hs21").f_L == pytest.approx(-99.96)
    assert get_problem("hs35").f_L == pytest.approx(1 / 9)
    assert get_problem("hs76").f_L == pytest.approx(-4.681818181)
    assert get_problem("hs24").f_L == -1.0
    assert get_problem("hs5").f_L == pytest.approx(-math.sqrt(3) / 2 - math.pi / 3)


def test_simpllpa_lp_value():
    r = linprog([2, 3], A_ub=-np.array([[1, 2], [3, 1.0]]), b_ub=[-2.0, -3.0],
                bounds=[(0, None)] * 2, method="highs")
    assert get_problem("simpllpa").f_L == pytest.approx(r.fun, abs=1e-12)
    assert_allclose(r.x, [0.8, 0.6], atol=1e-12)


def test_cvxbqp1_value():
    n = 10
    x = cp.Variable(n)
    terms = []
    for i in range(1, n + 1):
        j, k = (2 * i - 1) % n + 1, (3 * i - 1) % n + 1
        terms.append(0.5 * i * cp.square(x[i - 1] + x[j - 1] + x[k - 1]))
    value = solve_qp(sum(terms), [x >= 0.1, x <= 10])
    assert get_problem("cvxbqp1").f_L == pytest.approx(value, abs=1e-7)


def test_synthetic_qp_values():
    # qp_mixed_8
    x = cp.Variable(8)
    c = np.array([(-1) ** i * i / 4 for i in range(1, 9)])
    obj = 0.5 * cp.sum(cp.multiply(np.arange(1, 9) / 2.0, cp.square(x))) \
        + cp.square(cp.sum(x)) / 16 + c @ x
    cons = [cp.sum(x) == 1, x[0] - x[7] == 0.5, x[0] + 2 * x[1] + x[2] <= 1,
            x[3] - x[4] >= -0.5, x >= -2, x <= 2]
    assert get_problem("qp_mixed_8").f_L == pytest.approx(solve_qp(obj, cons), abs=1e-7)
    # qp_mixed_12: 0.5 x'Tx - sum x, T = tridiag(-1, 3, -1)
    x = cp.Variable(12)
    # 0.5 x'Tx = 0.5 (||x||^2 + sum (x_i - x_{i+1})^2 + x_1^2 + x_n^2)
    obj = 0.5 * (cp.sum_squares(x) + cp.sum_squares(cp.diff(x)) + cp.square(x[0])
                 + cp.square(x[-1])) - cp.sum(x)
    odd = np.array([1.0 if i % 2 == 0 else 0.0 for i in range(12)])
    cons = [odd @ x == 1, cp.sum(x) <= 2, x[0] - x[1] + x[2] >= -1, x >= 0, x <= 1]
    assert get_problem("qp_mixed_12").f_L == pytest.approx(solve_qp(obj, cons), abs=1e-7)
    # qp_box_20: 0.5 x'Tx + c'x, T = tridiag(-1, 4, -1)
    x = cp.Variable(20)
    c = -1.0 - (np.arange(1, 21) % 3)
    obj = 0.5 * (2 * cp.sum_squares(x) + cp.sum_squares(cp.diff(x)) + cp.square(x[0])
                 + cp.square(x[-1])) + c @ x
    assert get_problem("qp_box_20").f_L == pytest.approx(
        solve_qp(obj, [x >= -1, x <= 0.6]), abs=1e-7)


def multistart(fun, starts, bounds=None, constraints=()):
    best = np.inf
    for z in starts:
        r = minimize(fun, z, bounds=bounds, constraints=constraints, method="SLSQP",
                     options={"ftol": 1e-15, "maxiter": 500})
        feasible = all(c["fun"](r.x) >= -1e-10 for c in constraints)
        if r.success and feasible:
            best = min(best, r.fun)
    return best


def test_hs24_by_multistart():
    s3 = math.sqrt(3)

    def f(x):
        return ((x[0] - 3) ** 2 - 9) * x[1] ** 3 / (27 * s3)

    cons = [{"type": "ineq", "fun": lambda x: x[0] / s3 - x[1]},
            {"type": "ineq", "fun": lambda x: x[0] + s3 * x[1]},
            {"type": "ineq", "fun": lambda x: 6 - x[0] - s3 * x[1]}]
    starts = [np.array([u, v]) for u in np.linspace(0.1, 5.9, 12) for v in np.linspace(0, 3, 7)
              if min(c["fun"]([u, v]) for c in cons) >= 0]
    best = multistart(f, starts, bounds=[(0, None)] * 2, constraints=cons)
    assert get_problem("hs24").f_L == pytest.approx(best, abs=1e-8)


def test_hs5_by_multistart():
    def f(x):
        return math.sin(x[0] + x[1]) + (x[0] - x[1]) ** 2 - 1.5 * x[0] + 2.5 * x[1] + 1

    starts = [np.array([u, v]) for u in np.linspace(-1.5, 4, 12) for v in np.linspace(-3, 3, 12)]
    best = min(minimize(f, z, bounds=[(-1.5, 4), (-3, 3)], method="L-BFGS-B").fun
               for z in starts)
    assert get_problem("hs5").f_L == pytest.approx(best, abs=1e-8)


def epigraph_minimax(partials, linear, starts):
    """min t subject to f_i(x) <= t and the linear constraints, by SLSQP multistart."""
    best = np.inf
    for z in starts:
        t0 = max(p(z) for p in partials)
        cons = [{"type": "ineq", "fun": (lambda v, p=p: v[-1] - p(v[:-1]))} for p in partials]
        cons += [{"type": "ineq", "fun": (lambda v, g=g: g(v[:-1]))} for g in linear]
        r = minimize(lambda v: v[-1], np.append(z, t0), constraints=cons, method="SLSQP",
                     options={"ftol": 1e-15, "maxiter": 1000})
        if min(g(r.x[:-1]) for g in linear) > -1e-10:
            best = min(best, max(p(r.x[:-1]) for p in partials))
    return best


def test_mad1_by_epigraph():
    partials = [lambda x: x[0] ** 2 + x[1] ** 2 + x[0] * x[1] - 1,
                lambda x: math.sin(x[0]), lambda x: -math.cos(x[1])]
    linear = [lambda x: x[0] + x[1] - 0.5]
    grid = [np.array([u, v]) for u in np.linspace(-2, 3, 26) for v in np.linspace(-2, 3, 26)
            if u + v >= 0.5]
    grid.sort(key=lambda z: max(p(z) for p in partials))
    best = epigraph_minimax(partials, linear, grid[:20])
    assert get_problem("mad1").f_L == pytest.approx(best, abs=1e-8)


@pytest.mark.slow
def test_pentagon_by_epigraph():
    def dist(i, j):
        return lambda x: -math.hypot(x[2 * i] - x[2 * j], x[2 * i + 1] - x[2 * j + 1])

    partials = [dist(0, 1), dist(1, 2), dist(2, 0)]
    linear = []
    for i in range(3):
        for j in range(5):
            ang = 2 * math.pi * j / 5
            linear.append(lambda x, i=i, ang=ang:
                          1 - (x[2 * i] * math.cos(ang) + x[2 * i + 1] * math.sin(ang)))
    rng = np.random.default_rng(0)
    starts = []
    while len(starts) < 60:
        z = rng.uniform(-1, 1, 6)
        if min(g(z) for g in linear) >= 0:
            starts.append(z)
    best = epigraph_minimax(partials, linear, starts)
    assert get_problem("pentagon").f_L == pytest.approx(best, abs=1e-6)
