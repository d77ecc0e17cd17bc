"""Acceptance checks; each prints one pass/fail line in the terminal summary."""

import math
import time
import warnings

import numpy as np
import pytest

from fle import SolverConfig, solve
from fle.bench import BenchConfig, convergence_eval_count, performance_profiles, run_matrix
from fle.bench.cli import main
from fle.fulleval import (FULL, SQRT_EPS, LineSearchParams, bfgs_update, criticality_step,
                          fd_reduced_gradient)
from fle.geometry import (FeasibleRegion, approx_active_sets, criticality_measure,
                          normal_cone_generators, project, sample_polling_directions,
                          tangent_cone_generators)
from fle.problems import catalog, get_problem, smooth_convex_problems, smooth_problems

from conftest import (ACCEPTANCE_LINES, brute_force_projection, completeness_residual,
                      polar_samples, random_normals, random_region)
from test_bench import brute_force_profile, results_from, synthetic_fixture


def report(number, title, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES[number] = f"[{status}] {number:2d}. {title}" + (f" ({detail})" if detail else "")


def checked(number, title, ok, detail=""):
    report(number, title, ok, detail)
    assert ok, detail


def random_feasible_point(problem, rng):
    y = project(problem.region, problem.x0 + rng.standard_normal(problem.n))
    return problem.x0 + rng.uniform() * (y - problem.x0)


def test_01_projection_matches_brute_force():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(0, min(2, n - 1) + 1))
        region = random_region(rng, n, m, int(rng.integers(0, 6)))
        z = region.xbar + 2.0 * rng.standard_normal(n)
        worst = max(worst, float(np.linalg.norm(project(region, z) - brute_force_projection(region, z))))
    elapsed = time.perf_counter() - start
    checked(1, "projection equals brute-force oracle", worst <= 1e-8 and elapsed < 10,
            f"200 regions, max gap {worst:.1e}, {elapsed:.1f}s")


def test_02_tangent_cones_are_polar_and_complete():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst_polar = worst_resid = 0.0
    for _ in range(200):
        d = int(rng.integers(1, 6))
        N = random_normals(rng, d, int(rng.integers(0, 7)))
        cone = tangent_cone_generators(N)
        gens = np.vstack([cone.lineality, -cone.lineality, cone.pointed])
        if N.shape[0] and gens.shape[0]:
            worst_polar = max(worst_polar, float((N @ gens.T).max()))
        for v in polar_samples(N, rng, 50):
            worst_resid = max(worst_resid, completeness_residual(cone, v))
    elapsed = time.perf_counter() - start
    checked(2, "tangent cone polarity and completeness",
            worst_polar <= 1e-10 and worst_resid <= 1e-8 and elapsed < 30,
            f"max polarity {worst_polar:.1e}, max LP residual {worst_resid:.1e}, {elapsed:.1f}s")


def test_03_polling_steps_stay_feasible():
    rng = np.random.default_rng(3)
    problems = catalog()
    tuples = failures = 0
    while tuples < 10_000:
        problem = problems[int(rng.integers(len(problems)))]
        region = problem.region
        x = random_feasible_point(problem, rng)
        xi = 10.0 ** rng.uniform(-4, 0.5)
        cone = tangent_cone_generators(normal_cone_generators(region, approx_active_sets(region, x, xi)))
        for d in sample_polling_directions(cone, 1.0, rng):
            tuples += 1
            failures += region.violation(x + xi * (region.W @ d)) > 1e-10
    checked(3, "steps along sampled tangent directions are feasible", failures == 0,
            f"{tuples} tuples, {failures} failures")


def fd_ratio(rng, near_minimiser):
    n = int(rng.integers(2, 7))
    m = int(rng.integers(0, n))
    V, _ = np.linalg.qr(rng.standard_normal((n, n)))
    lam = rng.uniform(0.1, 10.0, n)
    Q = (V * lam) @ V.T
    L = float(lam.max())
    if near_minimiser:
        xstar = rng.uniform(-1, 1, n)
        f = lambda x: 0.5 * float((x - xstar) @ Q @ (x - xstar))  # noqa: E731
        grad = lambda x: Q @ (x - xstar)  # noqa: E731
    else:
        xstar = np.zeros(n)
        c = rng.standard_normal(n)
        f = lambda x: 0.5 * float(x @ Q @ x) + float(c @ x)  # noqa: E731
        grad = lambda x: Q @ x + c  # noqa: E731
    A = rng.standard_normal((m, n)) if m else None
    region = FeasibleRegion.build(n, A, A @ xstar if m else None, xbar=xstar)
    W = region.W
    if near_minimiser:
        u = rng.standard_normal(W.shape[1])
        x = xstar + 1e-3 * (W @ (u / np.linalg.norm(u)))
    else:
        x = xstar + W @ rng.standard_normal(W.shape[1])
    g_r, _ = fd_reduced_gradient(f, region, x, SQRT_EPS, fx=f(x))
    bound = 0.5 * math.sqrt(n - m) * L * SQRT_EPS
    return float(np.linalg.norm(W.T @ grad(x) - g_r)) / bound


def test_04_fd_error_bound():
    rng = np.random.default_rng(4)
    ratios = [fd_ratio(rng, True) for _ in range(100)]
    generic = max(fd_ratio(rng, False) for _ in range(100))
    checked(4, "finite-difference error bound near the minimiser", max(ratios) <= 1.001,
            f"worst ratio {max(ratios):.4f}; generic-point diagnostic {generic:.2f}")


def test_05_bfgs_finite_termination():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 6))
        D = np.diag(rng.permutation(np.linspace(1.0, 10.0, n)))
        H, x = np.eye(n), rng.standard_normal(n)
        for _ in range(n):
            g = D @ x
            p = -H @ g
            s = -(g @ p) / (p @ D @ p) * p
            x = x + s
            H = bfgs_update(H, s, D @ s)
        worst = max(worst, float(np.abs(H - np.linalg.inv(D)).max()))
    checked(5, "BFGS finite termination on diagonal quadratics", worst <= 1e-6,
            f"100 cases, n in 2..5, max |H - D^-1| {worst:.1e}")


def test_06_criticality_step_terminates():
    rng = np.random.default_rng(6)
    problems = smooth_problems()
    ls = LineSearchParams()
    cases = passed = worst_j = 0
    while cases < 500:
        problem = problems[int(rng.integers(len(problems)))]
        x = random_feasible_point(problem, rng)
        if criticality_measure(problem.region, x, problem.gradient(x)) < 1e-2:
            continue  # near-stationary point
        cases += 1
        h0 = 10.0 ** rng.uniform(-8, 1)
        res = criticality_step(problem.objective, problem.region, x, problem.objective(x), h0,
                               ls.u_g_prime, ls.omega, 20)
        worst_j = max(worst_j, res.iterations)
        passed += (not res.converged and res.iterations <= 20
                   and res.h <= ls.u_g_prime * np.linalg.norm(res.q))
    checked(6, "criticality step meets its accuracy test", passed == cases,
            f"{passed}/{cases} cases, max inner iterations {worst_j}")


def test_07_lsqfit_end_to_end():
    problem = get_problem("lsqfit")
    a = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    b = np.array([0.25, 0.3, 0.625, 0.701, 1.0])
    u, r = a - 1.0, 0.85 - b
    f_L = float(np.sum((u * (-(u @ r) / (u @ u)) + r) ** 2))
    start = time.perf_counter()
    t = {}
    for mode, tau in (("fle", 1e-5), ("full", 1e-3), ("low", 1e-3)):
        rec = solve(problem, SolverConfig(mode=mode, seed=0, budget=300))
        t[mode] = convergence_eval_count(rec, rec.f0, f_L, tau)
    elapsed = time.perf_counter() - start
    ok = all(v <= 300 for v in t.values()) and elapsed < 1.0
    checked(7, "LSQFIT reaches the analytic optimum", ok,
            f"evals fle@1e-5={t['fle']}, full@1e-3={t['full']}, low@1e-3={t['low']}, "
            f"{elapsed:.2f}s")


def test_08_switch_condition_ledger():
    ls = LineSearchParams()
    config = SolverConfig(seed=0)
    allowed = {config.direct_search.expand, config.direct_search.contract, 1.0}
    steps = violations = 0
    for problem in catalog():
        rec = solve(problem, config)
        f_prev, alpha = rec.f0, rec.iterations[0].alpha
        for it in rec.iterations:
            violations += it.alpha != alpha or it.alpha_next / it.alpha not in allowed
            if it.kind == FULL and it.success:
                steps += 1
                violations += not (it.beta >= ls.gamma * it.alpha
                                   and it.f <= f_prev + ls.c * it.beta * it.slope
                                   and problem.objective(it.x) == it.f)
            f_prev, alpha = it.f, it.alpha_next
    checked(8, "switch condition and step-size ledger over the catalog", violations == 0,
            f"{steps} successful Full-Eval steps, {violations} violations")


def test_09_smooth_convex_stationarity():
    problems = smooth_convex_problems()
    worst, names = 0.0, []
    for problem in problems:
        rec = solve(problem, SolverConfig(seed=0))
        q = criticality_measure(problem.region, rec.x, problem.gradient(rec.x))
        worst = max(worst, q)
        if q > 1e-5:
            names.append(problem.name)
    checked(9, "FLE final iterates are stationary", len(problems) >= 10 and not names,
            f"{len(problems)} problems, max q {worst:.1e}" + (f", failed {names}" if names else ""))


def test_10_hybrid_behaviour_soft():
    smooth = [p.name for p in smooth_problems()]
    clean = run_matrix(BenchConfig(problems=tuple(smooth), taus=(1e-5,)))
    frac = {s: clean.solved_fraction(s, 1e-5) for s in ("fle", "full", "low")}
    noisy = run_matrix(BenchConfig(problems=tuple(smooth), taus=(1e-1,), transform="noisy:1e-3"))
    nfrac = {s: noisy.solved_fraction(s, 1e-1) for s in ("fle", "full", "low")}
    ok = (frac["fle"] >= max(frac["full"], frac["low"]) - 0.1
          and nfrac["fle"] >= min(nfrac["full"], nfrac["low"]) - 0.1)
    detail = ("smooth@1e-5 " + ", ".join(f"{k}={v:.2f}" for k, v in frac.items())
              + "; noisy@1e-1 " + ", ".join(f"{k}={v:.2f}" for k, v in nfrac.items()))
    report(10, "hybrid solves at least as much as its components (soft)", ok, detail)
    if not ok:
        ACCEPTANCE_LINES[10] = ACCEPTANCE_LINES[10].replace("[FAIL]", "[SOFT-FAIL]")
        warnings.warn(f"soft criterion not met: {detail}")


def test_11_profiles_and_determinism(tmp_path):
    mismatches = 0
    for seed in range(5):
        problems, solvers, times = synthetic_fixture(seed)
        curves = performance_profiles(results_from(times))
        for alpha in sorted({a for c in curves for a in c.alphas}) + [1.0, 3.0, 1e6]:
            expected = brute_force_profile(times, problems, solvers, alpha)
            mismatches += sum(c.rho(alpha) != expected[c.solver] for c in curves)
    args = ["run", "--problems", "lsqfit,hs21,hs35", "--tau", "1e-3", "--seed", "0"]
    for name in ("a", "b"):
        assert main(args + ["--out", str(tmp_path / name)]) == 0
    csvs = sorted(p.name for p in (tmp_path / "a").glob("*.csv"))
    identical = all((tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
                    for f in csvs)
    checked(11, "profile recomputation and byte-identical runs", mismatches == 0 and identical,
            f"{mismatches} profile mismatches, {len(csvs)} CSVs identical={identical}")


@pytest.fixture(autouse=True, scope="module")
def _all_lines_present():
    yield
    for k in range(1, 12):
        ACCEPTANCE_LINES.setdefault(k, f"[FAIL] {k:2d}. did not run")
