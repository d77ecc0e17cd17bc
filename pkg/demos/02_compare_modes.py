"""Compare the hybrid solver with its two components on a few catalog problems.

Prints, for each problem, the evaluations each solver needed to close
99.9% of the gap between f(x0) and the best-known value.

Run: python3 demos/02_compare_modes.py
"""

from fle import SolverConfig, solve
from fle.bench import convergence_eval_count
from fle.problems import get_problem

PROBLEMS = ("lsqfit", "hs21", "hs35", "hs76", "cvxbqp1", "qp_mixed_8")
TAU = 1e-3

print(f"{'problem':<12}" + "".join(f"{m:>8}" for m in ("fle", "full", "low")))
for name in PROBLEMS:
    problem = get_problem(name)
    row = []
    for mode in ("fle", "full", "low"):
        rec = solve(problem, SolverConfig(mode=mode, seed=0))
        t = convergence_eval_count(rec, rec.f0, problem.f_L, TAU)
        row.append(f"{t:>8}" if t != float("inf") else f"{'-':>8}")
    print(f"{name:<12}" + "".join(row))
