"""Inspect the per-iteration trace of one run and save it as CSV.

Run: python3 demos/04_trace.py
"""

from fle import SolverConfig, solve
from fle.problems import get_problem

record = solve(get_problem("hs76"), SolverConfig(seed=0))
print(f"{'k':>3} {'type':>5} {'ok':>3} {'alpha':>9} {'f':>14} {'evals':>6}")
for it in record.iterations[:25]:
    print(f"{it.k:>3} {it.kind:>5} {int(it.success):>3} {it.alpha:>9.2e} {it.f:>14.8f} {it.evals:>6}")
record.to_csv("trace_hs76.csv")
print(f"... {len(record.iterations)} iterations in total; full trace in trace_hs76.csv")
