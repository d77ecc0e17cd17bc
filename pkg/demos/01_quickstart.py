"""Minimise a black-box function over a box with one linear inequality.

Run: python3 demos/01_quickstart.py
"""

import numpy as np
from scipy.optimize import minimize_scalar

from fle import FeasibleRegion, SolverConfig, minimize

# 0 <= x_i <= 2 and x1 + x2 <= 1.5, written as rows of A_I with two-sided bounds
region = FeasibleRegion.build(
    2, A_I=[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
    lower=[0.0, 0.0, -np.inf], upper=[2.0, 2.0, 1.5], xbar=[0.0, 0.0])


def objective(x):
    # the unconstrained minimiser (1, 1) violates x1 + x2 <= 1.5
    return float(np.exp(0.5 * (x[0] - 1.0) ** 2) + 2.0 * (x[1] - 1.0) ** 2)


record = minimize(objective, region, [0.1, 0.1], SolverConfig(seed=0))
print(f"x = {record.x}, f = {record.f:.8f}")
# reference: minimise along the active constraint x2 = 1.5 - x1
t = minimize_scalar(lambda t: objective([t, 1.5 - t]), bounds=(0.0, 1.5), method="bounded",
                    options={"xatol": 1e-10}).x
print(f"reference: x = [{t:.7f} {1.5 - t:.7f}], f = {objective([t, 1.5 - t]):.8f}")
print(f"{record.evals} evaluations, stopped because: {record.reason}")
kinds = [it.kind for it in record.iterations]
print(f"{kinds.count('full')} Full-Eval and {kinds.count('low')} Low-Eval iterations")
