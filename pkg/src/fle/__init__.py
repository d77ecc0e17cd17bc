"""Full-low evaluation derivative-free optimisation over linear constraints.

The solver alternates between two kinds of iterations:

* Full-Eval: a projected BFGS step with finite-difference gradients and a
  backtracking line search, used while it keeps making long steps;
* Low-Eval: a probabilistic feasible direct search over the approximate
  tangent cone, taken over when the line search has to backtrack too far.

Quick start::

    from fle import solve, SolverConfig
    from fle.problems import get_problem

    record = solve(get_problem("lsqfit"), SolverConfig(mode="fle", seed=0))
    print(record.x, record.f, record.evals)
"""

from .driver import (RunRecord, SolverConfig, load_config, loads_config, dumps_config,
                     minimize, solve)
from .fulleval import LineSearchParams
from .geometry import FeasibleRegion, project
from .loweval import DirectSearchParams

__version__ = "0.1.0"

__all__ = [
    "DirectSearchParams", "FeasibleRegion", "LineSearchParams", "RunRecord",
    "SolverConfig", "dumps_config", "load_config", "loads_config", "minimize",
    "project", "solve",
]
