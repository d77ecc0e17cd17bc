from .catalog import (NAMES, catalog, get_problem, smooth_convex_problems,
                      smooth_problems)
from .io import dumps_problem, load_problem, loads_problem, save_problem
from .objectives import OBJECTIVES, get_objective
from .problem import Problem, describe_violation
from .transforms import (L1Penalty, Minimax, Noisy, apply_transform, evaluate,
                         parse_transform)

__all__ = [
    "L1Penalty", "Minimax", "NAMES", "Noisy", "OBJECTIVES", "Problem",
    "apply_transform", "catalog", "describe_violation", "dumps_problem",
    "evaluate", "get_objective", "get_problem", "load_problem", "loads_problem",
    "parse_transform", "save_problem", "smooth_convex_problems", "smooth_problems",
]
