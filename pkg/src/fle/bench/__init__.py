"""Benchmark matrices, convergence test and performance profiles."""

from .profiles import (BenchResult, ProfileCurve, convergence_eval_count,
                       performance_profiles, performance_ratios, solved_fraction)
from .runner import (BenchConfig, BenchOutput, run_matrix, results_csv, profiles_csv,
                     summary_text, write_artifacts)
from .svg import profile_svg

__all__ = [
    "BenchResult", "ProfileCurve", "convergence_eval_count", "performance_profiles",
    "performance_ratios", "solved_fraction", "BenchConfig", "BenchOutput", "run_matrix",
    "results_csv", "profiles_csv", "summary_text", "write_artifacts", "profile_svg",
]
