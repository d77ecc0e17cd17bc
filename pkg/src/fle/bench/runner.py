"""Solver x problem benchmark matrices and their on-disk artifacts."""

from __future__ import annotations

import csv
import io
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from ..driver import MODES, SolverConfig, solve
from ..problems import Problem, apply_transform, get_problem, NAMES, parse_transform
from .profiles import BenchResult, convergence_eval_count, performance_profiles, solved_fraction
from .svg import profile_svg

FL_SOURCES = ("auto", "catalog", "solvers")


@dataclass(frozen=True)
class BenchConfig:
    """A benchmark matrix.

    ``problems`` holds catalog names and/or :class:`Problem` objects.
    ``transform`` is a spec string accepted by
    :func:`fle.problems.parse_transform` (noise is keyed on ``seed``).
    Replication ``i`` runs the solvers with seed ``seed + i``; the reported
    ``t`` and ``evals`` are medians across replications and ``f_best`` the
    minimum.
    """

    problems: tuple = NAMES
    solvers: tuple = MODES
    taus: tuple = (1e-3, 1e-5)
    budget_mult: int = 100
    transform: str | None = None
    seed: int = 0
    replications: int = 1
    parallel: int = 1
    fl_source: str = "auto"
    solver_config: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        for s in self.solvers:
            if s not in MODES:
                raise ValueError(f"unknown solver {s!r}; choose from {MODES}")
        if not self.solvers or not self.problems:
            raise ValueError("need at least one solver and one problem")
        if any(not t > 0 for t in self.taus):
            raise ValueError("tolerances must be positive")
        if self.budget_mult <= 0 or self.replications < 1 or self.parallel < 1:
            raise ValueError("budget_mult, replications and parallel must be positive")
        if self.fl_source not in FL_SOURCES:
            raise ValueError(f"fl_source must be one of {FL_SOURCES}")
        parse_transform(self.transform, self.seed)  # raises on a bad spec


@dataclass
class Run:
    """Raw result of a single (problem, solver, seed) cell."""

    problem: str
    solver: str
    seed: int
    f0: float | None = None
    f_best: float = math.nan
    evals: int = 0
    trace: object = None  # RunRecord, or None after a failure
    error: str | None = None


def _cell(problem: Problem, solver: str, seed: int, budget: int, base: SolverConfig) -> Run:
    config = replace(base, mode=solver, seed=seed, budget=budget)
    try:
        record = solve(problem, config)
    except Exception as err:  # recorded, never aborts the matrix
        return Run(problem.name, solver, seed, error=f"{type(err).__name__}: {err}")
    return Run(problem.name, solver, seed, record.f0, record.f, record.evals, record)


def _build_problems(config: BenchConfig):
    """``[(name, problem or None, error)]`` in config order."""
    transform = parse_transform(config.transform, config.seed)
    built = []
    for item in config.problems:
        try:
            base = get_problem(item) if isinstance(item, str) else item
            name = base.name
            prob = apply_transform(base, transform)
            prob = replace(prob, name=name) if prob is not base else prob
            built.append((name, prob, None))
        except Exception as err:
            label = item if isinstance(item, str) else getattr(item, "name", str(item))
            built.append((label, None, f"{type(err).__name__}: {err}"))
    return built


@dataclass
class BenchOutput:
    results: list  # BenchResult rows, ordered by (tau, problem, solver)
    runs: list  # raw Run cells, ordered by (problem, solver, seed)
    f_L: dict
    errors: list
    artifacts: dict = field(default_factory=dict)

    def for_tau(self, tau) -> list:
        return [r for r in self.results if r.tau == tau]

    def solved_fraction(self, solver, tau) -> float:
        return solved_fraction(self.for_tau(tau), solver)


def run_matrix(config: BenchConfig, out_dir=None) -> BenchOutput:
    """Run every (problem, solver, seed) cell and evaluate the convergence test.

    With ``out_dir`` the CSV/SVG artifacts are written there as well.
    Problems that cannot be built (unknown name, transform not applicable)
    are left out of the matrix and reported in ``errors``.
    """
    built = _build_problems(config)
    if all(prob is None for _, prob, _ in built):
        reasons = "; ".join(f"{name}: {err}" for name, _, err in built)
        raise ValueError(f"no problem could be built ({reasons})")
    seeds = [config.seed + i for i in range(config.replications)]
    jobs = []
    for name, prob, err in built:
        if prob is None:
            continue
        budget = config.budget_mult * (prob.n + 1)
        for solver in config.solvers:
            for seed in seeds:
                jobs.append((prob, solver, seed, budget, config.solver_config))

    if config.parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            runs = list(pool.map(_cell, *zip(*jobs)))
    else:
        runs = [_cell(*job) for job in jobs]
    # deterministic reduce independent of completion order
    runs.sort(key=lambda r: (r.problem, r.solver, r.seed))

    errors = [(name, "*", err) for name, prob, err in built if err is not None]
    errors += [(r.problem, r.solver, r.error) for r in runs if r.error is not None]

    catalog_fl = {name: prob.f_L for name, prob, _ in built if prob is not None}
    f_L = {}
    for name in sorted(catalog_fl):
        finals = [r.f_best for r in runs if r.problem == name and r.error is None]
        cross = min(finals) if finals else math.nan
        if config.fl_source == "solvers" or catalog_fl[name] is None:
            f_L[name] = cross
        else:
            f_L[name] = catalog_fl[name]

    results = []
    for tau in config.taus:
        for name, prob, err in sorted(built, key=lambda b: b[0]):
            if prob is None:  # not part of the matrix; listed in errors
                continue
            for solver in sorted(config.solvers):
                cell = [r for r in runs if r.problem == name and r.solver == solver]
                results.append(_summarize(name, solver, tau, cell, f_L[name], errors))

    output = BenchOutput(results, runs, f_L, errors)
    if out_dir is not None:
        output.artifacts = write_artifacts(output, config, out_dir)
    return output


def _summarize(name, solver, tau, cell, f_L, errors) -> BenchResult:
    ts, evals, fbest, msgs = [], [], [], []
    for r in cell:
        if r.error is not None:
            ts.append(math.inf)
            evals.append(r.evals)
            msgs.append(r.error)
            continue
        try:
            ts.append(convergence_eval_count(r.trace, r.f0, f_L, tau))
        except ValueError as err:
            ts.append(math.inf)
            msgs.append(str(err))
            errors.append((name, solver, f"tau={tau:g}: {err}"))
        evals.append(r.evals)
        fbest.append(r.f_best)
    t = statistics.median(ts)
    ev = statistics.median(evals)
    return BenchResult(name, solver, t, min(fbest) if fbest else math.nan,
                       int(ev) if float(ev).is_integer() else ev, tau,
                       "; ".join(msgs) or None)


def _num(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return repr(v)
    return str(v)


def tau_label(tau: float) -> str:
    return f"{tau:g}"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def results_csv(results) -> str:
    rows = [["problem", "solver", "tau", "t", "f_best", "evals"]]
    for r in results:
        rows.append([r.problem, r.solver, _num(r.tau), _num(float(r.t)), _num(r.f_best),
                     _num(r.evals_used)])
    return _csv(rows)


def profiles_csv(curves) -> str:
    rows = [["alpha", "solver", "rho"]]
    for c in curves:
        for a, rho in c.points:
            rows.append([_num(float(a)), c.solver, _num(float(rho))])
    return _csv(rows)


def summary_text(output: BenchOutput, config: BenchConfig) -> str:
    lines = [f"problems: {len(output.f_L)}  solvers: {', '.join(sorted(config.solvers))}  "
             f"transform: {config.transform or 'none'}  seed: {config.seed}  "
             f"replications: {config.replications}"]
    for tau in config.taus:
        fracs = "  ".join(f"{s}={output.solved_fraction(s, tau):.3f}"
                          for s in sorted(config.solvers))
        lines.append(f"tau={tau_label(tau)}: solved fraction  {fracs}")
    for prob, solver, msg in output.errors:
        lines.append(f"error: {prob}/{solver}: {msg}")
    return "\n".join(lines) + "\n"


def write_artifacts(output: BenchOutput, config: BenchConfig, out_dir) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    written = {}

    def put(name, text):
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as fh:
            fh.write(text)
        written[name] = path

    put("results.csv", results_csv(output.results))
    for tau in config.taus:
        curves = performance_profiles(output.for_tau(tau))
        put(f"profiles_{tau_label(tau)}.csv", profiles_csv(curves))
        put(f"profiles_{tau_label(tau)}.svg",
            profile_svg(curves, title=f"Performance profile, τ = {tau_label(tau)}"))
    for r in output.runs:
        if r.trace is None:
            continue
        suffix = "" if r.seed == config.seed else f"_seed{r.seed}"
        put(f"trace_{r.problem}_{r.solver}{suffix}.csv", r.trace.to_csv())
    put("summary.txt", summary_text(output, config))
    return written
