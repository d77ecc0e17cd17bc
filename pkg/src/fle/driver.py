"""The full-low evaluation outer loop and its two single-strategy ablations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .fulleval import FULL, LOW, FullEvalState, LineSearchParams, full_eval_iteration
from .geometry import InfeasiblePointError
from .loweval import DirectSearchParams, low_eval_iteration

MODES = ("fle", "full", "low")

BUDGET = "budget"
ALPHA_MIN = "alpha_min"
CRITICALITY = "criticality_converged"
LINE_SEARCH = "line_search_failed"


@dataclass(frozen=True)
class SolverConfig:
    """Solver settings.

    ``mode`` is ``"fle"`` (hybrid), ``"full"`` (Full-Eval only) or ``"low"``
    (Low-Eval only).  ``budget=None`` means ``100 (n + 1)`` evaluations.
    Setting ``stop_on_criticality=False`` (and a tiny ``alpha_min``) gives
    a budget-only stopping protocol.
    """

    mode: str = "fle"
    budget: int | None = None
    alpha0: float = 1.0
    alpha_min: float = 1e-10
    seed: int = 0
    stop_on_criticality: bool = True
    line_search: LineSearchParams = field(default_factory=LineSearchParams)
    direct_search: DirectSearchParams = field(default_factory=DirectSearchParams)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if not self.alpha0 > self.alpha_min > 0:
            raise ValueError("need alpha0 > alpha_min > 0")

    def budget_for(self, n: int) -> int:
        return self.budget if self.budget is not None else 100 * (n + 1)


@dataclass
class IterationRecord:
    k: int
    kind: str
    success: bool
    f: float  # objective at x_{k+1}
    alpha: float  # alpha_k
    alpha_next: float
    evals: int  # cumulative, after the iteration
    x: np.ndarray = field(repr=False)  # x_{k+1}
    beta: float | None = None
    slope: float | None = None
    nb: int | None = None


@dataclass
class RunRecord:
    x0: np.ndarray
    f0: float
    iterations: list[IterationRecord]
    x: np.ndarray
    f: float
    evals: int
    reason: str
    mode: str = "fle"
    problem: str = ""

    @property
    def f_history(self) -> np.ndarray:
        return np.array([self.f0] + [it.f for it in self.iterations])

    @property
    def eval_history(self) -> np.ndarray:
        return np.array([1] + [it.evals for it in self.iterations])

    def trace_rows(self):
        yield ["k", "type", "success", "f", "alpha", "alpha_next", "evals", "beta"]
        a0 = self.iterations[0].alpha if self.iterations else ""
        yield [-1, "init", "", repr(float(self.f0)), repr(a0), "", 1, ""]
        for it in self.iterations:
            yield [it.k, it.kind, int(it.success), repr(float(it.f)), repr(it.alpha),
                   repr(it.alpha_next), it.evals, "" if it.beta is None else repr(it.beta)]

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.trace_rows())
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


class CountingObjective:
    """Wraps an objective and counts calls."""

    def __init__(self, fun):
        self.fun = fun
        self.count = 0

    def __call__(self, x):
        self.count += 1
        return float(self.fun(x))


def minimize(fun, region, x0, config: SolverConfig = SolverConfig()) -> RunRecord:
    """Minimise ``fun`` over ``region`` from the feasible point ``x0``."""
    x = np.asarray(x0, dtype=float).copy()
    viol = region.violation(x)
    if viol > 1e-10:
        raise InfeasiblePointError(f"starting point violates the constraints by {viol:.3e}")
    f = CountingObjective(fun)
    budget = config.budget_for(region.n)
    fx = f(x)
    x0, f0 = x.copy(), fx
    rng = np.random.default_rng(config.seed)
    ls, ds = config.line_search, config.direct_search
    alpha = config.alpha0
    state = FullEvalState.initial(region.dim)
    kind = LOW if config.mode == "low" else FULL
    low_allowed, low_failures = 1, 0
    iterations: list[IterationRecord] = []
    reason = BUDGET
    k = 0

    while f.count < budget:
        if kind == FULL:
            out = full_eval_iteration(state, f, region, x, fx, alpha, ls,
                                      switching=config.mode == "fle",
                                      stop_on_criticality=config.stop_on_criticality)
            state = out.state
            iterations.append(IterationRecord(
                k, FULL, out.success, out.f_next, alpha, out.alpha_next, f.count,
                out.x_next.copy(), out.beta, out.slope, state.nb))
            x, fx = out.x_next, out.f_next
            if out.criticality_converged:
                reason = CRITICALITY
                break
            if not out.success:
                if config.mode == "full":
                    reason = LINE_SEARCH
                    break
                kind = LOW
                # nb = 0 still grants one Low-Eval attempt
                low_allowed, low_failures = max(state.nb, 1), 0
        else:
            out = low_eval_iteration(f, region, x, fx, alpha, ds, rng)
            iterations.append(IterationRecord(
                k, LOW, out.success, out.f_next, alpha, out.alpha_next, f.count,
                out.x_next.copy()))
            x, fx, alpha = out.x_next, out.f_next, out.alpha_next
            if config.mode == "fle":
                low_failures = 0 if out.success else low_failures + 1
                if low_failures >= low_allowed:
                    kind = FULL
            if alpha < config.alpha_min:
                reason = ALPHA_MIN
                break
        k += 1

    return RunRecord(x0, f0, iterations, x.copy(), fx, f.count, reason, config.mode)


def solve(problem, config: SolverConfig = SolverConfig()) -> RunRecord:
    """Run the configured solver on a :class:`fle.problems.Problem`."""
    record = minimize(problem.objective, problem.region, problem.x0, config)
    record.problem = problem.name
    return record


# key=value configuration files

_LS_KEYS = {f.name for f in fields(LineSearchParams)}
_DS_KEYS = {"lambda": "expand", "theta": "contract", "gamma1": "gamma1",
            "gamma2": "gamma2", "count_fraction": "count_fraction"}
_TOP_KEYS = {"mode": str, "budget": int, "alpha0": float, "alpha_min": float, "seed": int,
             "stop_on_criticality": bool}


def _coerce(value: str, kind):
    if kind is bool:
        low = value.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {value!r}")
    return kind(value)


def loads_config(text: str) -> SolverConfig:
    top, ls, ds = {}, {}, {}
    ls_types = {f.name: f.type for f in fields(LineSearchParams)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in _TOP_KEYS:
                if key == "budget" and value.lower() == "none":
                    top[key] = None
                else:
                    top[key] = _coerce(value, _TOP_KEYS[key])
            elif key in _LS_KEYS:
                kind = {"float": float, "int": int, "bool": bool}[ls_types[key]]
                ls[key] = _coerce(value, kind)
            elif key in _DS_KEYS:
                ds[_DS_KEYS[key]] = float(value)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}") from None
    return SolverConfig(**top, line_search=LineSearchParams(**ls),
                        direct_search=DirectSearchParams(**ds))


def load_config(path) -> SolverConfig:
    with open(path) as fh:
        return loads_config(fh.read())


def dumps_config(config: SolverConfig) -> str:
    lines = [f"mode = {config.mode}",
             f"budget = {config.budget}",
             f"alpha0 = {config.alpha0!r}",
             f"alpha_min = {config.alpha_min!r}",
             f"seed = {config.seed}",
             f"stop_on_criticality = {config.stop_on_criticality}"]
    for f_ in fields(LineSearchParams):
        lines.append(f"{f_.name} = {getattr(config.line_search, f_.name)!r}")
    for key, attr in _DS_KEYS.items():
        lines.append(f"{key} = {getattr(config.direct_search, attr)!r}")
    return "\n".join(lines) + "\n"


def with_mode(config: SolverConfig, mode: str) -> SolverConfig:
    return replace(config, mode=mode)
