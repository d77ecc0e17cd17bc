"""``fle-bench`` command line entry point."""

from __future__ import annotations

import argparse
import sys

from ..driver import MODES, SolverConfig, load_config
from ..problems import NAMES, get_problem, load_problem
from .runner import FL_SOURCES, BenchConfig, run_matrix, summary_text


def _split(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def _problem_list(text):
    if text == "all":
        return list(NAMES)
    items = []
    for item in _split(text):
        if item.endswith(".prob"):
            items.append(load_problem(item))
        elif item in NAMES:
            items.append(item)
        else:
            raise KeyError(f"unknown problem {item!r}; see 'fle-bench list'")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fle-bench",
                                     description="Benchmark the full-low evaluation solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a solver x problem matrix")
    run.add_argument("--problems", default="all",
                     help="'all' or comma-separated catalog names / .prob files")
    run.add_argument("--solvers", default=",".join(MODES),
                     help="comma-separated subset of " + ",".join(MODES))
    run.add_argument("--tau", default="1e-3,1e-5", help="comma-separated tolerances")
    run.add_argument("--budget-mult", type=int, default=100,
                     help="budget is BUDGET_MULT * (n + 1) evaluations")
    run.add_argument("--transform", default="none",
                     help="none | noisy:EPS | l1:LAMBDA:TARGET")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--replications", type=int, default=1)
    run.add_argument("--parallel", type=int, default=1)
    run.add_argument("--fl-source", choices=FL_SOURCES, default="auto")
    run.add_argument("--config", help="key=value solver configuration file")

    sub.add_parser("list", help="list catalog problems")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in NAMES:
            p = get_problem(name)
            print(f"{name:12s} n={p.n:<3d} m={p.region.m:<2d} m_I={p.region.m_I:<3d} "
                  f"f_L={p.f_L!r}")
        return 0
    try:
        solver_config = load_config(args.config) if args.config else SolverConfig()
        config = BenchConfig(
            problems=tuple(_problem_list(args.problems)),
            solvers=tuple(_split(args.solvers)),
            taus=tuple(float(t) for t in _split(args.tau)),
            budget_mult=args.budget_mult,
            transform=None if args.transform == "none" else args.transform,
            seed=args.seed, replications=args.replications, parallel=args.parallel,
            fl_source=args.fl_source, solver_config=solver_config)
    except (ValueError, KeyError, OSError) as err:
        msg = err.args[0] if isinstance(err, KeyError) else err
        print(f"fle-bench: {msg}", file=sys.stderr)
        return 2
    output = run_matrix(config, args.out)
    sys.stdout.write(summary_text(output, config))
    return 0


if __name__ == "__main__":
    sys.exit(main())
