"""Problem files: a region body plus keyword lines.

Keyword lines may appear anywhere and start with one of::

    name <identifier>
    objective <registry-name>
    x0 <n numbers>
    fL <number>

All remaining lines form the region body described in
:mod:`fle.geometry.io`.  The reference point of the body doubles as the
default ``x0`` when no ``x0`` line is given.
"""

from __future__ import annotations

import os

import numpy as np

from ..geometry.io import FormatError, dumps_region, parse_region_lines, tokenize
from .objectives import OBJECTIVES, get_objective
from .problem import Problem, describe_violation

KEYWORDS = ("name", "objective", "x0", "fL")


def loads_problem(text: str, default_name="problem") -> Problem:
    keys: dict[str, tuple[int, list[str]]] = {}
    body = []
    for lineno, toks in tokenize(text):
        if toks[0] in KEYWORDS:
            if toks[0] in keys:
                raise FormatError(f"line {lineno}: duplicate '{toks[0]}' line")
            keys[toks[0]] = (lineno, toks[1:])
        else:
            body.append((lineno, toks))
    if "objective" not in keys:
        raise FormatError("missing 'objective <name>' line")
    ln, toks = keys["objective"]
    if len(toks) != 1:
        raise FormatError(f"line {ln}: objective takes exactly one name")
    if toks[0] not in OBJECTIVES:
        raise FormatError(f"line {ln}: unknown objective {toks[0]!r}")
    objective = get_objective(toks[0])

    region = parse_region_lines(body)
    obj_n = getattr(objective, "n", None)
    if obj_n is not None and obj_n != region.n:
        raise FormatError(
            f"line {ln}: objective {toks[0]!r} expects n={obj_n}, region has n={region.n}")

    x0 = region.xbar.copy()
    if "x0" in keys:
        ln_x, toks_x = keys["x0"]
        if len(toks_x) != region.n:
            raise FormatError(f"line {ln_x}: x0 needs {region.n} values, got {len(toks_x)}")
        try:
            x0 = np.array([float(t) for t in toks_x])
        except ValueError as err:
            raise FormatError(f"line {ln_x}: {err}") from None
        bad = describe_violation(region, x0)
        if bad is not None:
            raise FormatError(f"line {ln_x}: x0 violates {bad}")
    f_L = None
    if "fL" in keys:
        ln_f, toks_f = keys["fL"]
        if len(toks_f) != 1:
            raise FormatError(f"line {ln_f}: fL takes one value")
        f_L = float(toks_f[0])
    name = keys["name"][1][0] if "name" in keys else default_name
    grad = getattr(objective, "gradient", None)
    return Problem(name, objective, region, x0, f_L, grad,
                   meta={"objective": toks[0], "source": "file"})


def load_problem(path) -> Problem:
    with open(path) as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(str(path)))[0]
    return loads_problem(text, default_name=stem)


def dumps_problem(problem: Problem, objective_name=None) -> str:
    objective_name = objective_name or problem.meta.get("objective", problem.name)
    lines = [f"name {problem.name}", f"objective {objective_name}",
             "x0 " + " ".join(repr(float(v)) for v in problem.x0)]
    if problem.f_L is not None:
        lines.append(f"fL {float(problem.f_L)!r}")
    return "\n".join(lines) + "\n" + dumps_region(problem.region)


def save_problem(problem: Problem, path, objective_name=None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_problem(problem, objective_name))
