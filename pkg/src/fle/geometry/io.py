"""Plain-text region files.

Grammar (``#`` starts a comment, blank lines are ignored)::

    n m m_I
    <m lines: rows of A, n numbers each>
    <1 line: b, m numbers>            # omitted when m == 0
    <m_I lines: rows of A_I>
    <1 line: lower, m_I tokens>       # omitted when m_I == 0
    <1 line: upper, m_I tokens>       # omitted when m_I == 0
    <1 line: xbar, n numbers>

Bound tokens may be ``inf``/``-inf``.  Problem files reuse this body and add
keyword lines, see :mod:`fle.problems.io`.
"""

from __future__ import annotations

import numpy as np

from .region import FeasibleRegion, InfeasiblePointError, RegionError


class FormatError(ValueError):
    pass


def _numbers(tokens, lineno, expected, what):
    if len(tokens) != expected:
        raise FormatError(
            f"line {lineno}: {what} needs {expected} values, got {len(tokens)}")
    try:
        return [float(tok) for tok in tokens]
    except ValueError as err:
        raise FormatError(f"line {lineno}: {err}") from None


def parse_region_lines(lines) -> FeasibleRegion:
    """Parse ``(lineno, tokens)`` pairs, already stripped of comments."""
    lines = list(lines)
    if not lines:
        raise FormatError("empty region description")
    lineno, head = lines[0]
    if len(head) != 3:
        raise FormatError(f"line {lineno}: header must be 'n m m_I'")
    try:
        n, m, m_I = (int(tok) for tok in head)
    except ValueError:
        raise FormatError(f"line {lineno}: header values must be integers") from None
    if n <= 0 or m < 0 or m_I < 0:
        raise FormatError(f"line {lineno}: invalid dimensions")

    body = iter(lines[1:])

    where = {}

    def take(expected, what):
        try:
            ln, toks = next(body)
        except StopIteration:
            raise FormatError(f"unexpected end of file while reading {what}") from None
        where[what] = ln
        return _numbers(toks, ln, expected, what)

    A = [take(n, f"row {i + 1} of A") for i in range(m)]
    b = take(m, "b") if m else []
    A_I = [take(n, f"row {i + 1} of A_I") for i in range(m_I)]
    lower = take(m_I, "lower") if m_I else []
    upper = take(m_I, "upper") if m_I else []
    xbar = take(n, "xbar")
    extra = next(body, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: unexpected trailing data")
    try:
        return FeasibleRegion.build(n, np.array(A).reshape(m, n), np.array(b),
                                    np.array(A_I).reshape(m_I, n), np.array(lower),
                                    np.array(upper), xbar=np.array(xbar))
    except InfeasiblePointError as err:
        raise FormatError(f"line {where['xbar']}: {err}") from None
    except RegionError as err:
        raise FormatError(f"line {lineno}: {err}") from None


def tokenize(text):
    """Yield ``(lineno, tokens)`` for non-empty, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def loads_region(text: str) -> FeasibleRegion:
    return parse_region_lines(tokenize(text))


def load_region(path) -> FeasibleRegion:
    with open(path) as fh:
        return loads_region(fh.read())


def _fmt(values):
    return " ".join(repr(float(v)) for v in values)


def dumps_region(region: FeasibleRegion) -> str:
    out = [f"{region.n} {region.m} {region.m_I}"]
    out += [_fmt(row) for row in region.A]
    if region.m:
        out.append(_fmt(region.b))
    out += [_fmt(row) for row in region.A_I]
    if region.m_I:
        out.append(_fmt(region.lower))
        out.append(_fmt(region.upper))
    out.append(_fmt(region.xbar))
    return "\n".join(out) + "\n"


def save_region(region: FeasibleRegion, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_region(region))
