"""Exact sparse row reduction.

Rows are dicts ``{column: value}``. Elimination is fraction-free: rows are
scaled to primitive integer vectors and combined with integer multipliers;
only the final normalization to reduced row-echelon form divides. Pivots
are the leftmost nonzero column, with ties going to the earliest row.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Row = Dict[int, Fraction]


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    """Divide an integer row by its content, making the leading entry positive."""
    row = {c: v for c, v in row.items() if v != 0}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    return {c: v // g for c, v in row.items()}


def _integerize(row: Row) -> Dict[int, int]:
    lcm = 1
    for v in row.values():
        lcm = lcm * Fraction(v).denominator // math.gcd(lcm, Fraction(v).denominator)
    return _primitive({c: int(Fraction(v) * lcm) for c, v in row.items()})


def echelon(rows: Sequence[Row]) -> Dict[int, Dict[int, int]]:
    """Fraction-free echelon basis of the row span, keyed by pivot column."""
    pivots: Dict[int, Dict[int, int]] = {}
    for raw in rows:
        r = _integerize(raw)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            a, b = p[lead], r[lead]
            # r <- a*r - b*p kills the lead entry without leaving the integers.
            out = {c: a * v for c, v in r.items()}
            for c, v in p.items():
                out[c] = out.get(c, 0) - b * v
            r = _primitive(out)
    return pivots


def rref(rows: Sequence[Row]) -> List[Row]:
    """Reduced row-echelon basis of the row span, ordered by pivot column."""
    piv = echelon(rows)
    order = sorted(piv)
    red: Dict[int, Row] = {}
    for col in reversed(order):
        lead = piv[col][col]
        row = {c: Fraction(v, lead) for c, v in piv[col].items()}
        for c2 in [c for c in row if c != col and c in red]:
            f = row[c2]
            for c, v in red[c2].items():
                row[c] = row.get(c, Fraction(0)) - f * v
        red[col] = {c: v for c, v in sorted(row.items()) if v != 0}
    return [red[c] for c in order]


def rank(rows: Sequence[Row]) -> int:
    return len(echelon(rows))


def nullspace(rows: Sequence[Row], ncols: int) -> List[Row]:
    """Basis of ``{v : r . v = 0 for every row r}``, one vector per free column."""
    R = rref(rows)
    pivot_of = {min(r): r for r in R}
    out = []
    for free in range(ncols):
        if free in pivot_of:
            continue
        v = {free: Fraction(1)}
        for col, r in pivot_of.items():
            if free in r:
                v[col] = -r[free]
        out.append(dict(sorted(v.items())))
    return out


def dot(row: Row, vec: Dict[int, Fraction]) -> Fraction:
    if len(vec) < len(row):
        row, vec = vec, row
    return sum((v * vec[c] for c, v in row.items() if c in vec), Fraction(0))


def dense(row: Row, ncols: int) -> Tuple[Fraction, ...]:
    return tuple(row.get(c, Fraction(0)) for c in range(ncols))
