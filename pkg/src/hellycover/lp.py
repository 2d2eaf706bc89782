"""Exact rational simplex for packing LPs ``max 1.y  s.t.  A y <= 1, y >= 0``.

``A`` is a 0/1 matrix given column-wise. The right-hand side is all ones, so
the slack basis is feasible and no phase one is needed. Bland's rule rules
out cycling. The optimal dual (one value per row) is read off the objective
row, which is what the fractional cover solver reports as vertex weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class PackingSolution:
    value: Fraction
    primal: tuple[Fraction, ...]  # one per column
    dual: tuple[Fraction, ...]  # one per row
    pivots: int


def solve_packing(n_rows: int, columns: Sequence[Sequence[int]], max_pivots: int = 100_000) -> PackingSolution:
    n_cols = len(columns)
    width = n_cols + n_rows
    tableau = []
    for i in range(n_rows):
        row = [_ZERO] * (width + 1)
        row[n_cols + i] = _ONE
        row[width] = _ONE
        tableau.append(row)
    for j, col in enumerate(columns):
        for i in col:
            tableau[i][j] += 1
    obj = [_ZERO] * (width + 1)
    for j in range(n_cols):
        obj[j] = -_ONE
    basis = [n_cols + i for i in range(n_rows)]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(n_rows):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][width] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio, leaving = ratio, i
        if leaving is None:  # unbounded; impossible for a packing LP with nonempty columns
            raise ValueError("packing LP is unbounded: a column has no nonzero entry")
        pivots += 1
        if pivots > max_pivots:
            raise BudgetExceeded("simplex pivot budget exhausted", consumed=pivots)
        prow = tableau[leaving]
        pv = prow[entering]
        if pv != 1:
            prow = [x / pv for x in prow]
            tableau[leaving] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i in range(n_rows):
            if i == leaving:
                continue
            row = tableau[i]
            f = row[entering]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = obj[entering]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[leaving] = entering

    primal = [_ZERO] * n_cols
    for i, b in enumerate(basis):
        if b < n_cols:
            primal[b] = tableau[i][width]
    dual = tuple(obj[n_cols + i] for i in range(n_rows))
    return PackingSolution(obj[width], tuple(primal), dual, pivots)
