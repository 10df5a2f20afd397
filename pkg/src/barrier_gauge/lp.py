"""Exact rational linear programming: dense two-phase simplex with Bland's rule.

Problems are small (one row per flat), so a dense ``Fraction`` tableau is fine
and Bland's rule guarantees termination without any tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(rows: list[Vector], obj: Vector, basis: list[int], r: int, c: int) -> None:
    piv = rows[r][c]
    rows[r] = [x / piv for x in rows[r]]
    prow = rows[r]
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[r] = c


def _reduced_costs(rows: list[Vector], basis: list[int], cost: Vector) -> Vector:
    obj = list(cost) + [Fraction(0)]
    for r, b in enumerate(basis):
        cb = cost[b]
        if cb:
            obj = [a - cb * x for a, x in zip(obj, rows[r])]
    return obj


def _run(rows: list[Vector], obj: Vector, basis: list[int], allowed: int) -> bool:
    """Maximize in place; returns False when unbounded. Only columns < ``allowed`` may enter."""
    while True:
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return True
        best = None
        for r, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return False
        _pivot(rows, obj, basis, best[1], enter)


def maximize(
    c: Sequence[Fraction],
    A_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> LPResult:
    """Maximize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``, ``x >= 0``."""
    nvar = len(c)
    n_ub, n_eq = len(A_ub), len(A_eq)
    n_slack = n_ub
    art_rows = [i for i in range(n_ub) if b_ub[i] < 0] + [n_ub + i for i in range(n_eq)]
    n_art = len(art_rows)
    width = nvar + n_slack + n_art
    rows: list[Vector] = []
    basis: list[int] = []
    art_col = nvar + n_slack
    for i in range(n_ub):
        sign = -1 if b_ub[i] < 0 else 1
        row = [Fraction(sign * x) for x in A_ub[i]] + [Fraction(0)] * (n_slack + n_art) + [Fraction(sign * b_ub[i])]
        row[nvar + i] = Fraction(sign)
        if sign < 0:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(nvar + i)
        rows.append(row)
    for i in range(n_eq):
        sign = -1 if b_eq[i] < 0 else 1
        row = [Fraction(sign * x) for x in A_eq[i]] + [Fraction(0)] * (n_slack + n_art) + [Fraction(sign * b_eq[i])]
        row[art_col] = Fraction(1)
        basis.append(art_col)
        art_col += 1
        rows.append(row)

    if n_art:
        phase1 = [Fraction(0)] * (nvar + n_slack) + [Fraction(-1)] * n_art
        obj = _reduced_costs(rows, basis, phase1)
        _run(rows, obj, basis, width)
        if obj[-1] != 0:  # -(phase-one optimum); nonzero means artificials stay positive
            return LPResult("infeasible")
        first_art = nvar + n_slack
        for r in reversed(range(len(rows))):
            if basis[r] >= first_art:
                col = next((j for j in range(first_art) if rows[r][j] != 0), None)
                if col is None:
                    del rows[r], basis[r]  # redundant equality
                else:
                    _pivot(rows, obj, basis, r, col)
        rows = [row[:first_art] + [row[-1]] for row in rows]
        width = first_art

    cost = [Fraction(x) for x in c] + [Fraction(0)] * (width - nvar)
    obj = _reduced_costs(rows, basis, cost)
    if not _run(rows, obj, basis, width):
        return LPResult("unbounded")
    x = [Fraction(0)] * width
    for r, b in enumerate(basis):
        x[b] = rows[r][-1]
    return LPResult("optimal", tuple(x[:nvar]), -obj[-1])
