"""Exact linear algebra over Q.

All routines take rows as sequences of ``Fraction`` and never pivot by
magnitude, so results depend only on the input, not on rounding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = tuple[Fraction, ...]


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[Row], int]:
    """Reduced row echelon form and rank.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right and rows top to bottom. Zero rows are dropped from the result, so
    ``len(rows) == rank``.
    """
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return [], 0
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        src = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        piv = rows[pivot_row][col]
        if piv != 1:
            rows[pivot_row] = [x / piv for x in rows[pivot_row]]
        prow = rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    basis = [tuple(r) for r in rows[:pivot_row]]
    return basis, pivot_row


def pivots(basis: Sequence[Row]) -> list[int]:
    return [next(i for i, x in enumerate(r) if x != 0) for r in basis]


def reduce_vector(vec: Sequence[Fraction], basis: Sequence[Row], pivot_cols: Sequence[int] | None = None) -> Row:
    """Remainder of ``vec`` after elimination against an RREF ``basis``."""
    if pivot_cols is None:
        pivot_cols = pivots(basis)
    out = list(vec)
    for row, p in zip(basis, pivot_cols):
        f = out[p]
        if f != 0:
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


def in_span(vec: Sequence[Fraction], basis: Sequence[Row], pivot_cols: Sequence[int] | None = None) -> bool:
    return not any(reduce_vector(vec, basis, pivot_cols))


def extend_rref(basis: Sequence[Row], vec: Sequence[Fraction]) -> list[Row] | None:
    """RREF of ``basis`` plus ``vec``; ``None`` when ``vec`` is already in the span."""
    piv = pivots(basis)
    rem = reduce_vector(vec, basis, piv)
    lead = next((i for i, x in enumerate(rem) if x != 0), None)
    if lead is None:
        return None
    scale = rem[lead]
    new = tuple(x / scale for x in rem)
    out = []
    for row in basis:
        f = row[lead]
        out.append(tuple(a - f * b for a, b in zip(row, new)) if f != 0 else row)
    out.append(new)
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x != 0))
    return out


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[Row]:
    """Basis of ``{x : matrix @ x = 0}``, one vector per free column."""
    basis, _ = rref(matrix)
    piv = pivots(basis)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for row, p in zip(basis, piv):
            x[p] = -row[fc]
        out.append(tuple(x))
    return out


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def gram_schmidt(rows: Sequence[Sequence[Fraction]]) -> list[Row]:
    """Orthogonal (unnormalized) basis of the row span; dependent rows are dropped."""
    out: list[Row] = []
    for r in rows:
        v = [Fraction(x) for x in r]
        for q in out:
            c = dot(v, q) / dot(q, q)
            if c:
                v = [a - c * b for a, b in zip(v, q)]
        if any(v):
            out.append(tuple(v))
    return out


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return rref(matrix)[1]


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in matrix]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        src = next((r for r in range(c, n) if m[r][c] != 0), None)
        if src is None:
            return Fraction(0)
        if src != c:
            m[c], m[src] = m[src], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return result
