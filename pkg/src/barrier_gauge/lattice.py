"""Intersection lattice of a hyperplane arrangement.

Flats are the nonzero linear subspaces of C^{n+1} cut out by some nonempty set
of hyperplanes. Each flat is keyed by the RREF basis of the span of its
normals. Order is subspace containment: ``u <= v`` iff ``u`` is contained in
``v``, so hyperplanes are the maximal elements and points the minimal ones.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any

from barrier_gauge.arrangement import Arrangement
from barrier_gauge.linalg import Row, extend_rref, in_span, pivots
from barrier_gauge.rational import format_rational


@dataclass(frozen=True)
class Flat:
    support: tuple[int, ...]
    codim: int
    basis: tuple[Row, ...]

    @property
    def key(self) -> tuple[Row, ...]:
        return self.basis

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.codim, self.support)

    def contains_normal(self, normal) -> bool:
        return in_span(normal, self.basis)

    def is_subspace_of(self, other: "Flat") -> bool:
        """True iff this flat's subspace lies inside ``other``'s (normal span of ``other`` inside ours)."""
        piv = pivots(self.basis)
        return all(in_span(row, self.basis, piv) for row in other.basis)

    def to_dict(self) -> dict[str, Any]:
        return {
            "support": list(self.support),
            "codim": self.codim,
            "basis": [[format_rational(x) for x in row] for row in self.basis],
        }


def _primitive(vec) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _restrict(kernel: list[tuple[int, ...]], a: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Integer basis of ``{x in span(kernel) : a . x = 0}``, fraction-free."""
    s = [sum(x * y for x, y in zip(a, k)) for k in kernel]
    m0 = next((m for m, v in enumerate(s) if v != 0), None)
    if m0 is None:
        return kernel
    out = []
    for m, k in enumerate(kernel):
        if m == m0:
            continue
        if s[m] == 0:
            out.append(k)
        else:
            out.append(_primitive([s[m0] * x - s[m] * y for x, y in zip(k, kernel[m0])]))
    return out


def _support(kernel: list[tuple[int, ...]], normals: list[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(normals) if all(sum(x * y for x, y in zip(a, k)) == 0 for k in kernel))


@dataclass(frozen=True, eq=False)
class IntersectionLattice:
    arrangement: Arrangement
    flats: tuple[Flat, ...]

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.flats) if f.codim == 1)

    @cached_property
    def index(self) -> dict[tuple[Row, ...], int]:
        return {f.key: i for i, f in enumerate(self.flats)}

    def leq(self, i: int, j: int) -> bool:
        """``flats[i] <= flats[j]``, decided by an exact containment test."""
        return i == j or self.flats[i].is_subspace_of(self.flats[j])

    @cached_property
    def order(self) -> tuple[tuple[int, int], ...]:
        """All strict relations ``(i, j)`` with ``flats[i] < flats[j]``."""
        pairs = []
        for i, u in enumerate(self.flats):
            for j, v in enumerate(self.flats):
                if v.codim < u.codim and u.is_subspace_of(v):
                    pairs.append((i, j))
        return tuple(pairs)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        # the lattice is graded by codimension, so covers differ by exactly one
        return tuple((i, j) for i, j in self.order if self.flats[i].codim == self.flats[j].codim + 1)

    def by_codim(self, codim: int) -> list[Flat]:
        return [f for f in self.flats if f.codim == codim]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "ell": self.arrangement.ell,
            "flats": [f.to_dict() for f in self.flats],
            "covers": [list(p) for p in self.covers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self, labels: dict[int, str] | None = None) -> str:
        """Hasse diagram as a DOT digraph, edges pointing from a flat up to the flats containing it."""
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for i, f in enumerate(self.flats):
            label = labels.get(i) if labels else None
            if label is None:
                label = "H{" + ",".join(map(str, f.support)) + "}\\ncodim " + str(f.codim)
            lines.append(f'  f{i} [label="{label}"];')
        for i, j in self.covers:
            lines.append(f"  f{i} -> f{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_lattice(arr: Arrangement) -> IntersectionLattice:
    """All distinct nonzero intersections of the arrangement's hyperplanes.

    Works level by level: every flat of codimension ``c + 1`` is a codim-``c``
    flat cut with one more hyperplane, so sweeping (flat x hyperplane) pairs
    reaches every flat without touching subsets. The sweep tracks each
    subspace by an integer kernel basis and deduplicates on the saturated
    support, which determines the flat as uniquely as its RREF key does; the
    exact RREF basis is computed once per new flat.
    """
    normals = arr.normals
    int_normals = [_primitive(a) for a in normals]
    dim = arr.n + 1
    identity = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    seen: set[tuple[int, ...]] = set()
    flats: list[Flat] = []
    level: list[tuple[Flat, list[tuple[int, ...]]]] = []
    for a, ia in zip(normals, int_normals):
        kernel = _restrict(identity, ia)
        f = Flat(_support(kernel, int_normals), 1, (a,))
        seen.add(f.support)
        flats.append(f)
        level.append((f, kernel))
    codim = 1
    while level and codim + 1 < dim:
        nxt = []
        for f, kernel in level:
            for i, ia in enumerate(int_normals):
                if i in f.support:
                    continue
                sub = _restrict(kernel, ia)
                support = _support(sub, int_normals)
                if support in seen:
                    continue
                seen.add(support)
                g = Flat(support, codim + 1, tuple(extend_rref(f.basis, normals[i])))
                flats.append(g)
                nxt.append((g, sub))
        level = nxt
        codim += 1
    return IntersectionLattice(arr, tuple(sorted(flats, key=lambda f: f.sort_key)))
