"""Built-in arrangements."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable

from barrier_gauge.arrangement import Arrangement, ArrangementError


def _line_through(p, q) -> tuple[Q, Q, Q]:
    # cross product of [x:y:1] lifts
    x1, y1 = map(Q, p)
    x2, y2 = map(Q, q)
    return (y1 - y2, x2 - x1, x1 * y2 - x2 * y1)


# Lines of the four line-arrangement pictures, as affine segments.
_FIG_BASE = [((0, 0), (2, 3)), ((1, 3), (3, 0)), ((0, Q(1, 2)), (3, Q(1, 2)))]
_FIG_SEGMENTS = {
    # concurrent triple listed first, the fourth line last
    "figure1a": [_FIG_BASE[0], _FIG_BASE[1], ((Q(3, 2), 0), (Q(3, 2), 3)), _FIG_BASE[2]],
    "figure1b": _FIG_BASE + [((Q(3, 2), 0), (Q(3, 2), 3)), ((0, Q(1, 4)), (3, Q(5, 2)))],
    "figure1c": _FIG_BASE + [((1, 0), (Q(5, 3), 3)), ((2, 0), (Q(4, 3), 3))],
    "figure1d": _FIG_BASE + [((1, 0), (Q(5, 3), 3)), ((2, 0), (Q(4, 3), 3)), ((0, Q(1, 4)), (3, Q(5, 2)))],
}
FIGURE_INCIDENCE = {"figure1a": (4, 3), "figure1b": (5, 3), "figure1c": (5, 4), "figure1d": (6, 4)}


def generic(n: int, ell: int) -> Arrangement:
    """Vandermonde normals (1, t, ..., t^n) at t = 1..ell: every n+1 of them are independent."""
    if n < 1:
        raise ArrangementError("n", f"must be >= 1, got {n}")
    if ell < 1:
        raise ArrangementError("l", f"must be >= 1, got {ell}")
    return Arrangement.from_normals(n, [[t**k for k in range(n + 1)] for t in range(1, ell + 1)])


def coordinate(n: int) -> Arrangement:
    if n < 1:
        raise ArrangementError("n", f"must be >= 1, got {n}")
    return Arrangement.from_normals(n, [[int(i == j) for j in range(n + 1)] for i in range(n + 1)])


def braid(n: int) -> Arrangement:
    """Hyperplanes z_i = z_j (0 <= i < j <= n+1) inside {sum z = 0} of C^{n+2}.

    The subspace is parametrized by y in C^{n+1} via z_k = y_k for k <= n and
    z_{n+1} = -sum(y), which turns z_i = z_j into y_i - y_j = 0 and
    z_i = z_{n+1} into y_i + sum(y) = 0.
    """
    if n < 1:
        raise ArrangementError("n", f"must be >= 1, got {n}")
    normals = []
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            if j <= n:
                normals.append([int(k == i) - int(k == j) for k in range(n + 1)])
            else:
                normals.append([1 + int(k == i) for k in range(n + 1)])
    return Arrangement.from_normals(n, normals)


def figure(name: str) -> Arrangement:
    return Arrangement.from_normals(2, [_line_through(p, q) for p, q in _FIG_SEGMENTS[name]])


@dataclass(frozen=True)
class Example:
    name: str
    params: tuple[str, ...]
    summary: str
    build: Callable[..., Arrangement]


CATALOG: dict[str, Example] = {
    "generic": Example("generic", ("n", "l"), "l hyperplanes in general position in CP^n (Vandermonde normals)", generic),
    "coordinate": Example("coordinate", ("n",), "the n+1 coordinate hyperplanes (toric boundary)", coordinate),
    "braid": Example("braid", ("n",), "A_{n+2} arrangement z_i = z_j inside {sum z = 0}", braid),
}
for _name, (_l, _k) in FIGURE_INCIDENCE.items():
    CATALOG[_name] = Example(_name, (), f"line arrangement in CP^2 with (l,k)=({_l},{_k})", lambda _n=_name: figure(_n))


def generate_named(name: str, *params: int) -> Arrangement:
    """Build a catalogued arrangement, e.g. ``generate_named("generic", 2, 5)``."""
    try:
        ex = CATALOG[name]
    except KeyError:
        raise ArrangementError("name", f"unknown arrangement {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    if len(params) != len(ex.params):
        raise ArrangementError("params", f"{name} takes ({', '.join(ex.params)}), got {len(params)} values")
    return ex.build(*params)
