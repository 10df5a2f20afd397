"""Hyperplane arrangements in CP^n with rational normals and divisor multiplicities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from barrier_gauge.rational import RationalLike, format_rational, parse_rational, to_rational


class ArrangementError(ValueError):
    """Invalid arrangement input. ``where`` locates the offending field."""

    def __init__(self, where: str, reason: str):
        super().__init__(f"{where}: {reason}")
        self.where = where
        self.reason = reason


def canonical_normal(normal: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Scale so the first nonzero entry is 1. Raises ValueError on the zero vector."""
    vec = tuple(to_rational(x) for x in normal)
    lead = next((x for x in vec if x != 0), None)
    if lead is None:
        raise ValueError("zero normal")
    return tuple(x / lead for x in vec)


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[Fraction, ...]
    multiplicity: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "normal", canonical_normal(self.normal))
        m = to_rational(self.multiplicity)
        if m <= 0:
            raise ValueError(f"multiplicity must be positive, got {format_rational(m)}")
        object.__setattr__(self, "multiplicity", m)


@dataclass(frozen=True)
class Arrangement:
    n: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if not isinstance(self.n, int) or self.n < 1:
            raise ArrangementError("n", f"ambient dimension must be an integer >= 1, got {self.n!r}")
        if not self.hyperplanes:
            raise ArrangementError("hyperplanes", "empty hyperplane list")
        seen: dict[tuple[Fraction, ...], int] = {}
        for i, h in enumerate(self.hyperplanes):
            if len(h.normal) != self.n + 1:
                raise ArrangementError(
                    f"hyperplanes[{i}].normal", f"expected {self.n + 1} entries, got {len(h.normal)}"
                )
            if h.normal in seen:
                raise ArrangementError(
                    f"hyperplanes[{i}]",
                    f"duplicate hyperplane: proportional to hyperplanes[{seen[h.normal]}]",
                )
            seen[h.normal] = i

    @classmethod
    def from_normals(
        cls,
        n: int,
        normals: Iterable[Sequence[RationalLike]],
        multiplicities: Sequence[RationalLike] | None = None,
    ) -> "Arrangement":
        normals = list(normals)
        if multiplicities is None:
            multiplicities = [1] * len(normals)
        if len(multiplicities) != len(normals):
            raise ArrangementError("multiplicities", f"expected {len(normals)} values, got {len(multiplicities)}")
        hs = []
        for i, (a, d) in enumerate(zip(normals, multiplicities)):
            try:
                hs.append(Hyperplane(tuple(to_rational(x) for x in a), to_rational(d)))
            except (ValueError, TypeError) as exc:
                raise ArrangementError(f"hyperplanes[{i}]", str(exc)) from None
        return cls(n, tuple(hs))

    @property
    def ell(self) -> int:
        return len(self.hyperplanes)

    @property
    def normals(self) -> list[tuple[Fraction, ...]]:
        return [h.normal for h in self.hyperplanes]

    @property
    def multiplicities(self) -> list[Fraction]:
        return [h.multiplicity for h in self.hyperplanes]

    def with_multiplicities(self, multiplicities: Sequence[RationalLike]) -> "Arrangement":
        return Arrangement.from_normals(self.n, self.normals, multiplicities)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "hyperplanes": [
                {
                    "normal": [format_rational(x) for x in h.normal],
                    "multiplicity": format_rational(h.multiplicity),
                }
                for h in self.hyperplanes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def arrangement_from_dict(doc: Any) -> Arrangement:
    if not isinstance(doc, dict):
        raise ArrangementError("document", "top level must be a JSON object")
    if "n" not in doc:
        raise ArrangementError("n", "missing field")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ArrangementError("n", f"must be an integer, got {n!r}")
    if n < 1:
        raise ArrangementError("n", f"ambient dimension must be >= 1, got {n}")
    raw = doc.get("hyperplanes")
    if not isinstance(raw, list):
        raise ArrangementError("hyperplanes", "missing or not a list")
    if not raw:
        raise ArrangementError("hyperplanes", "empty hyperplane list")
    hs = []
    for i, entry in enumerate(raw):
        where = f"hyperplanes[{i}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("normal"), list):
            raise ArrangementError(where, "expected an object with a 'normal' list")
        normal = []
        for j, s in enumerate(entry["normal"]):
            try:
                normal.append(parse_rational(s))
            except ValueError as exc:
                raise ArrangementError(f"{where}.normal[{j}]", str(exc)) from None
        if len(normal) != n + 1:
            raise ArrangementError(f"{where}.normal", f"expected {n + 1} entries, got {len(normal)}")
        if not any(normal):
            raise ArrangementError(f"{where}.normal", "zero normal")
        try:
            mult = parse_rational(entry.get("multiplicity", "1"))
        except ValueError as exc:
            raise ArrangementError(f"{where}.multiplicity", str(exc)) from None
        if mult <= 0:
            raise ArrangementError(f"{where}.multiplicity", "multiplicity must be positive")
        hs.append(Hyperplane(tuple(normal), mult))
    return Arrangement(n, tuple(hs))


def parse_arrangement(text: str) -> Arrangement:
    """Parse the JSON input document into a validated :class:`Arrangement`.

    Rationals are strings ``"p"`` or ``"p/q"``; ``multiplicity`` defaults to 1.
    Errors raise :class:`ArrangementError` naming the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    return arrangement_from_dict(doc)
