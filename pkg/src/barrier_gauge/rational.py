"""Exact rational helpers on top of :class:`fractions.Fraction`.

``Fraction`` already keeps numerator and denominator reduced with a positive
denominator, so it is used directly as the scalar type everywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

RATIONAL_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")

RationalLike = Union[Fraction, int, str]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; anything else (floats, spaces, ``+``) is rejected."""
    if not isinstance(text, str) or not RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}: expected -?[0-9]+(/[1-9][0-9]*)?")
    return Fraction(text)


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def ceil_q(q: Fraction) -> int:
    # floor division on integers is exact for either sign of the numerator
    return -((-q.numerator) // q.denominator)


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Generator of the additive group spanned by ``values`` (its positive generator)."""
    vals = [to_rational(v) for v in values]
    if not vals:
        raise ValueError("gcd of an empty collection")
    common = math.lcm(*(v.denominator for v in vals))
    g = math.gcd(*(v.numerator * (common // v.denominator) for v in vals))
    return Fraction(g, common)
