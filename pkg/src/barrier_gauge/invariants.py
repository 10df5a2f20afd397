"""Barrier invariants and Gromov-width bounds.

Everything here is exact: inputs and outputs are ``Fraction`` and the only
rounding is the rational ceiling in the width bounds.

Conventions: ``omega(CP^1) = 1``, so ``W_G(CP^n) = 1``; the minimal Chern
number of CP^n is ``n + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from barrier_gauge.lattice import Flat, IntersectionLattice
from barrier_gauge.lp import maximize
from barrier_gauge.rational import RationalLike, ceil_q, format_rational, rational_gcd, to_rational

BARRIER = "Barrier"
INCONCLUSIVE = "Inconclusive"
NOT_APPLICABLE = "not applicable"
PAIR_CAVEAT = (
    "lower-bound candidate from the orthogonal-pair ball embedding; the normalization of the "
    "line actions is not pinned down, so tightness is not asserted"
)


@dataclass(frozen=True)
class CoefficientSystem:
    """Lifts of [omega] (``kappa``) and 2c_1 (``lam``) as positive weights on the components."""

    kappa: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        for name in ("kappa", "lam"):
            vals = tuple(to_rational(x) for x in getattr(self, name))
            object.__setattr__(self, name, vals)
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not (len(self.kappa) == len(self.lam) == len(self.degrees)):
            raise ValueError("kappa, lam and degrees must have the same length")
        if not self.kappa:
            raise ValueError("empty coefficient system")
        if any(x <= 0 for x in self.kappa + self.lam) or any(d <= 0 for d in self.degrees):
            raise ValueError("all coefficients and degrees must be positive")

    def check(self, chern_min: int) -> None:
        """Verify the two degree constraints: omega(line) = 1 and 2c_1(line) = 2 N_M."""
        if sum(k * d for k, d in zip(self.kappa, self.degrees)) != 1:
            raise ValueError("kappa does not pair to 1 with a line")
        if sum(x * d for x, d in zip(self.lam, self.degrees)) != 2 * chern_min:
            raise ValueError(f"lambda does not pair to {2 * chern_min} with a line")

    @property
    def uniform(self) -> bool:
        return len(set(self.kappa)) == 1 and len(set(self.lam)) == 1


def _normalized(multiplicities: Sequence[Fraction], degrees: Sequence[int], chern_min: int) -> CoefficientSystem:
    mult = [to_rational(d) for d in multiplicities]
    if any(d <= 0 for d in mult):
        raise ValueError("multiplicities must be positive")
    total = sum((d * g for d, g in zip(mult, degrees)), Fraction(0))
    c = CoefficientSystem(
        tuple(d / total for d in mult),
        tuple(2 * chern_min * d / total for d in mult),
        tuple(degrees),
    )
    c.check(chern_min)
    return c


def normalize(arr) -> CoefficientSystem:
    """kappa_i = d_i / sum(d), lambda_i = 2(n+1) d_i / sum(d) for an arrangement with multiplicities d."""
    return _normalized(arr.multiplicities, [1] * arr.ell, arr.n + 1)


def with_lambda(c: CoefficientSystem, lam: Sequence[RationalLike]) -> CoefficientSystem:
    return CoefficientSystem(c.kappa, tuple(to_rational(x) for x in lam), c.degrees)


@dataclass(frozen=True)
class StratumInvariants:
    support: tuple[int, ...]
    w: int
    kappa_v: Fraction
    lambda_v: Fraction
    ratio: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "support": list(self.support),
            "w": self.w,
            "kappa_v": format_rational(self.kappa_v),
            "lambda_v": format_rational(self.lambda_v),
            "ratio": format_rational(self.ratio),
        }


def _stratum(support: Iterable[int], w: int, c: CoefficientSystem) -> StratumInvariants:
    support = tuple(support)
    kv = sum((c.kappa[i] for i in support), Fraction(0))
    lv = sum((c.lam[i] for i in support), Fraction(0))
    return StratumInvariants(support, w, kv, lv, (lv - 2 * w) / lv)


def stratum_invariants(lat: IntersectionLattice, c: CoefficientSystem) -> list[StratumInvariants]:
    if len(c.kappa) != lat.arrangement.ell:
        raise ValueError("coefficient system and lattice refer to different arrangements")
    return [_stratum(f.support, f.codim, c) for f in lat.flats]


def _max_ratio(strata: Sequence[StratumInvariants]) -> tuple[Fraction, int]:
    if not strata:
        raise ValueError("empty lattice")
    best = 0
    for i, s in enumerate(strata):
        # strict comparison keeps the first (smallest codim, then support) on ties
        if s.ratio > strata[best].ratio:
            best = i
    return strata[best].ratio, best


def sigma_crit(lat: IntersectionLattice, c: CoefficientSystem) -> tuple[Fraction, Flat]:
    """Exact max over all flats of (lambda_v - 2 w_v) / lambda_v, with the first flat attaining it."""
    value, i = _max_ratio(stratum_invariants(lat, c))
    return value, lat.flats[i]


def kappa_min(c: CoefficientSystem | Sequence[RationalLike]) -> Fraction:
    """Smallest positive integer combination of the kappa_i, i.e. their rational gcd."""
    kappa = c.kappa if isinstance(c, CoefficientSystem) else c
    return rational_gcd(kappa)


def m_of_D(lat: IntersectionLattice) -> Fraction:
    """min over flats of codim / |support|; equals 1 exactly for normal crossings."""
    if not lat.flats:
        raise ValueError("empty lattice")
    return min(Fraction(f.codim, len(f.support)) for f in lat.flats)


def width_bound_sublevel(
    sigma: RationalLike, omega_a: RationalLike, chern_min: int, sc: RationalLike, kmin: RationalLike
) -> Optional[Fraction]:
    """Upper bound on the Gromov width of the sublevel region {rho > sigma}.

    Returns ``None`` (not applicable) when ``sc > 0``.
    """
    sigma, omega_a, sc, kmin = (to_rational(x) for x in (sigma, omega_a, sc, kmin))
    if not 0 <= sigma < 1:
        raise ValueError("sigma must lie in [0, 1)")
    if sc > 0:
        return None
    return omega_a - 2 * sigma * chern_min - (1 - sigma) * ceil_q(1 - sc * chern_min) * kmin


def width_bound_projective(n: int, sc: RationalLike, kmin: RationalLike) -> Optional[Fraction]:
    """Bound on W_G(CP^n minus the skeleton): 1 - ceil(1 - sc (n+1)) kmin, or ``None`` if sc > 0."""
    sc, kmin = to_rational(sc), to_rational(kmin)
    if sc > 0:
        return None
    return 1 - ceil_q(1 - sc * (n + 1)) * kmin


@dataclass(frozen=True)
class CorollaryCheck:
    id: str
    applicable: bool
    formula_sigma: Optional[Fraction] = None
    formula_value: Optional[Fraction] = None
    theorem_value: Optional[Fraction] = None
    matched: bool = False
    reasons: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        def fmt(q):
            return None if q is None else format_rational(q)

        return {
            "id": self.id,
            "applicable": self.applicable,
            "formula_sigma": fmt(self.formula_sigma),
            "formula_value": fmt(self.formula_value),
            "theorem_value": fmt(self.theorem_value),
            "matched": self.matched,
            "reasons": list(self.reasons),
        }


def _check(cid, reasons, f_sigma, f_value, sc, theorem_value) -> CorollaryCheck:
    if reasons:
        return CorollaryCheck(cid, False, reasons=tuple(reasons))
    matched = f_sigma == sc and f_value == theorem_value
    return CorollaryCheck(cid, True, f_sigma, f_value, theorem_value, matched)


def corollary_bounds(lat: IntersectionLattice, c: CoefficientSystem) -> dict[str, CorollaryCheck]:
    """Closed forms of the arrangement corollaries, each cross-checked against the general bound."""
    n, ell = lat.n, lat.arrangement.ell
    sc, _ = sigma_crit(lat, c)
    bound = width_bound_projective(n, sc, kappa_min(c))
    uniform = [] if c.uniform else ["multiplicities are not uniform"]
    out = {}

    reasons = list(uniform)
    if ell < n + 1:
        reasons.append(f"needs l >= n+1 = {n + 1} hyperplanes, got {ell}")
    bad = [f for f in lat.flats if len(f.support) != f.codim]
    if bad:
        reasons.append(f"not in general position: flat on hyperplanes {list(bad[0].support)} has codim {bad[0].codim}")
    out["generic_hyperplanes"] = _check(
        "generic_hyperplanes", reasons, Fraction(n + 1 - ell, n + 1), Fraction(n, ell), sc, bound
    )

    m = m_of_D(lat)
    reasons = list(uniform)
    if ell * m < n + 1:
        reasons.append(f"l*m(D) = {format_rational(ell * m)} < n+1 = {n + 1}")
    out["degenerate_hyperplanes"] = _check(
        "degenerate_hyperplanes",
        reasons,
        (n + 1 - ell * m) / (n + 1),
        Fraction(n, ell) + 1 - Fraction(ceil_q(ell * m), ell),
        sc,
        bound,
    )

    reasons = list(uniform)
    if n != 2:
        reasons.append(f"line configurations need n = 2, got n = {n}")
        out["line_configurations"] = _check("line_configurations", reasons, None, None, sc, bound)
    else:
        points = [len(f.support) for f in lat.flats if f.codim == 2]
        k = max(points, default=1)
        if k < 2:
            reasons.append("no intersection points")
        elif 2 * ell < 3 * k:
            reasons.append(f"2l = {2 * ell} < 3k = {3 * k}")
        f_sigma = Fraction(3 * k - 2 * ell, 3 * k) if k else None
        f_value = Fraction(2, ell) + 1 - Fraction(ceil_q(Fraction(2 * ell, k)), ell) if k else None
        out["line_configurations"] = _check("line_configurations", reasons, f_sigma, f_value, sc, bound)
    return out


@dataclass(frozen=True)
class AbstractDivisor:
    """A divisor given only by its stratification data.

    ``components`` lists ``(degree, multiplicity)`` per irreducible component;
    ``strata`` lists ``(support, w)`` with supports already saturated.
    ``chern_min`` (N_M) must be supplied: it is never inferred.
    """

    n: int
    components: tuple[tuple[int, Fraction], ...]
    strata: tuple[tuple[tuple[int, ...], int], ...]
    chern_min: int
    omega_a: Fraction = Fraction(1)

    def __post_init__(self):
        comps = tuple((int(g), to_rational(m)) for g, m in self.components)
        strata = tuple((tuple(sorted(set(s))), int(w)) for s, w in self.strata)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "strata", strata)
        object.__setattr__(self, "omega_a", to_rational(self.omega_a))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not comps:
            raise ValueError("at least one component is required")
        if self.chern_min < 1:
            raise ValueError("chern_min must be a positive integer")
        for i, (g, m) in enumerate(comps):
            if g < 1 or m <= 0:
                raise ValueError(f"components[{i}]: degree and multiplicity must be positive")
        seen = set()
        for j, (s, w) in enumerate(strata):
            if not s:
                raise ValueError(f"strata[{j}]: empty support")
            if s[0] < 0 or s[-1] >= len(comps):
                raise ValueError(f"strata[{j}]: support references unknown component")
            if not 1 <= w <= self.n:
                raise ValueError(f"strata[{j}]: weight {w} outside 1..n")
            if s in seen:
                raise ValueError(f"strata[{j}]: duplicate support {list(s)}")
            seen.add(s)
        for i in range(len(comps)):
            if ((i,), 1) not in strata:
                raise ValueError(f"component {i} has no singleton stratum of weight 1")


def smooth_divisor(n: int, d: int) -> AbstractDivisor:
    """A smooth degree-d hypersurface in CP^n: one component, one stratum."""
    return AbstractDivisor(n, ((d, Fraction(1)),), (((0,), 1),), chern_min=n + 1)


def normalize_abstract(div: AbstractDivisor) -> CoefficientSystem:
    return _normalized([m for _, m in div.components], [g for g, _ in div.components], div.chern_min)


@dataclass
class BarrierReport:
    mode: str
    n: int
    ell: int
    chern_min: int
    kappa: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]
    strata: list[StratumInvariants]
    sigma_crit: Fraction
    witness: StratumInvariants
    kappa_min: Fraction
    m_of_D: Fraction
    width_bound: Optional[Fraction]
    verdict: str
    corollaries: dict[str, CorollaryCheck] = field(default_factory=dict)
    lambda_source: str = "uniform"
    sublevel: Optional[tuple[Fraction, Optional[Fraction]]] = None
    pair_lower_bound: Optional[tuple[tuple[int, ...], Fraction]] = None

    def to_dict(self) -> dict[str, Any]:
        f = format_rational
        doc: dict[str, Any] = {
            "mode": self.mode,
            "n": self.n,
            "ell": self.ell,
            "N_M": self.chern_min,
            "kappa": [f(x) for x in self.kappa],
            "lambda": [f(x) for x in self.lam],
            "lambda_source": self.lambda_source,
            "sigma_crit": f(self.sigma_crit),
            "witness": {"support": list(self.witness.support), "w": self.witness.w},
            "kappa_min": f(self.kappa_min),
            "m_of_D": f(self.m_of_D),
            "width_bound": NOT_APPLICABLE if self.width_bound is None else f(self.width_bound),
            "verdict": self.verdict,
            "corollaries": [c.to_dict() for c in self.corollaries.values()],
            "strata": [s.to_dict() for s in self.strata],
        }
        if self.sublevel is not None:
            sigma, b = self.sublevel
            doc["sublevel"] = {"sigma": f(sigma), "bound": NOT_APPLICABLE if b is None else f(b)}
        if self.pair_lower_bound is not None:
            support, value = self.pair_lower_bound
            doc["pair_lower_bound"] = {"support": list(support), "value": f(value), "caveat": PAIR_CAVEAT}
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self, color: bool = False) -> str:
        f = format_rational
        verdict = self.verdict
        if color:
            verdict = f"\x1b[{32 if verdict == BARRIER else 33}m{verdict}\x1b[0m"
        wit = "{" + ",".join(map(str, self.witness.support)) + "}"
        lines = [
            f"{self.mode} in CP^{self.n}: {self.ell} components, N_M = {self.chern_min}",
            f"kappa      = ({', '.join(f(x) for x in self.kappa)})",
            f"lambda     = ({', '.join(f(x) for x in self.lam)})  [{self.lambda_source}]",
            f"sigma_crit = {f(self.sigma_crit)}  attained at {wit} (w={self.witness.w})",
            f"kappa_min  = {f(self.kappa_min)}",
            f"m(D)       = {f(self.m_of_D)}",
            f"width bound= {NOT_APPLICABLE if self.width_bound is None else f(self.width_bound)}",
        ]
        if self.sublevel is not None:
            sigma, b = self.sublevel
            lines.append(f"sublevel {{rho > {f(sigma)}}} bound = {NOT_APPLICABLE if b is None else f(b)}")
        if self.pair_lower_bound is not None:
            support, value = self.pair_lower_bound
            lines.append(f"pair lower-bound candidate = {f(value)} at {list(support)} (caveat: unverified normalization)")
        lines.append(f"verdict    = {verdict}")
        if self.corollaries:
            lines.append("")
            lines.append(f"{'corollary':<24}{'formula':>10}{'theorem':>10}  matched")
            for c in self.corollaries.values():
                if c.applicable:
                    lines.append(f"{c.id:<24}{f(c.formula_value):>10}{f(c.theorem_value):>10}  {c.matched}")
                else:
                    lines.append(f"{c.id:<24}{'-':>10}{'-':>10}  n/a: {'; '.join(c.reasons)}")
        lines.append("")
        lines.append(f"{'support':<20}{'w':>3}{'kappa_v':>10}{'lambda_v':>10}{'ratio':>10}")
        for s in self.strata:
            sup = "{" + ",".join(map(str, s.support)) + "}"
            lines.append(f"{sup:<20}{s.w:>3}{f(s.kappa_v):>10}{f(s.lambda_v):>10}{f(s.ratio):>10}")
        return "\n".join(lines) + "\n"


def lower_bound_pair(lat: IntersectionLattice, c: CoefficientSystem, flat: Flat) -> Fraction:
    """min{omega(D_1), omega(D_2), kappa_1, kappa_2} for a double point of two lines in CP^2.

    omega(D_i) is the degree of a line, 1; kappa_i is the action of the line stratum.
    """
    if lat.n != 2:
        raise ValueError("pair lower bound needs n = 2")
    if flat.codim != 2 or len(flat.support) != 2:
        raise ValueError(f"flat on {list(flat.support)} is not a double point of two lines")
    kappas = [_stratum((i,), 1, c).kappa_v for i in flat.support]
    return min([Fraction(1), Fraction(1)] + kappas)


def _best_pair_lower_bound(lat: IntersectionLattice, c: CoefficientSystem):
    if lat.n != 2:
        return None
    best = None
    for f in lat.flats:
        if f.codim == 2 and len(f.support) == 2:
            value = lower_bound_pair(lat, c, f)
            if best is None or value > best[1]:
                best = (f.support, value)
    return best


def _assemble(mode, n, ell, chern_min, c, strata, m, bound, sigma, sublevel_args, corollaries, source, pair):
    sc, i = _max_ratio(strata)
    kmin = kappa_min(c)
    width = bound(sc, kmin)
    result = BARRIER if sc <= 0 else INCONCLUSIVE
    if result == BARRIER:
        assert width is not None and width < 1
    sublevel = None
    if sigma is not None:
        sigma = to_rational(sigma)
        omega_a, cm = sublevel_args
        sublevel = (sigma, width_bound_sublevel(sigma, omega_a, cm, sc, kmin))
    return BarrierReport(
        mode=mode,
        n=n,
        ell=ell,
        chern_min=chern_min,
        kappa=c.kappa,
        lam=c.lam,
        strata=strata,
        sigma_crit=sc,
        witness=strata[i],
        kappa_min=kmin,
        m_of_D=m,
        width_bound=width,
        verdict=result,
        corollaries=corollaries,
        lambda_source=source,
        sublevel=sublevel,
        pair_lower_bound=pair,
    )


def verdict(
    lat: IntersectionLattice,
    c: CoefficientSystem | None = None,
    sigma: RationalLike | None = None,
    lambda_source: str = "uniform",
) -> BarrierReport:
    """Full report for an arrangement. Barrier iff sigma_crit <= 0; otherwise Inconclusive."""
    arr = lat.arrangement
    if c is None:
        c = normalize(arr)
        lambda_source = "multiplicities" if not c.uniform else "uniform"
    c.check(arr.n + 1)
    n = arr.n
    return _assemble(
        "arrangement",
        n,
        arr.ell,
        n + 1,
        c,
        stratum_invariants(lat, c),
        m_of_D(lat),
        lambda sc, k: width_bound_projective(n, sc, k),
        sigma,
        (Fraction(1), n + 1),
        corollary_bounds(lat, c),
        lambda_source,
        _best_pair_lower_bound(lat, c),
    )


def _maximin_lambda(
    ell: int, constraints: Sequence[tuple[Sequence[int], int]], total: int, degrees: Sequence[int] | None = None
):
    # variables: lambda_0..lambda_{ell-1}, t; maximize t with t <= lambda_i
    one, zero = Fraction(1), Fraction(0)
    A_ub, b_ub = [], []
    for i in range(ell):
        row = [zero] * (ell + 1)
        row[i], row[ell] = -one, one
        A_ub.append(row)
        b_ub.append(zero)
    for support, w in constraints:
        row = [zero] * (ell + 1)
        for i in support:
            row[i] = one
        A_ub.append(row)
        b_ub.append(Fraction(2 * w))
    A_eq = [[Fraction(g) for g in (degrees or [1] * ell)] + [zero]]
    cost = [zero] * ell + [one]
    res = maximize(cost, A_ub, b_ub, A_eq, [Fraction(total)])
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:ell]


def feasible_lambda(lat: IntersectionLattice, n: int | None = None) -> Optional[tuple[Fraction, ...]]:
    """A positive lambda with sum 2(n+1) and lambda_v <= 2 w_v on every flat, or ``None``.

    Solved exactly by maximizing min(lambda_i); the answer is ``None`` unless
    that optimum is strictly positive.
    """
    if not lat.flats:
        raise ValueError("empty lattice")
    n = lat.n if n is None else n
    return _maximin_lambda(lat.arrangement.ell, [(f.support, f.codim) for f in lat.flats], 2 * (n + 1))


def analyze_abstract(div: AbstractDivisor, sigma: RationalLike | None = None) -> BarrierReport:
    """Same pipeline as :func:`verdict`, driven by declared strata instead of a lattice."""
    c = normalize_abstract(div)
    strata = sorted((_stratum(s, w, c) for s, w in div.strata), key=lambda s: (s.w, s.support))
    m = min(Fraction(s.w, len(s.support)) for s in strata)
    sc, _ = _max_ratio(strata)
    kmin = kappa_min(c)
    n, cm, omega_a = div.n, div.chern_min, div.omega_a

    def bound(sc, k):
        return width_bound_sublevel(0, omega_a, cm, sc, k)

    corollaries = {}
    reasons = []
    if len(div.components) != 1:
        reasons.append("smooth-divisor corollary needs a single component")
    else:
        d = div.components[0][0]
        if cm != n + 1 or omega_a != 1:
            reasons.append("smooth-divisor corollary is stated for CP^n (N_M = n+1, omega(A) = 1)")
        if d < n + 1:
            reasons.append(f"degree d = {d} < n+1 = {n + 1}")
        if len(div.strata) != 1:
            reasons.append("a smooth divisor has a single stratum")
    if reasons:
        corollaries["smooth_divisor"] = CorollaryCheck("smooth_divisor", False, reasons=tuple(reasons))
    else:
        corollaries["smooth_divisor"] = _check(
            "smooth_divisor", [], Fraction(n + 1 - d, n + 1), Fraction(n, d), sc, bound(sc, kmin)
        )
    return _assemble(
        "abstract", n, len(div.components), cm, c, strata, m, bound, sigma, (omega_a, cm), corollaries, "uniform"
        if c.uniform else "multiplicities", None,
    )


def abstract_from_dict(doc: dict[str, Any]) -> AbstractDivisor:
    """``{"n", "chern_min", "components": [{"degree", "multiplicity"}], "strata": [{"support", "w"}]}``."""
    try:
        comps = [(int(c["degree"]), to_rational(c.get("multiplicity", "1"))) for c in doc["components"]]
        strata = [(tuple(s["support"]), int(s["w"])) for s in doc["strata"]]
        return AbstractDivisor(
            int(doc["n"]), tuple(comps), tuple(strata), int(doc["chern_min"]), to_rational(doc.get("omega_a", "1"))
        )
    except KeyError as exc:
        raise ValueError(f"abstract divisor: missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise ValueError(f"abstract divisor: {exc}") from None


def optimized_abstract_lambda(div: AbstractDivisor) -> Optional[tuple[Fraction, ...]]:
    """Counterpart of :func:`feasible_lambda` for declared strata (degree-weighted sum)."""
    degrees = [g for g, _ in div.components]
    return _maximin_lambda(len(degrees), div.strata, 2 * div.chern_min, degrees)


def analyze_abstract_with(div: AbstractDivisor, lam: Sequence[Fraction], sigma=None, source="optimized") -> BarrierReport:
    c = with_lambda(normalize_abstract(div), lam)
    c.check(div.chern_min)
    strata = sorted((_stratum(s, w, c) for s, w in div.strata), key=lambda s: (s.w, s.support))
    m = min(Fraction(s.w, len(s.support)) for s in strata)

    def bound(sc, k):
        return width_bound_sublevel(0, div.omega_a, div.chern_min, sc, k)

    return _assemble(
        "abstract", div.n, len(div.components), div.chern_min, c, strata, m, bound, sigma,
        (div.omega_a, div.chern_min), {}, source, None,
    )
