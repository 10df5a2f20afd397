"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s -m acceptance tests/test_acceptance.py`` to see the lines.
"""

import random
import time
from fractions import Fraction as F

import pytest

from barrier_gauge import (
    build_lattice,
    feasible_lambda,
    generate_named,
    kappa_min,
    m_of_D,
    normalize,
    sigma_crit,
    verdict,
    width_bound_projective,
    width_bound_sublevel,
)
from barrier_gauge.invariants import BARRIER, INCONCLUSIVE, analyze_abstract, smooth_divisor
from barrier_gauge.verify import run_verification
from oracles import brute_kappa_min, fourier_motzkin_max, subset_flats, subset_m_of_D

pytestmark = pytest.mark.acceptance
# collected lines, echoed again in the terminal summary by conftest
RESULTS: list[str] = []


def report(number, title, ok, detail=""):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print("\n" + line)
    assert ok, detail


def test_criterion_1_generic_table():
    start = time.perf_counter()
    bad = []
    for n in range(1, 5):
        for ell in range(n + 1, n + 7):
            lat = build_lattice(generate_named("generic", n, ell))
            c = normalize(lat.arrangement)
            sc, _ = sigma_crit(lat, c)
            bound = width_bound_projective(n, sc, kappa_min(c))
            if sc != F(n + 1 - ell, n + 1) or bound != F(n, ell):
                bad.append((n, ell, sc, bound))
    elapsed = time.perf_counter() - start
    report(1, "generic(n,l) sigma_crit and n/l table", not bad and elapsed < 1.0, f"{elapsed:.3f}s, mismatches {bad}")


def test_criterion_2_clifford_boundary():
    bad = []
    for n in range(1, 7):
        r = verdict(build_lattice(generate_named("generic", n, n + 1)))
        if r.width_bound != F(n, n + 1) or r.verdict != BARRIER:
            bad.append((n, r.width_bound, r.verdict))
        r = verdict(build_lattice(generate_named("coordinate", n)))
        if r.width_bound != F(n, n + 1) or r.verdict != BARRIER:
            bad.append(("coordinate", n, r.width_bound, r.verdict))
    report(2, "l = n+1 gives n/(n+1) and Barrier for n <= 6", not bad, f"mismatches {bad}")


def test_criterion_3_braid():
    bad = []
    for n in (2, 3):
        lat = build_lattice(generate_named("braid", n))
        r = verdict(lat)
        if m_of_D(lat) != F(2, n + 1) or r.verdict != BARRIER:
            bad.append((n, m_of_D(lat), r.verdict))
        if n == 2:
            ell, m = lat.arrangement.ell, m_of_D(lat)
            closed = F(n, ell) + 1 - F(-((-ell * m.numerator) // m.denominator), ell)
            if not (r.width_bound == F(2, 3) == closed and r.corollaries["degenerate_hyperplanes"].matched):
                bad.append(("bound", r.width_bound, closed))
    report(3, "braid(n): m(D) = 2/(n+1), Barrier, bound 2/3 at n = 2", not bad, f"mismatches {bad}")


def test_criterion_4_figure1():
    start = time.perf_counter()
    bad = []
    for name, expected in [("figure1a", INCONCLUSIVE), ("figure1b", BARRIER), ("figure1c", INCONCLUSIVE), ("figure1d", BARRIER)]:
        lat = build_lattice(generate_named(name))
        r = verdict(lat)
        lines = r.corollaries["line_configurations"]
        if r.verdict != expected:
            bad.append((name, r.verdict))
        if expected == BARRIER and not (lines.applicable and lines.matched):
            bad.append((name, "2l >= 3k corollary", lines.reasons))
    elapsed = time.perf_counter() - start
    report(4, "figure 1b/1d Barrier, 1a/1c Inconclusive", not bad and elapsed < 1.0, f"{elapsed:.3f}s, mismatches {bad}")


def test_criterion_5_smooth_divisors():
    bad = []
    for n, d in [(2, 3), (2, 4), (3, 4), (3, 5)]:
        r = analyze_abstract(smooth_divisor(n, d))
        if r.width_bound != F(n, d) or not r.corollaries["smooth_divisor"].matched:
            bad.append((n, d, r.width_bound))
    report(5, "smooth degree-d divisor gives n/d", not bad, f"mismatches {bad}")


BUILTINS_LE_10 = [
    ("coordinate", 1), ("coordinate", 2), ("coordinate", 3), ("coordinate", 4), ("coordinate", 5),
    ("generic", 1, 2), ("generic", 1, 4), ("generic", 2, 3), ("generic", 2, 5), ("generic", 2, 8),
    ("generic", 3, 4), ("generic", 3, 6), ("generic", 4, 7),
    ("braid", 1), ("braid", 2), ("braid", 3),
    ("figure1a",), ("figure1b",), ("figure1c",), ("figure1d",),
]


def test_criterion_6_oracles():
    bad = []
    for spec in BUILTINS_LE_10:
        arr = generate_named(*spec)
        assert arr.ell <= 10
        lat = build_lattice(arr)
        if m_of_D(lat) != subset_m_of_D(arr):
            bad.append(("m_of_D", spec))
        if {f.key: (f.support, f.codim) for f in lat.flats} != subset_flats(arr):
            bad.append(("lattice", spec))
        if arr.ell <= 4:
            best = fourier_motzkin_max(arr.ell, list(subset_flats(arr).values()), 2 * (arr.n + 1))
            lam = feasible_lambda(lat)
            expected_none = best is None or best <= 0
            if (lam is None) != expected_none or (lam is not None and min(lam) != best):
                bad.append(("feasible_lambda", spec, lam, best))
    rng = random.Random(20240611)
    for _ in range(20):
        d = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
        while sum(d) > 12:
            d.pop()
        k = [F(x, sum(d)) for x in d]
        if kappa_min(k) != brute_kappa_min(k):
            bad.append(("kappa_min", k))
    report(6, "oracle equivalences (lattice, m(D), kappa_min, feasible lambda)", not bad, f"discrepancies {bad}")


def test_criterion_7_hamiltonian():
    start = time.perf_counter()
    bad = []
    for spec in [("coordinate", 2), ("generic", 2, 4), ("braid", 2)]:
        rep = run_verification(build_lattice(generate_named(*spec)), samples=100, seed=0)
        bad.extend((spec, c.check, c.target, c.max_residual) for c in rep.failures)
        bracket = max(c.max_residual for c in rep.checks if c.check == "poisson_bracket")
        consistency = max(c.max_residual for c in rep.checks if c.check == "hamiltonian_consistency")
        if bracket >= 1e-5 or consistency >= 1e-4:
            bad.append((spec, bracket, consistency))
    elapsed = time.perf_counter() - start
    report(7, "structural commutation, brackets < 1e-5, weights = codim, consistency < 1e-4",
           not bad and elapsed < 30.0, f"{elapsed:.1f}s, failures {bad[:5]}")


def test_criterion_8_theorem_consistency():
    rng = random.Random(8)
    bad = []
    for _ in range(200):
        n = rng.randint(1, 8)
        sc = -F(rng.randint(0, 60), rng.randint(1, 20))
        kmin = F(1, rng.randint(1, 20)) * rng.randint(1, 3)
        if width_bound_sublevel(0, 1, n + 1, sc, kmin) != width_bound_projective(n, sc, kmin):
            bad.append((n, sc, kmin))
    report(8, "sublevel bound at sigma = 0 equals projective bound", not bad, f"mismatches {bad[:5]}")
