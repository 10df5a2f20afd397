import pytest

from barrier_gauge import build_lattice, generate_named
from barrier_gauge.verify import DEFAULT_TOLERANCES, EXACT_CHECKS, run_verification


def test_report_covers_every_flat_and_pair():
    lat = build_lattice(generate_named("coordinate", 2))
    report = run_verification(lat, samples=10, seed=1)
    assert report.passed
    per_flat = {"period", "moment_invariance", "hamiltonian_consistency", "isotropy_weight"}
    per_pair = {"structural_commutation", "poisson_bracket", "bracket_antisymmetry", "action_commutation", "stratum_preservation"}
    checks = [c.check for c in report.checks]
    for name in per_flat:
        assert checks.count(name) == len(lat.flats)
    for name in per_pair:
        assert checks.count(name) == len(lat.order)
    assert set(checks) == set(DEFAULT_TOLERANCES) | set(EXACT_CHECKS)


def test_tight_tolerance_fails_and_unknown_name_rejected():
    lat = build_lattice(generate_named("generic", 2, 4))
    report = run_verification(lat, samples=5, tolerances={"hamiltonian_consistency": 1e-15})
    assert not report.passed
    assert {c.check for c in report.failures} == {"hamiltonian_consistency"}
    with pytest.raises(KeyError):
        run_verification(lat, samples=1, tolerances={"nope": 1.0})


def test_text_rendering():
    lat = build_lattice(generate_named("braid", 1))
    text = run_verification(lat, samples=3).to_text()
    assert text.strip().endswith("overall: pass")
