"""Run every moment-map check over an arrangement's lattice and collect a report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from barrier_gauge import hamiltonian as ham
from barrier_gauge.lattice import IntersectionLattice

DEFAULT_TOLERANCES: dict[str, float] = {
    "poisson_bracket": 1e-5,
    "bracket_antisymmetry": 1e-12,
    "action_commutation": 1e-9,
    "period": 1e-10,
    "moment_invariance": 1e-10,
    "stratum_preservation": 1e-10,
    "hamiltonian_consistency": 1e-4,
}
# decided exactly, no tolerance
EXACT_CHECKS = ("structural_commutation", "isotropy_weight")


@dataclass
class CheckResult:
    check: str
    target: dict[str, list[int]]
    samples: int
    max_residual: float
    tolerance: Optional[float]
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"check": self.check, **self.target, "samples": self.samples}
        doc["max_residual"] = self.max_residual
        doc["tolerance"] = self.tolerance
        doc["pass"] = self.passed
        if self.detail:
            doc["detail"] = self.detail
        return doc


@dataclass
class VerificationReport:
    n: int
    ell: int
    seed: int
    samples: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "ell": self.ell,
            "seed": self.seed,
            "samples": self.samples,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{'check':<24}{'target':<22}{'samples':>8}{'max residual':>14}{'tol':>10}  result"]
        for c in self.checks:
            tgt = " < ".join("{" + ",".join(map(str, s)) + "}" for s in c.target.values())
            tol = "exact" if c.tolerance is None else f"{c.tolerance:.0e}"
            lines.append(
                f"{c.check:<24}{tgt:<22}{c.samples:>8}{c.max_residual:>14.3e}{tol:>10}  {'pass' if c.passed else 'FAIL'}"
            )
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def run_verification(
    lat: IntersectionLattice,
    samples: int = 100,
    seed: int = 0,
    tolerances: dict[str, float] | None = None,
) -> VerificationReport:
    """Exact splittings for every nested pair plus seeded sampling of the numeric identities."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise KeyError(f"unknown tolerance names: {sorted(unknown)}")
        tol.update(tolerances)
    rng = np.random.default_rng(seed)
    dim = lat.n + 1
    specs = [ham.CircleActionSpec.from_flat(f, dim) for f in lat.flats]
    report = VerificationReport(lat.n, lat.arrangement.ell, seed, samples)
    out = report.checks

    def add(check, target, residual, k, detail=""):
        t = tol.get(check)
        ok = residual == 0 if t is None else residual < t
        out.append(CheckResult(check, target, k, float(residual), t, bool(ok), detail))

    for i, f in enumerate(lat.flats):
        v = specs[i]
        target = {"flat": list(f.support)}
        period = invariance = 0.0
        for _ in range(samples):
            p = ham.random_point(dim, rng)
            period = max(period, ham.apply_action(v, 1.0, p).distance(p))
            q = ham.apply_action(v, rng.uniform(), p)
            invariance = max(invariance, abs(ham.moment_value(v, q) - ham.moment_value(v, p)))
        add("period", target, period, samples)
        add("moment_invariance", target, invariance, samples)

        worst = 0.0
        for _ in range(samples):
            worst = max(worst, ham.hamiltonian_consistency(v, ham.random_point(dim, rng)))
        add("hamiltonian_consistency", target, worst, samples)

        mismatch, detail = 0, ""
        for _ in range(samples):
            try:
                w = ham.isotropy_weight(v, ham.random_point_on(v, rng))
            except ArithmeticError as exc:
                mismatch, detail = 1, str(exc)
                break
            if w != f.codim:
                mismatch, detail = 1, f"weight {w} != codim {f.codim}"
                break
        add("isotropy_weight", target, mismatch, samples, detail)

    for i, j in lat.order:
        u, v = specs[i], specs[j]
        target = {"u": list(lat.flats[i].support), "v": list(lat.flats[j].support)}
        split = ham.check_commuting_structural(lat.flats[i], lat.flats[j], dim)
        detail = "" if split.passed else f"u acts as {split.u_action}, v acts as {split.v_action}"
        add("structural_commutation", target, 0 if split.passed else 1, 1, detail)

        bracket = antisym = commute = preserve = 0.0
        for _ in range(samples):
            p = ham.random_point(dim, rng)
            b_uv = ham.poisson_bracket(u, v, p)
            b_vu = ham.poisson_bracket(v, u, p)
            bracket = max(bracket, abs(b_uv))
            antisym = max(antisym, abs(b_uv + b_vu))
            s, t = rng.uniform(size=2)
            a = ham.apply_action(v, s, ham.apply_action(u, t, p))
            b = ham.apply_action(u, t, ham.apply_action(v, s, p))
            commute = max(commute, a.distance(b))
            # the action of the smaller flat u preserves D_v
            x = ham.ProjectivePoint([float(c) for c in ham.rational_point_on(v, rng)])
            preserve = max(preserve, ham.moment_value(v, ham.apply_action(u, rng.uniform(), x)))
        add("poisson_bracket", target, bracket, samples)
        add("bracket_antisymmetry", target, antisym, samples)
        add("action_commutation", target, commute, samples)
        add("stratum_preservation", target, preserve, samples)

    out.sort(key=lambda c: (c.check, sorted(c.target.items())))
    return report
