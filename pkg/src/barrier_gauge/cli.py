"""Command-line front end.

    barrier-gauge analyze  [FILE | --example NAME ...] [--json] [--optimize-lambda] [--sigma p/q]
    barrier-gauge lattice  [FILE | --example NAME ...] [--json | --dot]
    barrier-gauge verify   [FILE | --example NAME ...] [--samples N] [--seed S] [--tol T]
    barrier-gauge examples [--json]

Exit codes: analyze 0 = Barrier, 3 = Inconclusive; verify 0 = all checks
pass, 2 = some check failed; 1 = bad input for every command.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from barrier_gauge import invariants as inv
from barrier_gauge.arrangement import Arrangement, ArrangementError, arrangement_from_dict
from barrier_gauge.lattice import build_lattice
from barrier_gauge.named import CATALOG, FIGURE_INCIDENCE, generate_named
from barrier_gauge.rational import format_rational, parse_rational
from barrier_gauge.verify import DEFAULT_TOLERANCES, run_verification

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY_FAILED = 2
EXIT_INCONCLUSIVE = 3
MAX_VERIFY_N = 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    path: Optional[Path] = None
    example: Optional[str] = None
    n: Optional[int] = None
    l: Optional[int] = None
    d: Optional[int] = None
    output: str = "text"
    multiplicities: Optional[list] = None
    kappa: Optional[list] = None
    lam: Optional[list] = None
    optimize_lambda: bool = False
    sigma: Optional[object] = None
    tolerances: dict = field(default_factory=dict)
    samples: int = 100
    seed: int = 0
    allow_large: bool = False

    def __post_init__(self):
        if self.command != "examples" and (self.path is None) == (self.example is None):
            raise InputError("give exactly one input: a JSON file or --example NAME")


def _rationals(text: str) -> list:
    try:
        return [parse_rational(s.strip()) for s in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tolerance(text: str) -> tuple[Optional[str], float]:
    name, _, value = text.rpartition("=")
    if name and name not in DEFAULT_TOLERANCES:
        raise argparse.ArgumentTypeError(f"unknown tolerance {name!r}; known: {', '.join(DEFAULT_TOLERANCES)}")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must be a number, got {value!r}") from None
    if not tol > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return (name or None, tol)


def _color_enabled() -> bool:
    mode = os.environ.get("BARRIER_GAUGE_COLOR", "auto")
    return mode != "never" and sys.stdout.isatty()


def _load(cfg: RunConfig):
    """The arrangement or abstract divisor named by the config."""
    if cfg.example is not None:
        name = cfg.example
        if name == "smooth":
            if cfg.n is None or cfg.d is None:
                raise InputError("smooth needs --n and --d")
            return inv.smooth_divisor(cfg.n, cfg.d)
        if name not in CATALOG:
            raise InputError(f"unknown example {name!r}; run `barrier-gauge examples`")
        values = {"n": cfg.n, "l": cfg.l}
        params = []
        for p in CATALOG[name].params:
            if values[p] is None:
                raise InputError(f"{name} needs --{p}")
            params.append(values[p])
        arr = generate_named(name, *params)
    else:
        try:
            doc = json.loads(cfg.path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"{cfg.path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{cfg.path}: line {exc.lineno} column {exc.colno}: invalid JSON: {exc.msg}") from None
        if isinstance(doc, dict) and "components" in doc:
            return inv.abstract_from_dict(doc)
        try:
            arr = arrangement_from_dict(doc)
        except ArrangementError as exc:
            raise InputError(f"{cfg.path}: {exc}") from None
    if cfg.multiplicities is not None:
        arr = arr.with_multiplicities(cfg.multiplicities)
    return arr


def _coefficients(cfg: RunConfig, arr: Arrangement) -> tuple[inv.CoefficientSystem, str]:
    c = inv.normalize(arr)
    source = "uniform" if c.uniform else "multiplicities"
    if cfg.kappa is not None or cfg.lam is not None:
        kappa = cfg.kappa if cfg.kappa is not None else c.kappa
        lam = cfg.lam if cfg.lam is not None else c.lam
        c = inv.CoefficientSystem(tuple(kappa), tuple(lam), c.degrees)
        c.check(arr.n + 1)
        source = "explicit"
    return c, source


def cmd_analyze(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    obj = _load(cfg)
    if isinstance(obj, inv.AbstractDivisor):
        report = inv.analyze_abstract(obj, sigma=cfg.sigma)
        if cfg.optimize_lambda and report.verdict != inv.BARRIER:
            lam = inv.optimized_abstract_lambda(obj)
            if lam is not None:
                report = inv.analyze_abstract_with(obj, lam, sigma=cfg.sigma)
    else:
        lat = build_lattice(obj)
        c, source = _coefficients(cfg, obj)
        if cfg.optimize_lambda:
            lam = inv.feasible_lambda(lat, obj.n)
            if lam is not None:
                c, source = inv.with_lambda(c, lam), "optimized"
            else:
                source += " (no feasible lambda)"
        report = inv.verdict(lat, c, sigma=cfg.sigma, lambda_source=source)
    out.write(report.to_json() + "\n" if cfg.output == "json" else report.to_text(color=_color_enabled()))
    return EXIT_OK if report.verdict == inv.BARRIER else EXIT_INCONCLUSIVE


def cmd_lattice(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    arr = _load(cfg)
    if isinstance(arr, inv.AbstractDivisor):
        raise InputError("lattice needs a hyperplane arrangement, not an abstract divisor")
    lat = build_lattice(arr)
    c, _ = _coefficients(cfg, arr)
    strata = inv.stratum_invariants(lat, c)
    if cfg.output == "dot":
        out.write(lat.to_dot())
    elif cfg.output == "json":
        doc = lat.to_dict()
        for f, s in zip(doc["flats"], strata):
            f.update(w=s.w, lambda_v=format_rational(s.lambda_v), ratio=format_rational(s.ratio))
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"{len(lat.flats)} flats in CP^{arr.n} ({arr.ell} hyperplanes)\n")
        out.write(f"{'support':<24}{'codim':>6}{'lambda_v':>10}{'w_v':>5}{'ratio':>10}\n")
        for f, s in zip(lat.flats, strata):
            sup = "{" + ",".join(map(str, f.support)) + "}"
            out.write(f"{sup:<24}{f.codim:>6}{format_rational(s.lambda_v):>10}{s.w:>5}{format_rational(s.ratio):>10}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    arr = _load(cfg)
    if isinstance(arr, inv.AbstractDivisor):
        raise InputError("verify needs a hyperplane arrangement, not an abstract divisor")
    if arr.n > MAX_VERIFY_N and not cfg.allow_large:
        raise InputError(f"n = {arr.n} > {MAX_VERIFY_N}; pass --allow-large to run anyway")
    if cfg.samples < 1:
        raise InputError("--samples must be >= 1")
    report = run_verification(build_lattice(arr), cfg.samples, cfg.seed, cfg.tolerances)
    out.write(report.to_json() + "\n" if cfg.output == "json" else report.to_text())
    if not report.passed:
        for c in report.failures[:5]:
            tgt = ", ".join(f"{k}={v}" for k, v in c.target.items())
            print(f"verify: {c.check} failed at {tgt}: residual {c.max_residual:.3e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def example_listing() -> list[dict]:
    rows = []
    for name, ex in CATALOG.items():
        row = {"name": name, "params": list(ex.params), "summary": ex.summary}
        if name in FIGURE_INCIDENCE:
            lat = build_lattice(generate_named(name))
            k = max(len(f.support) for f in lat.flats if f.codim == 2)
            row.update(n=2, l=lat.arrangement.ell, k=k)
        elif name == "generic":
            row.update(n="n", l="l", k="n")
        elif name == "coordinate":
            row.update(n="n", l="n+1", k="n")
        elif name == "braid":
            row.update(n="n", l="(n+1)(n+2)/2", k="n(n+1)/2")
        rows.append(row)
    rows.append(
        {"name": "smooth", "params": ["n", "d"], "summary": "smooth degree-d hypersurface (abstract mode)",
         "n": "n", "l": 1, "k": 1}
    )
    return rows


def cmd_examples(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = example_listing()
    if cfg.output == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    out.write(f"{'name':<12}{'params':<10}{'n':>4}{'l':>14}{'k':>10}  description\n")
    for r in rows:
        params = ",".join(r["params"]) or "-"
        out.write(f"{r['name']:<12}{params:<10}{r['n']!s:>4}{r['l']!s:>14}{r['k']!s:>10}  {r['summary']}\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors: exit 1, not argparse's default 2 (reserved for verify)
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="barrier-gauge", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("input", nargs="?", type=Path, help="arrangement JSON file")
        p.add_argument("--example", metavar="NAME", help="built-in arrangement (see `examples`)")
        p.add_argument("--n", type=int, help="ambient dimension for parametric examples")
        p.add_argument("--l", type=int, help="number of hyperplanes for `generic`")
        p.add_argument("--d", type=int, help="degree for `smooth`")
        p.add_argument("--multiplicities", type=_rationals, metavar="p/q,...", help="divisor multiplicities")
        p.add_argument("--json", dest="output", action="store_const", const="json", default="text")

    p = sub.add_parser("analyze", help="barrier verdict and width bounds")
    inputs(p)
    p.add_argument("--optimize-lambda", action="store_true", help="search all admissible lambda by exact LP")
    p.add_argument("--kappa", type=_rationals, metavar="p/q,...", help="explicit kappa vector")
    p.add_argument("--lambda", dest="lam", type=_rationals, metavar="p/q,...", help="explicit lambda vector")
    p.add_argument("--sigma", type=_rational, metavar="p/q", help="also bound the sublevel region {rho > sigma}")

    p = sub.add_parser("lattice", help="intersection lattice dump")
    inputs(p)
    p.add_argument("--dot", dest="output", action="store_const", const="dot", help="Hasse diagram as DOT")

    p = sub.add_parser("verify", help="numeric and exact checks of the commuting circle actions")
    inputs(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--tol", type=_tolerance, action="append", default=[], metavar="[NAME=]T",
        help="tolerance override; a bare value applies to every floating-point check",
    )
    p.add_argument("--allow-large", action="store_true", help=f"run for n > {MAX_VERIFY_N}")

    p = sub.add_parser("examples", help="list built-in arrangements")
    p.add_argument("--json", dest="output", action="store_const", const="json", default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    tolerances = {}
    for name, value in getattr(args, "tol", []):
        if name is None:
            tolerances.update(dict.fromkeys(DEFAULT_TOLERANCES, value))
        else:
            tolerances[name] = value
    return RunConfig(
        command=args.command,
        path=getattr(args, "input", None),
        example=getattr(args, "example", None),
        n=getattr(args, "n", None),
        l=getattr(args, "l", None),
        d=getattr(args, "d", None),
        output=args.output,
        multiplicities=getattr(args, "multiplicities", None),
        kappa=getattr(args, "kappa", None),
        lam=getattr(args, "lam", None),
        optimize_lambda=getattr(args, "optimize_lambda", False),
        sigma=getattr(args, "sigma", None),
        tolerances=tolerances,
        samples=getattr(args, "samples", 100),
        seed=getattr(args, "seed", 0),
        allow_large=getattr(args, "allow_large", False),
    )


COMMANDS = {"analyze": cmd_analyze, "lattice": cmd_lattice, "verify": cmd_verify, "examples": cmd_examples}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (InputError, ArrangementError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
