"""Exact barrier verdicts and Gromov-width bounds for hyperplane arrangements in CP^n."""

from barrier_gauge.arrangement import Arrangement, ArrangementError, Hyperplane, parse_arrangement
from barrier_gauge.lattice import Flat, IntersectionLattice, build_lattice
from barrier_gauge.named import generate_named
from barrier_gauge.invariants import (
    AbstractDivisor,
    BarrierReport,
    CoefficientSystem,
    analyze_abstract,
    corollary_bounds,
    feasible_lambda,
    kappa_min,
    lower_bound_pair,
    m_of_D,
    normalize,
    sigma_crit,
    verdict,
    width_bound_projective,
    width_bound_sublevel,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractDivisor",
    "Arrangement",
    "ArrangementError",
    "BarrierReport",
    "CoefficientSystem",
    "Flat",
    "Hyperplane",
    "IntersectionLattice",
    "analyze_abstract",
    "build_lattice",
    "corollary_bounds",
    "feasible_lambda",
    "generate_named",
    "kappa_min",
    "lower_bound_pair",
    "m_of_D",
    "normalize",
    "parse_arrangement",
    "sigma_crit",
    "verdict",
    "width_bound_projective",
    "width_bound_sublevel",
]
