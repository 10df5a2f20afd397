"""Moment maps of the circle actions rotating around a flat, on CP^n.

For a flat v (a subspace of C^{n+1}) the action multiplies the v^perp part of
z by e^{2 pi i t} and fixes v; it is generated by

    r_v([z]) = |proj_{v^perp} z|^2 / |z|^2.

Splittings and commutation are decided exactly over Q (the normals are real,
so Hermitian complements are complexified real complements). Brackets and
the Hamiltonian identity are checked numerically in an affine chart, with the
Fubini-Study form normalized to omega(CP^1) = 1, i.e. Kähler potential
(1/2 pi) log |z|^2.

Sign convention: X_H is defined by dH = omega(., X_H). With omega positive
on complex lines this is the convention under which r_v generates the
rotation e^{+2 pi i t} on v^perp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from barrier_gauge.lattice import Flat
from barrier_gauge.linalg import Row, dot, gram_schmidt, nullspace, rank, rref

FD_STEP = 1e-5
CHART_LIMIT = 1e6


class ChartError(ValueError):
    """The point sits too close to the boundary of the requested affine chart."""


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    coords: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.coords, dtype=complex)
        nrm = np.linalg.norm(z)
        if nrm == 0 or not np.isfinite(nrm):
            raise ValueError("homogeneous coordinates must be finite and not all zero")
        object.__setattr__(self, "coords", z / nrm)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def distance(self, other: "ProjectivePoint") -> float:
        """|a - e^{i theta} b| for unit lifts aligned in phase; zero iff the points agree.

        Aligning the phase keeps full precision, unlike sqrt(1 - |<a,b>|^2).
        """
        overlap = np.vdot(other.coords, self.coords)
        phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
        return float(np.linalg.norm(self.coords - phase * other.coords))


def _to_float(rows: Sequence[Row]) -> np.ndarray:
    return np.array([[float(x) for x in r] for r in rows], dtype=float).reshape(len(rows), -1)


def _projector(orth_rows: Sequence[Row], dim: int) -> np.ndarray:
    P = np.zeros((dim, dim))
    for q in orth_rows:
        qf = np.array([float(x) for x in q])
        P += np.outer(qf, qf) / float(dot(q, q))
    return P


@dataclass(frozen=True, eq=False)
class CircleActionSpec:
    """Exact description of the rotation around a flat.

    ``sub`` spans v, ``perp`` is an orthogonal basis of v^perp; both rational.
    """

    dim: int
    normals: tuple[Row, ...]
    sub: tuple[Row, ...]
    perp: tuple[Row, ...]
    projector: np.ndarray

    @classmethod
    def from_normals(cls, normals: Sequence[Sequence], dim: int | None = None) -> "CircleActionSpec":
        basis, r = rref([[Fraction(x) for x in row] for row in normals])
        if dim is None:
            dim = len(basis[0])
        if r == 0 or r >= dim:
            raise ValueError("a flat needs between 1 and dim-1 independent normals")
        sub = tuple(nullspace(basis, dim))
        perp = tuple(gram_schmidt(basis))
        if any(dot(a, b) != 0 for a in perp for b in sub):
            raise AssertionError("v and v^perp are not orthogonal")
        if rank(list(sub) + list(perp)) != dim:
            raise AssertionError("v and v^perp do not span")
        return cls(dim, tuple(basis), sub, perp, _projector(perp, dim))

    @classmethod
    def from_flat(cls, flat: Flat, dim: int | None = None) -> "CircleActionSpec":
        return cls.from_normals(flat.basis, dim)

    @property
    def codim(self) -> int:
        return len(self.perp)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return all(dot(a, vec) == 0 for a in self.normals)

    def orthogonal_to(self, vec: Sequence[Fraction]) -> bool:
        return all(dot(b, vec) == 0 for b in self.sub)

    def moment(self, z: np.ndarray) -> float:
        return float(np.real(np.vdot(z, self.projector @ z)) / np.real(np.vdot(z, z)))


def moment_value(v: CircleActionSpec, p: ProjectivePoint) -> float:
    return v.moment(p.coords)


def apply_action(v: CircleActionSpec, t: float, p: ProjectivePoint) -> ProjectivePoint:
    z = p.coords
    return ProjectivePoint(z + (np.exp(2j * np.pi * t) - 1.0) * (v.projector @ z))


@dataclass(frozen=True)
class Splitting:
    """u, u^perp ∩ v and v^perp for u < v, with the scalar each action takes on each block."""

    blocks: tuple[tuple[Row, ...], tuple[Row, ...], tuple[Row, ...]]
    u_action: tuple[str, str, str]
    v_action: tuple[str, str, str]
    passed: bool


def _block_scalar(spec: CircleActionSpec, block: Sequence[Row]) -> str:
    if all(spec.contains(b) for b in block):
        return "1"
    if all(spec.orthogonal_to(b) for b in block):
        return "e(t)"
    return "mixed"


def check_commuting_structural(u: Flat, v: Flat, dim: int) -> Splitting:
    """Exact proof that the rotations around u < v commute.

    Builds C^{n+1} = u ⊕ (u^perp ∩ v) ⊕ v^perp over Q, checks the blocks are
    pairwise orthogonal and spanning, and that each action is a scalar on
    each block; two operators that are scalar on a common splitting commute.
    """
    if u.codim <= v.codim or not u.is_subspace_of(v):
        raise ValueError(f"flats {list(u.support)} and {list(v.support)} are not nested as u < v")
    su = CircleActionSpec.from_flat(u, dim)
    sv = CircleActionSpec.from_flat(v, dim)
    nu = [list(r) for r in su.normals]
    # u^perp ∩ v = {y . N_u : N_v (y . N_u)^T = 0}
    gram = [[dot(a, b) for b in nu] for a in sv.normals]
    coeffs = nullspace(gram, len(nu))
    mid = [tuple(sum((c * row[k] for c, row in zip(y, nu)), Fraction(0)) for k in range(dim)) for y in coeffs]
    blocks = (tuple(su.sub), tuple(gram_schmidt(mid)), tuple(sv.perp))
    flat_rows = [r for b in blocks for r in b]
    orthogonal = all(
        dot(a, b) == 0 for i in range(3) for j in range(i + 1, 3) for a in blocks[i] for b in blocks[j]
    )
    spanning = len(flat_rows) == dim and rank(flat_rows) == dim
    u_action = tuple(_block_scalar(su, b) for b in blocks)
    v_action = tuple(_block_scalar(sv, b) for b in blocks)
    passed = orthogonal and spanning and "mixed" not in u_action + v_action
    return Splitting(blocks, u_action, v_action, passed)


# -- affine chart machinery -------------------------------------------------


def pick_chart(p: ProjectivePoint) -> int:
    return int(np.argmax(np.abs(p.coords)))


def chart_coords(p: ProjectivePoint, chart: int) -> np.ndarray:
    z = p.coords
    if abs(z[chart]) == 0:
        raise ChartError(f"point lies outside chart {chart}")
    w = np.delete(z / z[chart], chart)
    if np.max(np.abs(w), initial=0.0) > CHART_LIMIT:
        raise ChartError(f"chart {chart} coordinate magnitude exceeds {CHART_LIMIT:g}")
    return np.column_stack([w.real, w.imag]).ravel()


def _lift(x: np.ndarray, chart: int) -> np.ndarray:
    w = x[0::2] + 1j * x[1::2]
    return np.insert(w, chart, 1.0)


def fs_form(x: np.ndarray) -> np.ndarray:
    """Matrix of omega_FS in real chart coordinates (x_1, y_1, ..., x_n, y_n)."""
    w = x[0::2] + 1j * x[1::2]
    n = len(w)
    s = 1.0 + np.real(np.vdot(w, w))
    h = np.eye(n) / s - np.outer(w.conj(), w) / s**2
    E = np.zeros((2 * n, n), dtype=complex)
    E[0::2, :] = np.eye(n)
    E[1::2, :] = 1j * np.eye(n)
    omega = -np.imag(E @ h @ E.conj().T) / np.pi
    return 0.5 * (omega - omega.T)


def _gradient(spec: CircleActionSpec, x: np.ndarray, chart: int, h: float) -> np.ndarray:
    g = np.empty_like(x)
    for a in range(len(x)):
        e = np.zeros_like(x)
        e[a] = h
        g[a] = (spec.moment(_lift(x + e, chart)) - spec.moment(_lift(x - e, chart))) / (2 * h)
    return g


def hamiltonian_field(spec: CircleActionSpec, x: np.ndarray, chart: int, h: float = FD_STEP) -> np.ndarray:
    return np.linalg.solve(fs_form(x), _gradient(spec, x, chart, h))


def _chart_for(p: ProjectivePoint, chart: int | None) -> tuple[int, np.ndarray]:
    chart = pick_chart(p) if chart is None else chart
    return chart, chart_coords(p, chart)


def poisson_bracket(
    f: CircleActionSpec, g: CircleActionSpec, p: ProjectivePoint, chart: int | None = None, h: float = FD_STEP
) -> float:
    """{r_f, r_g} = omega(X_f, X_g) at p, gradients by central differences."""
    chart, x = _chart_for(p, chart)
    omega = fs_form(x)
    xf = np.linalg.solve(omega, _gradient(f, x, chart, h))
    xg = xf if g is f else np.linalg.solve(omega, _gradient(g, x, chart, h))
    return float(xf @ omega @ xg)


def action_velocity(v: CircleActionSpec, x: np.ndarray, chart: int) -> np.ndarray:
    """d/dt at t=0 of the action, in chart coordinates."""
    z = _lift(x, chart)
    zdot = 2j * np.pi * (v.projector @ z)
    wdot = np.delete(zdot - z * zdot[chart], chart)
    return np.column_stack([wdot.real, wdot.imag]).ravel()


def hamiltonian_consistency(
    v: CircleActionSpec, p: ProjectivePoint, chart: int | None = None, h: float = FD_STEP
) -> float:
    """Norm of omega(., X) - dr_v at p, X the velocity of the action; zero when r_v generates it."""
    r = moment_value(v, p)
    if r <= 1e-14 or r >= 1 - 1e-14:
        raise ValueError(f"point is a fixed point of the action (r_v = {r:.3g})")
    chart, x = _chart_for(p, chart)
    residual = fs_form(x) @ action_velocity(v, x, chart) - _gradient(v, x, chart, h)
    return float(np.linalg.norm(residual))


def isotropy_eigenvalues(v: CircleActionSpec, p: ProjectivePoint) -> np.ndarray:
    """Weights of the linearized action on T_p CP^n for a fixed point p in v."""
    r = moment_value(v, p)
    if r >= 1e-10:
        raise ValueError(f"point is not on the fixed stratum (r_v = {r:.3g})")
    z = p.coords
    _, _, vh = np.linalg.svd(z.conj()[None, :])
    B = vh[1:].conj().T  # orthonormal basis of z^perp = T_p
    # the action fixes z exactly, so its derivative on T_p is the generator compressed to z^perp
    return np.sort(np.linalg.eigvalsh(B.conj().T @ v.projector @ B))


def isotropy_weight(v: CircleActionSpec, p: ProjectivePoint) -> int:
    """Total weight on the normal space of D_v at p: the number of weight-one directions."""
    eig = isotropy_eigenvalues(v, p)
    weights = np.rint(eig)
    if np.max(np.abs(eig - weights)) > 1e-8 or np.any((weights != 0) & (weights != 1)):
        raise ArithmeticError(f"linearized action has non-integral weights {eig}")
    return int(weights.sum())


def random_point(dim: int, rng: np.random.Generator) -> ProjectivePoint:
    return ProjectivePoint(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def random_point_on(v: CircleActionSpec, rng: np.random.Generator) -> ProjectivePoint:
    """Generic point of D_v: a random complex combination of an exact basis of v."""
    basis = _to_float(v.sub)
    c = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return ProjectivePoint(c @ basis)


def rational_point_on(v: CircleActionSpec, rng: np.random.Generator, bound: int = 5) -> tuple[Fraction, ...]:
    """Exact rational point of D_v with small integer coefficients on the basis of v."""
    while True:
        c = rng.integers(-bound, bound + 1, size=len(v.sub))
        if np.any(c):
            break
    return tuple(sum((int(ci) * b[k] for ci, b in zip(c, v.sub)), Fraction(0)) for k in range(v.dim))
