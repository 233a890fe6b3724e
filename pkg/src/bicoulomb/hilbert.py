"""Bicomplex scalar product by quadrature, norms and orthonormality checks.

Kets are functions on R^3 with values in the bicomplex ring.  Their
evaluators are vectorized: they take broadcastable ``(r, theta, phi)`` arrays
and return the pair of complex arrays ``(f_1, f_2)`` holding the idempotent
components.  The scalar product is

    (f, g) = sum_s e_s  int conj(f_s) g_s d^3r

and is evaluated on a tensor-product grid: Gauss-Legendre panels in ``r`` with
a mapped exponential tail, Gauss-Legendre in ``cos(theta)`` and a uniform
trapezoid rule in ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaincc

from .bicomplex import NULL_CONE_TOL, Bicomplex, real_norm
from .errors import GridError, NullConeError
from .params import PhysicalParams
from .spectrum import (
    EigenfunctionSpec,
    QuantumNumbers,
    energy,
    general_eigenfunction_components,
    sector_wavefunction,
    wavefunction_components,
)

MATRIX_TOL = 1e-8

Evaluator = Callable[[np.ndarray, np.ndarray, np.ndarray], tuple]


# -- grid ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Tensor-product quadrature rule on R^3 in spherical coordinates.

    ``r_weights`` integrate ``dr`` (the ``r**2`` Jacobian is applied later),
    ``cos_weights`` integrate ``d(cos theta)`` and ``phi`` is uniform on
    ``[0, 2 pi)``.
    """

    r: np.ndarray
    r_weights: np.ndarray
    cos_theta: np.ndarray
    cos_weights: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        for name in ("r_weights", "cos_weights"):
            w = getattr(self, name)
            if w.ndim != 1 or w.size == 0 or not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise GridError(f"{name} must be a non-empty array of positive weights")
        if self.r.shape != self.r_weights.shape or self.cos_theta.shape != self.cos_weights.shape:
            raise GridError("node and weight arrays must have matching shapes")
        if np.any(self.r <= 0):
            raise GridError("radial nodes must be positive")
        if np.any(np.abs(self.cos_theta) >= 1):
            raise GridError("polar nodes must lie strictly inside (-1, 1)")
        if self.phi.size == 0:
            raise GridError("azimuthal grid is empty")
        total = float(np.sum(self.cos_weights)) * 2 * math.pi
        if abs(total - 4 * math.pi) > 1e-12:
            raise GridError(f"angular weights sum to {total!r}, expected 4 pi")

    @classmethod
    def build(
        cls,
        r_cut: float,
        decay_length: float,
        l_max: int,
        n_r: int = 400,
        order: int = 20,
        n_theta: Optional[int] = None,
        n_phi: Optional[int] = None,
        first_panel: Optional[float] = None,
    ) -> "QuadratureGrid":
        """Assemble a grid from explicit radial extent and angular band limit.

        One fifth of the radial nodes go to the tail ``[r_cut, inf)`` through
        ``r = r_cut - decay_length * log(1 - t)``; the rest fill Gauss-Legendre
        panels of ``order`` points on ``[0, r_cut]``.  Panel widths grow
        geometrically from ``first_panel`` so that a short-range sector is
        resolved alongside a long-range one.
        """
        if r_cut <= 0 or decay_length <= 0:
            raise GridError("r_cut and decay_length must be positive")
        n_tail = max(order, n_r // 5)
        n_panels = max(1, (n_r - n_tail) // order)
        x, w = np.polynomial.legendre.leggauss(order)
        edges = _graded_edges(r_cut, min(first_panel or r_cut, r_cut / n_panels), n_panels)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        r_main = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        w_main = (half[:, None] * w[None, :]).ravel()

        t, wt = np.polynomial.legendre.leggauss(n_tail)
        t = (t + 1) / 2
        wt = wt / 2
        r_tail = r_cut - decay_length * np.log1p(-t)
        w_tail = wt * decay_length / (1 - t)

        n_theta = n_theta if n_theta is not None else l_max + 1
        n_phi = n_phi if n_phi is not None else 2 * l_max + 2
        u, wu = np.polynomial.legendre.leggauss(n_theta)
        return cls(
            r=np.concatenate([r_main, r_tail]),
            r_weights=np.concatenate([w_main, w_tail]),
            cos_theta=u,
            cos_weights=wu,
            phi=2 * math.pi * np.arange(n_phi) / n_phi,
        )

    @classmethod
    def for_states(
        cls,
        states: Iterable[QuantumNumbers],
        params: PhysicalParams,
        n_r: int = 400,
        tail_tol: float = 1e-18,
        l_max: Optional[int] = None,
        **kwargs,
    ) -> "QuadratureGrid":
        """Default grid for matrix elements among ``states``.

        The cut ``r_cut`` is placed where the heaviest radial density
        ``zeta^(2n) exp(-zeta)`` has lost all but ``tail_tol`` of its mass.
        """
        states = list(states)
        if not states:
            raise GridError("cannot size a grid for an empty state list")
        n_max = max(max(q.n1, q.n2) for q in states)
        if l_max is None:
            l_max = max(max(q.l1, q.l2) for q in states)
        lengths = []
        for q in states:
            for s in (1, 2):
                n = q.sector(s)[0]
                # u^2 ~ exp(-zeta) with zeta = 2 Z r / (n a0_s)
                lengths.append(n * params.bohr_radius(params.xi_component(s)) / (2 * params.Z))
        decay, shortest = max(lengths), min(lengths)
        k = 2 * n_max + 1
        zeta_cut = brentq(lambda z: math.log(gammaincc(k, z) + 1e-300) - math.log(tail_tol), k, 50.0 * k + 200)
        kwargs.setdefault("first_panel", 2 * shortest)
        return cls.build(zeta_cut * decay, decay, l_max, n_r=n_r, **kwargs)

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.cos_theta)

    @property
    def size(self) -> int:
        return self.r.size * self.cos_theta.size * self.phi.size

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcastable ``(r, theta, phi)`` node arrays of shape ``(N_r, N_theta, N_phi)``."""
        return self.r[:, None, None], self.theta[None, :, None], self.phi[None, None, :]

    @cached_property
    def weights(self) -> np.ndarray:
        """Full weights for ``d^3r = r^2 dr d(cos theta) dphi``."""
        w_phi = 2 * math.pi / self.phi.size
        return (self.r_weights * self.r ** 2)[:, None, None] * self.cos_weights[None, :, None] * w_phi

    def integrate(self, values: np.ndarray) -> complex:
        """Weighted sum of values sampled on :meth:`mesh` (numpy pairwise summation)."""
        prod = np.broadcast_to(self.weights, values.shape) * values
        return complex(np.sum(prod.ravel()))


def _graded_edges(r_cut: float, first: float, n_panels: int) -> np.ndarray:
    """Panel edges on ``[0, r_cut]`` with widths ``first * q**k``."""
    if n_panels == 1 or first * n_panels >= r_cut * (1 - 1e-12):
        return np.linspace(0.0, r_cut, n_panels + 1)
    target = r_cut / first
    q = brentq(lambda q: (q ** n_panels - 1) / (q - 1) - target, 1 + 1e-12, target ** (1 / (n_panels - 1)) + 1)
    widths = first * q ** np.arange(n_panels)
    edges = np.concatenate([[0.0], np.cumsum(widths)])
    edges[-1] = r_cut
    return edges


# -- kets ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampledKet:
    """Bicomplex square-integrable function given by a vectorized evaluator."""

    evaluator: Evaluator
    metadata: Optional[QuantumNumbers] = None
    # linear combinations assemble grid samples from their operands' caches
    _sampler: Optional[Callable] = field(default=None, repr=False, compare=False)
    _samples: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_state(cls, q: QuantumNumbers, params: PhysicalParams) -> "SampledKet":
        return cls(lambda r, t, p: wavefunction_components(q, params, r, t, p), metadata=q)

    @classmethod
    def from_spec(cls, spec: EigenfunctionSpec, params: PhysicalParams) -> "SampledKet":
        return cls(lambda r, t, p: general_eigenfunction_components(spec, params, r, t, p), metadata=spec.qnums)

    @classmethod
    def zero(cls) -> "SampledKet":
        def ev(r, t, p):
            shape = np.broadcast(np.asarray(r), np.asarray(t), np.asarray(p)).shape
            return np.zeros(shape, dtype=complex), np.zeros(shape, dtype=complex)

        return cls(ev)

    def components(self, r, theta, phi) -> tuple[np.ndarray, np.ndarray]:
        shape = np.broadcast(np.asarray(r), np.asarray(theta), np.asarray(phi)).shape
        c1, c2 = self.evaluator(r, theta, phi)
        return (
            np.broadcast_to(np.asarray(c1, dtype=complex), shape),
            np.broadcast_to(np.asarray(c2, dtype=complex), shape),
        )

    def __call__(self, r: float, theta: float, phi: float) -> Bicomplex:
        c1, c2 = self.components(r, theta, phi)
        return Bicomplex(complex(c1), complex(c2))

    def sample(self, grid: QuadratureGrid) -> tuple[np.ndarray, np.ndarray]:
        """Component values on the grid nodes, cached per grid."""
        cached = self._samples.get(id(grid))
        if cached is not None and cached[0] is grid:
            return cached[1]
        if self._sampler is not None:
            values = self._sampler(grid)
        else:
            values = self.components(*grid.mesh())
        self._samples[id(grid)] = (grid, values)
        return values

    def scale(self, alpha) -> "SampledKet":
        a = Bicomplex.coerce(alpha)
        ev = self.evaluator
        return SampledKet(
            lambda r, t, p: _scaled(ev(r, t, p), a),
            _sampler=lambda grid: _scaled(self.sample(grid), a),
        )

    def __rmul__(self, alpha) -> "SampledKet":
        return self.scale(alpha)

    def __add__(self, other: "SampledKet") -> "SampledKet":
        if not isinstance(other, SampledKet):
            return NotImplemented
        f, g = self.evaluator, other.evaluator
        return SampledKet(
            lambda r, t, p: _summed(f(r, t, p), g(r, t, p), 1),
            _sampler=lambda grid: _summed(self.sample(grid), other.sample(grid), 1),
        )

    def __sub__(self, other: "SampledKet") -> "SampledKet":
        if not isinstance(other, SampledKet):
            return NotImplemented
        f, g = self.evaluator, other.evaluator
        return SampledKet(
            lambda r, t, p: _summed(f(r, t, p), g(r, t, p), -1),
            _sampler=lambda grid: _summed(self.sample(grid), other.sample(grid), -1),
        )

    def __neg__(self) -> "SampledKet":
        return self.scale(-1)


def _scaled(values, a: Bicomplex):
    return a.c1 * np.asarray(values[0]), a.c2 * np.asarray(values[1])


def _summed(fv, gv, sign):
    return np.asarray(fv[0]) + sign * np.asarray(gv[0]), np.asarray(fv[1]) + sign * np.asarray(gv[1])


# -- scalar product and norms --------------------------------------------------


def scalar_product(f: SampledKet, g: SampledKet, grid: QuadratureGrid) -> Bicomplex:
    """``(f, g) = sum_s e_s int conj(f_s) g_s`` by quadrature."""
    f1, f2 = f.sample(grid)
    g1, g2 = g.sample(grid)
    return Bicomplex(grid.integrate(np.conj(f1) * g1), grid.integrate(np.conj(f2) * g2))


def induced_norm(f: SampledKet, grid: QuadratureGrid) -> float:
    """``||f|| = sqrt(((f,f)_1 + (f,f)_2) / 2)``."""
    p = scalar_product(f, f, grid)
    return math.sqrt(max(0.0, (p.c1.real + p.c2.real) / 2))


def normalize(f: SampledKet, grid: QuadratureGrid, tol: float = NULL_CONE_TOL) -> SampledKet:
    """Multiply ``f`` by ``(f, f)^(-1/2)``; kets in the null cone cannot be normalized."""
    p = scalar_product(f, f, grid)
    a1, a2 = p.c1.real, p.c2.real
    if a1 <= tol or a2 <= tol:
        raise NullConeError(f"(f, f) = {p} lies in the null cone; the ket cannot be normalized")
    out = f.scale(Bicomplex(1 / math.sqrt(a1), 1 / math.sqrt(a2)))
    return SampledKet(out.evaluator, metadata=f.metadata, _sampler=out._sampler)


# -- orthonormality ------------------------------------------------------------


@dataclass(frozen=True)
class BicomplexMatrix:
    """Matrix of bicomplex numbers stored as two complex arrays."""

    c1: np.ndarray
    c2: np.ndarray

    @property
    def shape(self) -> tuple[int, ...]:
        return self.c1.shape

    def __getitem__(self, idx) -> Bicomplex:
        return Bicomplex(complex(self.c1[idx]), complex(self.c2[idx]))

    def max_deviation(self, other: "BicomplexMatrix") -> float:
        """Largest componentwise modulus of the difference."""
        return float(max(np.max(np.abs(self.c1 - other.c1)), np.max(np.abs(self.c2 - other.c2))))


def expected_orthonormality(states: Sequence[QuantumNumbers]) -> BicomplexMatrix:
    """Exact pattern ``sum_s e_s delta(n_s) delta(l_s) delta(m_s)``."""
    k1 = [q.sector(1) for q in states]
    k2 = [q.sector(2) for q in states]
    c1 = np.array([[1.0 if a == b else 0.0 for b in k1] for a in k1], dtype=complex)
    c2 = np.array([[1.0 if a == b else 0.0 for b in k2] for a in k2], dtype=complex)
    return BicomplexMatrix(c1, c2)


def _sector_gram(keys, xi_s, params, grid):
    distinct = sorted(set(keys))
    mesh = grid.mesh()
    w = grid.weights
    vals = {k: np.asarray(sector_wavefunction(*k, xi_s, params, *mesh), dtype=complex) for k in distinct}
    gram = {}
    for a in distinct:
        ca = np.conj(vals[a]) * w
        for b in distinct:
            gram[a, b] = complex(np.sum((ca * vals[b]).ravel()))
    idx = np.array([[gram[a, b] for b in keys] for a in keys], dtype=complex)
    return idx


def orthonormality_matrix(
    states: Sequence[QuantumNumbers], params: PhysicalParams, grid: Optional[QuadratureGrid] = None
) -> BicomplexMatrix:
    """Matrix of scalar products ``(psi_i, psi_j)`` over ``states``.

    The product is componentwise, so each sector's distinct ``(n, l, m)``
    functions are sampled once and their Gram matrix is reused for every
    sextuplet pair.
    """
    states = list(states)
    if grid is None:
        grid = QuadratureGrid.for_states(states, params)
    c1 = _sector_gram([q.sector(1) for q in states], params.xi1, params, grid)
    c2 = _sector_gram([q.sector(2) for q in states], params.xi2, params, grid)
    return BicomplexMatrix(c1, c2)


# -- operators -----------------------------------------------------------------


def cartesian_to_spherical(x, y, z):
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arccos(np.clip(z / r, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return r, theta, phi


def gaussian_ket(width: float = 1.0, weights=(1.0, 1.0), center=(0.0, 0.0, 0.0)) -> SampledKet:
    """``w_s exp(-|x - c|^2 / (2 width^2))`` in each sector."""
    w1, w2 = complex(weights[0]), complex(weights[1])
    c = np.asarray(center, dtype=float)

    def ev(r, theta, phi):
        r, theta, phi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, theta, phi)))
        x = r * np.sin(theta) * np.cos(phi) - c[0]
        y = r * np.sin(theta) * np.sin(phi) - c[1]
        z = r * np.cos(theta) - c[2]
        g = np.exp(-(x * x + y * y + z * z) / (2 * width ** 2))
        return w1 * g, w2 * g

    return SampledKet(ev)


def _cartesian_components(f: SampledKet, pts: np.ndarray):
    return f.components(*cartesian_to_spherical(pts[..., 0], pts[..., 1], pts[..., 2]))


def commutator_residual(
    i: int, k: int, f: SampledKet, params: PhysicalParams, probes, h: float = 1e-3
) -> float:
    """Relative residual of ``[X_i, P_k] f - i1 eta delta_ik f`` at probe points.

    Axes are numbered 1, 2, 3.  ``P_k = -i1 eta d/dx_k`` is applied with a
    5-point central difference of step ``h``.  The residual of each sector is
    divided by ``|eta_s f_s|`` and the maximum over sectors and probes is
    returned.
    """
    if i not in (1, 2, 3) or k not in (1, 2, 3):
        raise ValueError(f"axes must be 1, 2 or 3, got i={i}, k={k}")
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    step = np.zeros(3)
    step[k - 1] = h
    offsets = (-2, -1, 1, 2)
    coef = (1 / 12, -8 / 12, 8 / 12, -1 / 12)

    f0 = _cartesian_components(f, probes)
    df = [np.zeros(len(probes), dtype=complex) for _ in range(2)]
    dxf = [np.zeros(len(probes), dtype=complex) for _ in range(2)]
    for o, c in zip(offsets, coef):
        pts = probes + o * step
        vals = _cartesian_components(f, pts)
        xi_coord = pts[:, i - 1]
        for s in range(2):
            df[s] += c * vals[s] / h
            dxf[s] += c * xi_coord * vals[s] / h

    worst = 0.0
    x_i = probes[:, i - 1]
    delta = 1.0 if i == k else 0.0
    for s, eta_s in enumerate((params.hbar * params.xi1, params.hbar * params.xi2)):
        p_then_x = x_i * (-1j * eta_s * df[s])
        x_then_p = -1j * eta_s * dxf[s]
        resid = (p_then_x - x_then_p) - 1j * eta_s * delta * f0[s]
        scale = np.abs(eta_s * f0[s])
        worst = max(worst, float(np.max(np.abs(resid) / scale)))
    return worst


Operator = Callable[[SampledKet], SampledKet]


def identity_operator(f: SampledKet) -> SampledKet:
    return f


def azimuthal_rotation(chi: float) -> Operator:
    """Rotation about the x3 axis: ``(U f)(r, theta, phi) = f(r, theta, phi - chi)``."""

    def apply(f: SampledKet) -> SampledKet:
        ev = f.evaluator
        return SampledKet(lambda r, t, p: ev(r, t, np.asarray(p) - chi))

    return apply


def angular_momentum_z(params: PhysicalParams, h: float = 1e-3) -> Operator:
    """``L3 = -i1 eta d/dphi`` by a 5-point central difference in ``phi``."""
    etas = (params.hbar * params.xi1, params.hbar * params.xi2)

    def apply(f: SampledKet) -> SampledKet:
        ev = f.evaluator

        def out(r, t, p):
            p = np.asarray(p, dtype=float)
            vals = [ev(r, t, p + o * h) for o in (-2, -1, 1, 2)]
            res = []
            for s in range(2):
                d = (np.asarray(vals[0][s]) - 8 * np.asarray(vals[1][s]) + 8 * np.asarray(vals[2][s])
                     - np.asarray(vals[3][s])) / (12 * h)
                res.append(-1j * etas[s] * d)
            return res[0], res[1]

        return SampledKet(out)

    return apply


def energies_separated(a: QuantumNumbers, b: QuantumNumbers, params: PhysicalParams) -> bool:
    """True when ``E_a - E_b`` is outside the null cone."""
    ea, eb = energy(a.n1, a.n2, params), energy(b.n1, b.n2, params)
    return not (ea - eb).to_bicomplex().is_null_cone()


def commuting_block_elements(
    U: Operator, states: Sequence[QuantumNumbers], params: PhysicalParams, grid: QuadratureGrid
) -> list[tuple[QuantumNumbers, QuantumNumbers, Bicomplex]]:
    """Matrix elements ``(psi_a, U psi_b)`` for pairs whose eigenvalue gap is invertible."""
    kets = {q: SampledKet.from_state(q, params) for q in states}
    images = {q: U(kets[q]) for q in states}
    out = []
    for a in states:
        for b in states:
            if energies_separated(a, b, params):
                out.append((a, b, scalar_product(kets[a], images[b], grid)))
    return out


def commuting_block_check(
    U: Operator,
    states: Sequence[QuantumNumbers],
    params: PhysicalParams,
    grid: QuadratureGrid,
    tol: float = MATRIX_TOL,
) -> bool:
    """Whether ``(psi_a, U psi_b)`` vanishes whenever ``E_a - E_b`` is invertible."""
    return all(real_norm(v) < tol for _, _, v in commuting_block_elements(U, states, params, grid))
