"""Bound-state spectrum and eigenfunctions of the bicomplex Coulomb hamiltonian.

The problem splits into two ordinary hydrogen problems, one per idempotent
sector ``s = 1, 2``, with ``hbar`` replaced by ``eta_s = hbar * xi_s``.  States
are keyed by the integer sextuplet ``(n1, n2, l1, l2, m1, m2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .bicomplex import Bicomplex, Hyperbolic, sqrt_j
from .errors import DomainError
from .params import ATOMIC_UNITS, PhysicalParams
from .special import radial_u, spherical_harmonic


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Bicomplex quantum numbers ``n, l, m`` as idempotent integer pairs."""

    n1: int
    n2: int
    l1: int = 0
    l2: int = 0
    m1: int = 0
    m2: int = 0

    def __post_init__(self):
        for s in (1, 2):
            n, l, m = self.sector(s)
            if not all(isinstance(v, (int, np.integer)) for v in (n, l, m)):
                raise DomainError(f"quantum numbers must be integers, got {self.as_tuple()}")
            if n < 1:
                raise DomainError(f"n{s} must be >= 1, got {n}")
            if not 0 <= l < n:
                raise DomainError(f"l{s} must satisfy 0 <= l{s} < n{s}, got n{s}={n}, l{s}={l}")
            if abs(m) > l:
                raise DomainError(f"m{s} must satisfy |m{s}| <= l{s}, got l{s}={l}, m{s}={m}")

    def sector(self, s: int) -> tuple[int, int, int]:
        if s == 1:
            return self.n1, self.l1, self.m1
        if s == 2:
            return self.n2, self.l2, self.m2
        raise ValueError(f"idempotent index must be 1 or 2, got {s!r}")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n1, self.n2, self.l1, self.l2, self.m1, self.m2)

    @classmethod
    def from_sectors(cls, a: tuple[int, int, int], b: tuple[int, int, int]) -> "QuantumNumbers":
        return cls(a[0], b[0], a[1], b[1], a[2], b[2])

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.as_tuple()) + ")"


def sector_states(n_max: int) -> list[tuple[int, int, int]]:
    """All ``(n, l, m)`` with ``n <= n_max``, ordered by ``n``, then ``l``, then ``m``."""
    return [(n, l, m) for n in range(1, n_max + 1) for l in range(n) for m in range(-l, l + 1)]


def enumerate_states(n1: int, n2: int) -> Iterator[QuantumNumbers]:
    """Every valid sextuplet with the given principal pair."""
    for l1, l2 in product(range(n1), range(n2)):
        for m1, m2 in product(range(-l1, l1 + 1), range(-l2, l2 + 1)):
            yield QuantumNumbers(n1, n2, l1, l2, m1, m2)


def all_states(n_max: int) -> list[QuantumNumbers]:
    """Every sextuplet with ``n1, n2 <= n_max``."""
    sec = sector_states(n_max)
    return [QuantumNumbers.from_sectors(a, b) for a in sec for b in sec]


# -- eigenvalues ---------------------------------------------------------------


def energy_bicomplex(n1: int, n2: int, params: PhysicalParams, xi: Bicomplex) -> Bicomplex:
    """Eigenvalue for an arbitrary bicomplex commutator scalar ``xi``.

    Only needed to probe the formal ``xi -> xi sqrt(j)`` symmetry, where ``xi``
    leaves the hyperbolic numbers.
    """
    if n1 < 1 or n2 < 1:
        raise DomainError(f"principal quantum numbers must be >= 1, got ({n1}, {n2})")
    xi.inverse()  # null-cone guard
    c = params.mu * params.Z ** 2 * params.e2 ** 2 / (2 * params.hbar ** 2)
    return Bicomplex(-c / (xi.c1 ** 2 * n1 ** 2), -c / (xi.c2 ** 2 * n2 ** 2))


def sector_energy(n_s: int, s: int, params: PhysicalParams = ATOMIC_UNITS) -> float:
    """Idempotent component ``E_s = -mu Z^2 e^4 / (2 hbar^2 xi_s^2 n_s^2)``."""
    if n_s < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n_s}")
    c = params.mu * params.Z ** 2 * params.e2 ** 2 / (2 * params.hbar ** 2)
    return -c / (params.xi_component(s) * n_s) ** 2


def energy(n1: int, n2: int, params: PhysicalParams = ATOMIC_UNITS) -> Hyperbolic:
    """Hyperbolic eigenvalue ``E_n = -mu Z^2 e^4 / (2 hbar^2 xi^2 n^2)``."""
    if n1 < 1 or n2 < 1:
        raise DomainError(f"principal quantum numbers must be >= 1, got ({n1}, {n2})")
    return Hyperbolic.from_idempotent(sector_energy(n1, 1, params), sector_energy(n2, 2, params))


def energy_symmetry_check(q: QuantumNumbers, params: PhysicalParams, rel_tol: float = 1e-12) -> bool:
    """Check ``Re{E, xi} = Hy{E, xi sqrt(j)}`` and ``Re{E, xi sqrt(j)} = Hy{E, xi}``."""
    xi = params.xi.to_bicomplex()
    e_plain = energy_bicomplex(q.n1, q.n2, params, xi)
    e_twisted = energy_bicomplex(q.n1, q.n2, params, xi * sqrt_j())
    scale = max(abs(e_plain.c1), abs(e_plain.c2))
    tol = rel_tol * scale
    return abs(e_plain.x - e_twisted.y) <= tol and abs(e_twisted.x - e_plain.y) <= tol


def degeneracy(n1: int, n2: int) -> int:
    if n1 < 1 or n2 < 1:
        raise DomainError(f"principal quantum numbers must be >= 1, got ({n1}, {n2})")
    return n1 ** 2 * n2 ** 2


# -- eigenfunctions ------------------------------------------------------------


def sector_wavefunction(n: int, l: int, m: int, xi_s: float, params: PhysicalParams, r, theta, phi):
    """Standard hydrogenic ``u_nl(r) Y_lm(theta, phi)`` in one sector (vectorized)."""
    return radial_u(n, l, xi_s, params, r) * spherical_harmonic(l, m, theta, phi)


def wavefunction_components(q: QuantumNumbers, params: PhysicalParams, r, theta, phi):
    """Idempotent component arrays ``(psi_1, psi_2)`` of ``psi_nlm``."""
    c1 = sector_wavefunction(q.n1, q.l1, q.m1, params.xi1, params, r, theta, phi)
    c2 = sector_wavefunction(q.n2, q.l2, q.m2, params.xi2, params, r, theta, phi)
    return np.asarray(c1, dtype=complex), np.asarray(c2, dtype=complex)


def wavefunction_eval(q: QuantumNumbers, params: PhysicalParams, r: float, theta: float, phi: float) -> Bicomplex:
    """``psi_nlm(r, theta, phi)`` as a bicomplex number."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    c1, c2 = wavefunction_components(q, params, r, theta, phi)
    return Bicomplex(complex(c1), complex(c2))


@dataclass(frozen=True)
class EigenfunctionSpec:
    """Finite superposition of degenerate eigenfunctions.

    ``coefficients`` maps ``(s, l, m)`` to the C(i1) weight of
    ``u_{n_s l} Y_{l m} e_s``.  When it is omitted the spec is the single state
    ``qnums``.  Only ``qnums.n1`` and ``qnums.n2`` matter in the superposition
    form, since every term must share the eigenvalue.
    """

    qnums: QuantumNumbers
    coefficients: Optional[Mapping[tuple[int, int, int], complex]] = field(default=None)

    def __post_init__(self):
        if self.coefficients is None:
            return
        for key in self.coefficients:
            if len(key) != 3:
                raise DomainError(f"coefficient key must be (s, l, m), got {key!r}")
            s, l, m = key
            if s not in (1, 2):
                raise DomainError(f"sector index must be 1 or 2, got {s!r}")
            n = self.qnums.n1 if s == 1 else self.qnums.n2
            if not 0 <= l < n or abs(m) > l:
                raise DomainError(f"coefficient key {key!r} violates 0 <= l < n{s}={n}, |m| <= l")

    def terms(self) -> list[tuple[int, int, int, complex]]:
        if self.coefficients is None:
            q = self.qnums
            return [(1, q.l1, q.m1, 1.0 + 0j), (2, q.l2, q.m2, 1.0 + 0j)]
        return sorted((s, l, m, complex(c)) for (s, l, m), c in self.coefficients.items())


def general_eigenfunction_components(spec: EigenfunctionSpec, params: PhysicalParams, r, theta, phi):
    shape = np.broadcast(np.asarray(r), np.asarray(theta), np.asarray(phi)).shape
    out = {1: np.zeros(shape, dtype=complex), 2: np.zeros(shape, dtype=complex)}
    for s, l, m, c in spec.terms():
        n = spec.qnums.n1 if s == 1 else spec.qnums.n2
        out[s] = out[s] + c * sector_wavefunction(n, l, m, params.xi_component(s), params, r, theta, phi)
    return out[1], out[2]


def general_eigenfunction_eval(spec: EigenfunctionSpec, params: PhysicalParams, r, theta, phi) -> Bicomplex:
    c1, c2 = general_eigenfunction_components(spec, params, r, theta, phi)
    return Bicomplex(complex(c1), complex(c2))


# -- radial equation check -----------------------------------------------------


def default_radial_samples(n_s: int, xi_s: float, params: PhysicalParams, count: int = 200) -> np.ndarray:
    """Sample radii spanning the bulk and tail of ``u_n``, away from the origin.

    The lower end stays clear of the region where ``u ~ r^l`` is many orders of
    magnitude below its peak.
    """
    a = params.bohr_radius(xi_s) / params.Z
    return np.linspace(max(0.1 * a, 0.02 * n_s ** 2 * a), 4 * n_s ** 2 * a + 20 * a, count)


def radial_ode_residual(
    n_s: int,
    l_s: int,
    xi_s: float,
    params: PhysicalParams,
    r_samples: Optional[Sequence[float]] = None,
    func: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> float:
    """Largest scaled residual of the sector radial equation.

    Evaluates ``(1/r^2)(r^2 u')' - [l(l+1)/r^2 - (2 mu/eta^2)(Z e^2/r + E)] u``
    with 5-point central differences at step ``h = 1e-3 max(1, r)`` and divides
    by ``max(|u|, |u'|/r)`` at each sample.  ``func`` replaces the closed-form
    ``u`` (to confirm that non-solutions are rejected).
    """
    if n_s < 1 or not 0 <= l_s < n_s:
        raise DomainError(f"radial quantum numbers need 0 <= l < n, got n={n_s}, l={l_s}")
    if r_samples is None:
        r_samples = default_radial_samples(n_s, xi_s, params)
    r = np.asarray(r_samples, dtype=float)
    h = 1e-3 * np.maximum(1.0, r)
    if np.any(r - 2 * h <= 0):
        raise DomainError("sample radii must exceed twice the finite-difference step")
    if func is None:
        def func(x):
            return radial_u(n_s, l_s, xi_s, params, x)

    um2, um1, u0, up1, up2 = (func(r + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (um2 - 8 * um1 + 8 * up1 - up2) / (12 * h)
    d2 = (-um2 + 16 * um1 - 30 * u0 + 16 * up1 - up2) / (12 * h * h)

    eta2 = (params.hbar * xi_s) ** 2
    e_s = -params.mu * params.Z ** 2 * params.e2 ** 2 / (2 * eta2 * n_s ** 2)
    centrifugal = l_s * (l_s + 1) / r ** 2
    potential = 2 * params.mu / eta2 * (params.Z * params.e2 / r + e_s)
    resid = d2 + 2 * d1 / r - (centrifugal - potential) * u0
    scale = np.maximum(np.abs(u0), np.abs(d1) / r)
    return float(np.max(np.abs(resid) / scale))
