"""Laguerre and Legendre families, spherical harmonics, hydrogenic radial functions.

All evaluators accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .params import PhysicalParams


def laguerre(q: int, k: int, x):
    """Generalized Laguerre polynomial ``L_q^k(x)``.

    Uses the forward recurrence
    ``(m+1) L_{m+1} = (2m + k + 1 - x) L_m - (m + k) L_{m-1}``.

    Parameters
    ----------
    q : int
        degree, ``q >= 0``
    k : int
        order (the generalized index), ``k >= 0``
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
    """
    if q < 0 or k < 0:
        raise DomainError(f"laguerre needs q, k >= 0, got q={q}, k={k}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if q == 0:
        return prev[()]
    cur = 1.0 + k - x
    for m in range(1, q):
        prev, cur = cur, ((2 * m + k + 1 - x) * cur - (m + k) * prev) / (m + 1)
    return cur[()]


@lru_cache(maxsize=None)
def laguerre_coeffs(q: int, k: int) -> tuple[Fraction, ...]:
    """Exact ascending coefficients of ``L_q^k``, built from the same recurrence on polynomials."""
    if q < 0 or k < 0:
        raise DomainError(f"laguerre needs q, k >= 0, got q={q}, k={k}")
    prev = [Fraction(1)]
    if q == 0:
        return tuple(prev)
    cur = [Fraction(1 + k), Fraction(-1)]
    for m in range(1, q):
        nxt = [Fraction(0)] * (m + 2)
        for i, c in enumerate(cur):
            nxt[i] += (2 * m + k + 1) * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= (m + k) * c
        prev, cur = cur, [c / (m + 1) for c in nxt]
    return tuple(cur)


def assoc_legendre(l: int, m: int, u, sqrt_1mu2=None):
    """Associated Legendre function ``P_l^m(u)`` including the Condon-Shortley phase.

    Negative orders follow ``P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m``.
    ``sqrt_1mu2`` optionally supplies ``sqrt(1 - u^2)``; passing ``sin(theta)``
    keeps full relative accuracy near the poles.
    """
    if l < 0 or abs(m) > l:
        raise DomainError(f"assoc_legendre needs |m| <= l, got l={l}, m={m}")
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > 1.0):
        raise DomainError("assoc_legendre argument must lie in [-1, 1]")
    if m < 0:
        mm = -m
        scale = (-1) ** mm * math.exp(math.lgamma(l - mm + 1) - math.lgamma(l + mm + 1))
        return scale * assoc_legendre(l, mm, u, sqrt_1mu2)
    # P_m^m = (-1)^m (2m-1)!! (1-u^2)^{m/2}
    s = np.sqrt((1.0 - u) * (1.0 + u)) if sqrt_1mu2 is None else np.asarray(sqrt_1mu2, dtype=float)
    pmm = np.ones_like(u)
    for i in range(1, m + 1):
        pmm = -pmm * (2 * i - 1) * s
    if l == m:
        return pmm[()]
    pm1 = u * (2 * m + 1) * pmm
    for ll in range(m + 2, l + 1):
        pmm, pm1 = pm1, ((2 * ll - 1) * u * pm1 - (ll + m - 1) * pmm) / (ll - m)
    return pm1[()]


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal complex spherical harmonic ``Y_lm(theta, phi)``.

    ``theta`` is the polar angle and ``phi`` the azimuth, both in radians.
    """
    if l < 0 or abs(m) > l:
        raise DomainError(f"spherical_harmonic needs |m| <= l, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.exp(math.lgamma(l - m + 1) - math.lgamma(l + m + 1)))
    value = norm * assoc_legendre(l, m, np.clip(np.cos(theta), -1.0, 1.0), np.abs(np.sin(theta))) * np.exp(1j * m * phi)
    return np.asarray(value)[()]


def _check_nl(n: int, l: int):
    if n < 1 or l < 0 or l >= n:
        raise DomainError(f"radial quantum numbers need 0 <= l < n, got n={n}, l={l}")


def log_radial_norm(n: int, l: int, Z: float = 1.0, a0: float = 1.0) -> float:
    """Log of ``[(2Z/(n a0))^3 (n-l-1)! / (2n (n+l)!)]^{1/2}``."""
    _check_nl(n, l)
    return 0.5 * (
        3 * math.log(2 * Z / (n * a0)) + math.lgamma(n - l) - math.log(2 * n) - math.lgamma(n + l + 1)
    )


def radial_shape(n: int, l: int, zeta):
    """Unnormalized radial profile ``exp(-zeta/2) zeta^l L_{n-l-1}^{2l+1}(zeta)``.

    Defined for any real ``zeta``, including the negative values reached on the
    hyperbolic plane.
    """
    _check_nl(n, l)
    zeta = np.asarray(zeta, dtype=float)
    return (np.exp(-zeta / 2) * zeta ** l * laguerre(n - l - 1, 2 * l + 1, zeta))[()]


def radial_u(n_s: int, l_s: int, xi_s: float, params: PhysicalParams, r):
    """Normalized radial function of one idempotent sector.

    ``u(r) = N exp(-zeta/2) zeta^l L_{n-l-1}^{2l+1}(zeta)`` with
    ``zeta = 2 Z r / (n a0 xi_s**2)``, normalized so that
    ``int_0^inf u(r)^2 r^2 dr = 1``.
    """
    _check_nl(n_s, l_s)
    if not xi_s > 0:
        raise DomainError(f"xi_s must be positive, got {xi_s!r}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radial_u needs r >= 0")
    a0s = params.bohr_radius(xi_s)
    zeta = 2 * params.Z * r / (n_s * a0s)
    lam = laguerre(n_s - l_s - 1, 2 * l_s + 1, zeta)
    # fold the normalization into the exponential so that large (n+l)! never materializes
    log_n = log_radial_norm(n_s, l_s, params.Z, a0s)
    with np.errstate(divide="ignore"):
        body = np.exp(log_n - zeta / 2 + (l_s * np.log(zeta) if l_s else 0.0))
    return (body * lam)[()]
