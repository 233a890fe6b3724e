"""Physical parameters of the bicomplex Coulomb problem."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bicomplex import Bicomplex, Hyperbolic
from .errors import DomainError, NullConeError


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, charge and commutator scale.

    Defaults are atomic units (``mu = hbar = e2 = Z = 1``) with ``xi = 1``,
    which reproduce ordinary hydrogen.  ``xi1`` and ``xi2`` are the idempotent
    components of the commutator scalar ``xi``; both must be strictly positive.
    """

    mu: float = 1.0
    Z: float = 1.0
    e2: float = 1.0
    hbar: float = 1.0
    xi1: float = 1.0
    xi2: float = 1.0

    def __post_init__(self):
        for name in ("mu", "Z", "e2", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")
        if self.xi1 == 0 or self.xi2 == 0:
            raise NullConeError(f"xi = ({self.xi1}, {self.xi2}) lies in the null cone")
        for name in ("xi1", "xi2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive (xi in D+), got {v!r}")

    @property
    def xi(self) -> Hyperbolic:
        return Hyperbolic.from_idempotent(self.xi1, self.xi2)

    @property
    def eta(self) -> Bicomplex:
        """``hbar * xi`` as a bicomplex number."""
        return Bicomplex(self.hbar * self.xi1, self.hbar * self.xi2)

    def xi_component(self, s: int) -> float:
        if s == 1:
            return self.xi1
        if s == 2:
            return self.xi2
        raise ValueError(f"idempotent index must be 1 or 2, got {s!r}")

    @property
    def a0(self) -> float:
        """Bohr radius ``hbar**2 / (mu e2)``."""
        return self.hbar ** 2 / (self.mu * self.e2)

    def bohr_radius(self, xi_s: float) -> float:
        """Sector Bohr radius ``a0 * xi_s**2``."""
        return self.a0 * xi_s ** 2

    def with_xi(self, xi1: float, xi2: float) -> "PhysicalParams":
        return PhysicalParams(self.mu, self.Z, self.e2, self.hbar, xi1, xi2)


ATOMIC_UNITS = PhysicalParams()
