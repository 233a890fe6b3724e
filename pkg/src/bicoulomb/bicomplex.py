"""Bicomplex and hyperbolic numbers in the idempotent representation.

A bicomplex number is stored as the pair ``(c1, c2)`` of its coefficients on
the idempotent basis ``{e1, e2}``::

    alpha = c1 * e1 + c2 * e2,   e1**2 = e1, e2**2 = e2, e1*e2 = 0, e1 + e2 = 1

The coefficients are ordinary Python ``complex`` values whose imaginary unit
plays the role of ``i1``.  In this basis every ring operation is componentwise,
so a product costs two complex multiplies.

The hyperbolic unit is ``j = e1 - e2`` and the hyperbolic form of a number is
``x + y j`` with ``c1 = x + y`` and ``c2 = x - y``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Complex as _ComplexABC
from typing import Union

from .errors import DomainError, NullConeError

NULL_CONE_TOL = 1e-12

Scalar = Union[int, float, complex]


def _as_component(value) -> complex:
    z = complex(value)
    if not cmath.isfinite(z):
        raise ValueError(f"bicomplex components must be finite, got {value!r}")
    return z


@dataclass(frozen=True, slots=True)
class Bicomplex:
    """Element of the bicomplex ring, held as idempotent components."""

    c1: complex
    c2: complex

    def __post_init__(self):
        object.__setattr__(self, "c1", _as_component(self.c1))
        object.__setattr__(self, "c2", _as_component(self.c2))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_complex(cls, z: Scalar) -> "Bicomplex":
        """Embed ``z`` in C(i1) as ``z e1 + z e2``."""
        return cls(z, z)

    @classmethod
    def from_hyperbolic(cls, x: Scalar, y: Scalar) -> "Bicomplex":
        """Build ``x + y j`` for complex ``x`` and ``y``."""
        x = complex(x)
        y = complex(y)
        return cls(x + y, x - y)

    @classmethod
    def coerce(cls, value) -> "Bicomplex":
        if isinstance(value, Bicomplex):
            return value
        if isinstance(value, Hyperbolic):
            return value.to_bicomplex()
        if isinstance(value, _ComplexABC):
            return cls(value, value)
        raise TypeError(f"cannot interpret {type(value).__name__} as a bicomplex number")

    # -- hyperbolic representation ----------------------------------------

    @property
    def x(self) -> complex:
        """Coefficient of 1 in ``x + y j``."""
        return (self.c1 + self.c2) / 2

    @property
    def y(self) -> complex:
        """Coefficient of j in ``x + y j``."""
        return (self.c1 - self.c2) / 2

    def is_hyperbolic(self, tol: float = 0.0) -> bool:
        return abs(self.c1.imag) <= tol and abs(self.c2.imag) <= tol

    def to_hyperbolic(self, tol: float = NULL_CONE_TOL) -> "Hyperbolic":
        if not self.is_hyperbolic(tol):
            raise DomainError(f"{self} has non-real idempotent components")
        return Hyperbolic.from_idempotent(self.c1.real, self.c2.real)

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.c1 + other.c1, self.c2 + other.c2)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.c1 - other.c1, self.c2 - other.c2)

    def __rsub__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.c1 * other.c1, self.c2 * other.c2)

    __rmul__ = __mul__

    def __neg__(self) -> "Bicomplex":
        return Bicomplex(-self.c1, -self.c2)

    def __pos__(self) -> "Bicomplex":
        return self

    def __truediv__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Bicomplex":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return Bicomplex(self.c1 ** k, self.c2 ** k)

    def __abs__(self) -> float:
        return real_norm(self)

    # -- conjugation, norm, inversion -------------------------------------

    def dagger(self) -> "Bicomplex":
        return Bicomplex(self.c1.conjugate(), self.c2.conjugate())

    def is_null_cone(self, tol: float = NULL_CONE_TOL) -> bool:
        return is_null_cone(self, tol)

    def inverse(self, tol: float = NULL_CONE_TOL) -> "Bicomplex":
        return inverse(self, tol)

    def isclose(self, other, rel_tol: float = 1e-9, abs_tol: float = 0.0) -> bool:
        other = Bicomplex.coerce(other)
        return cmath.isclose(self.c1, other.c1, rel_tol=rel_tol, abs_tol=abs_tol) and cmath.isclose(
            self.c2, other.c2, rel_tol=rel_tol, abs_tol=abs_tol
        )

    def __str__(self) -> str:
        return f"{_fmt_complex(self.c1)} | {_fmt_complex(self.c2)}"


def _fmt_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1.0, z.imag) < 0) else "+"
    return f"{z.real:.17g}{sign}{abs(z.imag):.17g}i1"


@dataclass(frozen=True, slots=True)
class Hyperbolic:
    """Hyperbolic number ``x + y j`` with real ``x`` and ``y``."""

    x: float
    y: float

    def __post_init__(self):
        for name in ("x", "y"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"hyperbolic components must be finite, got {name}={v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_idempotent(cls, c1: float, c2: float) -> "Hyperbolic":
        return cls((c1 + c2) / 2, (c1 - c2) / 2)

    @property
    def c1(self) -> float:
        return self.x + self.y

    @property
    def c2(self) -> float:
        return self.x - self.y

    def to_bicomplex(self) -> Bicomplex:
        return Bicomplex(self.c1, self.c2)

    def is_positive(self) -> bool:
        """Membership in D+ (both idempotent components strictly positive)."""
        return self.c1 > 0 and self.c2 > 0

    def _coerce(self, other):
        if isinstance(other, Hyperbolic):
            return other
        if isinstance(other, (int, float)):
            return Hyperbolic(other, 0.0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Hyperbolic(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # j**2 = 1
        return Hyperbolic(self.x * o.x + self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __neg__(self) -> "Hyperbolic":
        return Hyperbolic(-self.x, -self.y)

    def __pow__(self, k: int) -> "Hyperbolic":
        if not isinstance(k, int):
            return NotImplemented
        c1, c2 = self.c1, self.c2
        if k < 0 and (c1 == 0 or c2 == 0):
            raise NullConeError(f"{self} is a zero divisor")
        return Hyperbolic.from_idempotent(c1 ** k, c2 ** k)

    def __abs__(self) -> float:
        return math.hypot(self.x, self.y)

    def __str__(self) -> str:
        sign = "-" if self.y < 0 else "+"
        return f"{self.x:.17g}{sign}{abs(self.y):.17g}j"


ZERO = Bicomplex(0, 0)
ONE = Bicomplex(1, 1)
E1 = Bicomplex(1, 0)
E2 = Bicomplex(0, 1)
J = Bicomplex(1, -1)
I1 = Bicomplex(1j, 1j)
# i2 := -i1 j; kept as a constant only
I2 = Bicomplex(-1j, 1j)


def dagger(a: Bicomplex) -> Bicomplex:
    """Componentwise complex conjugation on the idempotent basis."""
    return a.dagger()


def real_norm(a: Bicomplex) -> float:
    """Euclidean norm scaled so that ``|1| == 1``.

    Equals ``sqrt(x**2 + y**2)`` when ``a = x + y j`` is hyperbolic.
    """
    # hypot avoids spurious underflow and overflow of the squared moduli
    return math.hypot(abs(a.c1), abs(a.c2)) / math.sqrt(2.0)


def is_null_cone(a: Bicomplex, tol: float = NULL_CONE_TOL) -> bool:
    """True when either idempotent component vanishes (within ``tol``)."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(a.c1) <= tol or abs(a.c2) <= tol


def inverse(a: Bicomplex, tol: float = NULL_CONE_TOL) -> Bicomplex:
    if is_null_cone(a, tol):
        raise NullConeError(f"{a} lies in the null cone and has no inverse")
    return Bicomplex(1 / a.c1, 1 / a.c2)


def sqrt_j() -> Bicomplex:
    """The square root ``e1 + i1 e2`` of the hyperbolic unit."""
    return Bicomplex(1, 1j)
