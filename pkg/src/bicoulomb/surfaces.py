"""Radial eigenfunctions continued to the hyperbolic plane.

The radial variable ``zeta = x + y j`` is treated as a free hyperbolic number,
so ``u_nl`` becomes a function of two real variables with a real part and a
hyperbolic (``j``) part.  Two independent constructions are provided:

* the idempotent path evaluates each sector at ``zeta_1 = x + y`` and
  ``zeta_2 = x - y`` and recombines ``Re = (u_1 + u_2)/2``,
  ``Hy = (u_1 - u_2)/2``;
* the polynomial path expands ``zeta^l L(zeta)`` over the hyperbolic numbers
  with exact rational coefficients, and multiplies by
  ``exp(-zeta/2) = exp(-x/2) (cosh(y/2) - j sinh(y/2))`` and the ``xi^-3``
  normalization written in the ``{1, j}`` basis.  This path runs in
  multiprecision arithmetic and is rounded to double at the end.

Values are the dimensionless ``a0^{3/2} u``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .bicomplex import Hyperbolic
from .errors import DomainError
from .special import laguerre_coeffs, log_radial_norm, radial_shape

Pair = tuple[int, int]

# Expanded monomials of ell cancel by many orders of magnitude, and the
# cosh/sinh recombination loses up to exp(|y|) more, so double precision is
# not enough for this path.
MP_PRECISION = 256


def _pair(v) -> Pair:
    if isinstance(v, (int, np.integer)):
        return int(v), int(v)
    a, b = v
    return int(a), int(b)


def _check(n: Pair, l: Pair):
    for s in range(2):
        if n[s] < 1 or not 0 <= l[s] <= n[s] - 1:
            raise DomainError(f"need 0 <= l_s <= n_s - 1, got n={n}, l={l}")


def _xi(xi) -> Hyperbolic:
    if xi is None:
        return Hyperbolic(1.0, 0.0)
    if not isinstance(xi, Hyperbolic):
        xi = Hyperbolic.from_idempotent(*xi)
    if not xi.is_positive():
        raise DomainError(f"xi must lie in D+, got {xi}")
    return xi


def normalization_constants(n: Pair, l: Pair, Z: float = 1.0) -> tuple[float, float]:
    """Per-sector ``sqrt(u0_s)``, the radial normalization at ``xi_s = 1`` and ``a0 = 1``."""
    return math.exp(log_radial_norm(n[0], l[0], Z)), math.exp(log_radial_norm(n[1], l[1], Z))


# -- idempotent path -----------------------------------------------------------


def surface_eval_idempotent(n, l, xi, x, y, Z: float = 1.0, normalized: bool = True):
    """``(re, hy, norm2)`` of ``u_nl`` at ``zeta = x + y j`` through the idempotent sectors.

    ``n`` and ``l`` are integer pairs (or single integers for equal sectors);
    ``xi`` is a :class:`Hyperbolic` in D+ or a pair of its idempotent
    components.  ``normalized=False`` drops the constant ``sqrt(u0)``.
    """
    n, l = _pair(n), _pair(l)
    _check(n, l)
    xi = _xi(xi)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    consts = normalization_constants(n, l, Z) if normalized else (1.0, 1.0)
    u1 = consts[0] * xi.c1 ** -3 * radial_shape(n[0], l[0], x + y)
    u2 = consts[1] * xi.c2 ** -3 * radial_shape(n[1], l[1], x - y)
    re = (u1 + u2) / 2
    hy = (u1 - u2) / 2
    return re, hy, re * re + hy * hy


# -- polynomial path -----------------------------------------------------------


@dataclass(frozen=True)
class BivariateHyperbolicPoly:
    """Polynomial in ``(x, y)`` with a real part and a ``j`` part.

    ``re`` and ``hy`` map exponent pairs ``(a, b)`` (for ``x**a * y**b``) to
    exact rational coefficients.  Zero coefficients are not stored.
    """

    re: dict
    hy: dict

    @property
    def degree(self) -> int:
        keys = list(self.re) + list(self.hy)
        return max((a + b for a, b in keys), default=0)

    def evaluate(self, x, y, precision: int = MP_PRECISION) -> tuple[np.ndarray, np.ndarray]:
        """Values at float points, computed in ``precision``-bit arithmetic and rounded."""
        with _mp_context(precision):
            re, hy = self.evaluate_mp(_to_mp(x), _to_mp(y))
        return _to_float(re), _to_float(hy)

    def evaluate_mp(self, x, y):
        """Nested Horner on object arrays of MPFR numbers (caller sets the precision)."""
        return _horner2(self.re, x, y), _horner2(self.hy, x, y)

    def evaluate_exact(self, x: float, y: float) -> tuple[Fraction, Fraction]:
        """Exact value at the binary rationals ``x`` and ``y``."""
        fx, fy = Fraction(x), Fraction(y)
        return _exact2(self.re, fx, fy), _exact2(self.hy, fx, fy)


_mpfr_ufunc = np.frompyfunc(gmpy2.mpfr, 1, 1)
_float_ufunc = np.frompyfunc(float, 1, 1)
_exp = np.frompyfunc(gmpy2.exp, 1, 1)
_cosh = np.frompyfunc(gmpy2.cosh, 1, 1)
_sinh = np.frompyfunc(gmpy2.sinh, 1, 1)


def _mp_context(precision: int):
    return gmpy2.context(gmpy2.get_context(), precision=precision)


def _to_mp(a):
    return np.asarray(_mpfr_ufunc(np.asarray(a, dtype=float)), dtype=object)


def _to_float(a):
    return np.asarray(_float_ufunc(a), dtype=float)


def _horner2(table: dict, x, y):
    shape = np.broadcast(x, y).shape
    zero = np.full(shape, gmpy2.mpfr(0), dtype=object)
    if not table:
        return zero
    deg_y = max(b for _, b in table)
    deg_x = max(a for a, _ in table)
    out = zero
    for b in range(deg_y, -1, -1):
        inner = zero
        for a in range(deg_x, -1, -1):
            inner = inner * x
            c = table.get((a, b))
            if c is not None:
                inner = inner + gmpy2.mpfr(gmpy2.mpq(c.numerator, c.denominator))
        out = out * y + inner
    return out


def _exact2(table: dict, x: Fraction, y: Fraction) -> Fraction:
    return sum((c * x ** a * y ** b for (a, b), c in table.items()), Fraction(0))


def _binomial_rows(k: int) -> list[int]:
    return [math.comb(k, i) for i in range(k + 1)]


@lru_cache(maxsize=64)
def build_ell_polynomial(n, l) -> BivariateHyperbolicPoly:
    """Expand ``ell(zeta) = zeta^l L_{n-l-1}^{2l+1}(zeta)`` at ``zeta = x + y j``.

    Each sector contributes a univariate polynomial; their coefficients are
    paired into hyperbolic coefficients ``(p1_k + p2_k)/2 + (p1_k - p2_k)/2 j``
    (this handles unequal sectors) and each power
    ``(x + y j)^k = sum_i C(k, i) x^(k-i) y^i j^i`` is reduced with ``j^2 = 1``.
    """
    n, l = _pair(n), _pair(l)
    _check(n, l)
    sectors = []
    for s in range(2):
        lag = laguerre_coeffs(n[s] - l[s] - 1, 2 * l[s] + 1)
        sectors.append({l[s] + i: c for i, c in enumerate(lag)})
    re: dict = {}
    hy: dict = {}
    for k in sorted(set(sectors[0]) | set(sectors[1])):
        p1 = sectors[0].get(k, Fraction(0))
        p2 = sectors[1].get(k, Fraction(0))
        cx, cy = (p1 + p2) / 2, (p1 - p2) / 2
        for i, binom in enumerate(_binomial_rows(k)):
            mono = (k - i, i)
            # j^i is 1 for even i and j for odd i; (cx + cy j) * j = cy + cx j
            to_re, to_hy = (cx, cy) if i % 2 == 0 else (cy, cx)
            if to_re:
                re[mono] = re.get(mono, Fraction(0)) + binom * to_re
            if to_hy:
                hy[mono] = hy.get(mono, Fraction(0)) + binom * to_hy
    return BivariateHyperbolicPoly(
        {k: v for k, v in re.items() if v}, {k: v for k, v in hy.items() if v}
    )


def xi_inverse_cube(xi) -> Hyperbolic:
    """``xi^-3`` in the ``{1, j}`` basis from ``xi = x_xi + y_xi j``."""
    xi = _xi(xi)
    a = (xi.x + xi.y) ** -3
    b = (xi.x - xi.y) ** -3
    return Hyperbolic((a + b) / 2, (a - b) / 2)


def surface_eval_polynomial(n, l, xi, x, y, Z: float = 1.0, normalized: bool = True, precision: int = MP_PRECISION):
    """``(re, hy, norm2)`` of ``u_nl`` at ``zeta = x + y j`` in the ``{1, j}`` basis.

    With ``A = x' cosh(y/2) - y' sinh(y/2)`` and ``B = y' cosh(y/2) - x' sinh(y/2)``,
    where ``x' + y' j = xi^-3``::

        Re u = N e^{-x/2} (A Re ell + B Hy ell)
        Hy u = N e^{-x/2} (A Hy ell + B Re ell)

    ``N`` is the normalization, itself hyperbolic when the sectors differ.
    Everything is carried out in ``precision``-bit floating point and rounded
    to double at the end.
    """
    n, l = _pair(n), _pair(l)
    _check(n, l)
    poly = build_ell_polynomial(n, l)
    xi = _xi(xi)
    with _mp_context(precision):
        mx, my = _to_mp(x), _to_mp(y)
        ell_re, ell_hy = poly.evaluate_mp(mx, my)
        # xi^-3 from its idempotent components, then back to {1, j}
        a = gmpy2.mpfr(xi.x) + gmpy2.mpfr(xi.y)
        b = gmpy2.mpfr(xi.x) - gmpy2.mpfr(xi.y)
        xp = (a ** -3 + b ** -3) / 2
        yp = (a ** -3 - b ** -3) / 2
        half_y = my / 2
        ch, sh = _cosh(half_y), _sinh(half_y)
        A = xp * ch - yp * sh
        B = yp * ch - xp * sh
        damp = _exp(-mx / 2)
        re = damp * (A * ell_re + B * ell_hy)
        hy = damp * (A * ell_hy + B * ell_re)
        if normalized:
            c1, c2 = (gmpy2.exp(gmpy2.mpfr(log_radial_norm(n[s], l[s], Z))) for s in range(2))
            nx, ny = (c1 + c2) / 2, (c1 - c2) / 2
            re, hy = nx * re + ny * hy, nx * hy + ny * re
        re, hy = _to_float(re), _to_float(hy)
    if re.ndim == 0:
        re, hy = float(re), float(hy)
    return re, hy, re * re + hy * hy


# -- grids and export ----------------------------------------------------------


@dataclass(frozen=True)
class SurfaceGrid:
    """Sampled ``re``, ``hy`` and ``norm2`` on an ``x`` by ``y`` lattice.

    Arrays are indexed ``[ix, iy]``; export walks them row-major (``x`` outer).
    """

    x: np.ndarray
    y: np.ndarray
    re: np.ndarray
    hy: np.ndarray
    norm2: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.x.size, self.y.size

    def rows(self) -> Iterable[tuple[float, float, float, float, float]]:
        for i, xv in enumerate(self.x):
            for k, yv in enumerate(self.y):
                yield float(xv), float(yv), float(self.re[i, k]), float(self.hy[i, k]), float(self.norm2[i, k])


def surface_grid(
    n,
    l,
    xi=None,
    x_range: tuple[float, float, int] = (0.0, 120.0, 400),
    y_range: tuple[float, float, int] = (-40.0, 40.0, 267),
    path: str = "idempotent",
    Z: float = 1.0,
    normalized: bool = True,
) -> SurfaceGrid:
    """Evaluate a surface on a uniform lattice; the default lattice resolves the ``n = 25, l = 12`` structure."""
    xs = np.linspace(*x_range[:2], int(x_range[2]))
    ys = np.linspace(*y_range[:2], int(y_range[2]))
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    if path == "idempotent":
        re, hy, n2 = surface_eval_idempotent(n, l, xi, X, Y, Z=Z, normalized=normalized)
    elif path == "polynomial":
        re, hy, n2 = surface_eval_polynomial(n, l, xi, X, Y, Z=Z, normalized=normalized)
    else:
        raise ValueError(f"unknown evaluation path {path!r}")
    return SurfaceGrid(xs, ys, np.asarray(re), np.asarray(hy), np.asarray(n2))


COLUMNS = ("x", "y", "re", "hy", "norm2")


def _fmt(v: float) -> str:
    return format(v, ".17g")


def export_surface(grid: SurfaceGrid, fmt: str = "csv") -> bytes:
    """Serialize a surface deterministically as CSV or JSON."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in grid.rows():
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "columns": list(COLUMNS),
            "shape": list(grid.shape),
            "rows": [list(row) for row in grid.rows()],
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    raise ValueError(f"unknown surface format {fmt!r}")


def read_surface(data: bytes, fmt: str = "csv") -> SurfaceGrid:
    """Inverse of :func:`export_surface`."""
    if fmt == "csv":
        reader = csv.reader(io.StringIO(data.decode()))
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected surface header {header!r}")
        rows = [[float(v) for v in row] for row in reader]
    elif fmt == "json":
        doc = json.loads(data)
        rows = doc["rows"]
    else:
        raise ValueError(f"unknown surface format {fmt!r}")
    return _from_rows(rows)


def _from_rows(rows: Sequence[Sequence[float]]) -> SurfaceGrid:
    arr = np.asarray(rows, dtype=float).reshape(-1, 5)
    xs = np.unique(arr[:, 0])
    ys = np.unique(arr[:, 1])
    shape = (xs.size, ys.size)
    if arr.shape[0] != xs.size * ys.size:
        raise ValueError("surface rows do not form a full lattice")
    return SurfaceGrid(xs, ys, arr[:, 2].reshape(shape), arr[:, 3].reshape(shape), arr[:, 4].reshape(shape))
