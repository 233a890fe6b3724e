import json
from fractions import Fraction

import numpy as np
import pytest

from bicoulomb import ATOMIC_UNITS, DomainError, Hyperbolic, radial_u
from bicoulomb.special import laguerre
from bicoulomb.surfaces import (
    COLUMNS,
    SurfaceGrid,
    build_ell_polynomial,
    export_surface,
    normalization_constants,
    read_surface,
    surface_eval_idempotent,
    surface_eval_polynomial,
    surface_grid,
    xi_inverse_cube,
)


def ell(n, l, zeta):
    return zeta ** l * laguerre(n - l - 1, 2 * l + 1, zeta)


# -- ell polynomial --------------------------------------------------------------


def test_ell_constant_case():
    p = build_ell_polynomial((1, 1), (0, 0))
    assert p.re == {(0, 0): Fraction(1)}
    assert p.hy == {}


def test_ell_first_laguerre():
    p = build_ell_polynomial((2, 2), (0, 0))
    assert p.re == {(0, 0): Fraction(2), (1, 0): Fraction(-1)}
    assert p.hy == {(0, 1): Fraction(-1)}
    assert p.degree == 1


@pytest.mark.parametrize("n,l", [(3, 1), (6, 2), (10, 4), (25, 12)])
def test_ell_parity_in_y(n, l):
    p = build_ell_polynomial(n, l)
    assert p.hy and all(b % 2 == 1 for _, b in p.hy)
    assert all(b % 2 == 0 for _, b in p.re)
    assert p.degree == n - 1


@pytest.mark.parametrize("n,l", [((4, 4), (1, 1)), ((5, 3), (2, 0)), ((2, 6), (0, 3))])
def test_ell_matches_idempotent_sectors_exactly(n, l):
    p = build_ell_polynomial(n, l)
    for x, y in [(0.5, 0.25), (3.0, -1.5), (7.25, 2.0)]:
        re, hy = p.evaluate_exact(x, y)
        assert isinstance(re, Fraction)
        # (re + hy) and (re - hy) are ell_1(x + y) and ell_2(x - y)
        assert float(re + hy) == pytest.approx(ell(n[0], l[0], x + y), rel=1e-12, abs=1e-12)
        assert float(re - hy) == pytest.approx(ell(n[1], l[1], x - y), rel=1e-12, abs=1e-12)


def test_ell_multiprecision_matches_exact():
    p = build_ell_polynomial(25, 12)
    xs = np.array([0.0, 13.5, 61.25, 120.0])
    ys = np.array([0.0, -7.75, 20.5, 40.0])
    re, hy = p.evaluate(xs, ys)
    for i in range(xs.size):
        ex_re, ex_hy = p.evaluate_exact(xs[i], ys[i])
        assert re[i] == pytest.approx(float(ex_re), rel=1e-15, abs=1e-300)
        assert hy[i] == pytest.approx(float(ex_hy), rel=1e-15, abs=1e-300)


def test_ell_domain_error():
    with pytest.raises(DomainError):
        build_ell_polynomial(3, 3)


# -- xi expansion ----------------------------------------------------------------


def test_xi_inverse_cube_identity():
    assert xi_inverse_cube(None) == Hyperbolic(1.0, 0.0)


def test_xi_inverse_cube_general():
    xi = Hyperbolic(1.2, 0.3)
    got = xi_inverse_cube(xi)
    want = xi ** -3
    assert got.x == pytest.approx(want.x, rel=1e-14) and got.y == pytest.approx(want.y, rel=1e-14)


def test_xi_must_be_positive():
    with pytest.raises(DomainError):
        surface_eval_idempotent(2, 0, Hyperbolic(1.0, 1.0), 1.0, 0.0)
    with pytest.raises(DomainError):
        surface_eval_polynomial(2, 0, (1.0, -2.0), 1.0, 0.0)


# -- cut at y = 0 ----------------------------------------------------------------


@pytest.mark.parametrize("path", [surface_eval_idempotent, surface_eval_polynomial])
@pytest.mark.parametrize("n,l", [(1, 0), (3, 2), (8, 3), (25, 12)])
def test_real_cut_matches_radial_function(path, n, l):
    x = np.linspace(0.05, 120, 60)
    re, hy, norm2 = path(n, l, None, x, 0.0 * x)
    assert np.max(np.abs(hy)) < 1e-12
    # zeta = 2 r / n in atomic units
    ref = radial_u(n, l, 1.0, ATOMIC_UNITS, n * x / 2)
    assert np.allclose(re, ref, rtol=1e-10, atol=1e-300)
    assert np.array_equal(norm2, re * re + hy * hy)


def test_exponential_factor_without_hyperbolic_part():
    x = np.array([0.5, 4.0, 30.0])
    re, hy, _ = surface_eval_polynomial(1, 0, None, x, 0.0 * x, normalized=False)
    assert np.allclose(re, np.exp(-x / 2), rtol=1e-15)
    assert np.all(hy == 0)


# -- symmetry and equivalence ----------------------------------------------------


@pytest.mark.parametrize("path", [surface_eval_idempotent, surface_eval_polynomial])
def test_parity_in_y(path):
    x = np.linspace(0, 60, 13)[:, None]
    y = np.linspace(0.5, 20, 9)[None, :]
    re_p, hy_p, _ = path(7, 3, None, x, y)
    re_m, hy_m, _ = path(7, 3, None, x, -y)
    assert np.allclose(re_p, re_m, rtol=1e-12, atol=0)
    assert np.allclose(hy_p, -hy_m, rtol=1e-12, atol=0)


def relative_gap(a, b):
    mod = np.hypot(a[0], a[1])
    mask = mod > 1e-12
    return float(np.max(np.hypot(a[0] - b[0], a[1] - b[1])[mask] / mod[mask]))


def test_paths_agree_at_random_nodes(rng):
    x = rng.uniform(0, 120, 300)
    y = rng.uniform(-40, 40, 300)
    a = surface_eval_idempotent(25, 12, None, x, y)
    b = surface_eval_polynomial(25, 12, None, x, y)
    assert relative_gap(a, b) < 1e-9


@pytest.mark.parametrize(
    "n,l,xi",
    [((5, 3), (2, 1), (0.7, 1.4)), ((9, 9), (4, 4), (1.3, 0.8)), ((12, 4), (0, 3), (1.0, 2.0)), (25, 0, None)],
)
def test_paths_agree_for_general_sectors(rng, n, l, xi):
    x = rng.uniform(0, 80, 200)
    y = rng.uniform(-30, 30, 200)
    a = surface_eval_idempotent(n, l, xi, x, y)
    b = surface_eval_polynomial(n, l, xi, x, y)
    assert relative_gap(a, b) < 1e-9


def test_unnormalized_surface_drops_constant():
    x, y = 3.0, 1.0
    c1, c2 = normalization_constants((4, 4), (1, 1))
    assert c1 == c2
    full = surface_eval_idempotent(4, 1, None, x, y)
    bare = surface_eval_idempotent(4, 1, None, x, y, normalized=False)
    assert full[0] == pytest.approx(c1 * bare[0], rel=1e-14)
    assert full[1] == pytest.approx(c1 * bare[1], rel=1e-14)


# -- grids and export ------------------------------------------------------------


def test_grid_shape_and_invariant():
    g = surface_grid(6, 2, x_range=(0, 30, 7), y_range=(-5, 5, 5))
    assert g.shape == (7, 5) and g.re.shape == (7, 5)
    assert np.array_equal(g.norm2, g.re ** 2 + g.hy ** 2)
    with pytest.raises(ValueError):
        surface_grid(6, 2, x_range=(0, 1, 2), y_range=(0, 1, 2), path="spline")


def test_export_two_by_two_csv():
    g = surface_grid(2, 0, x_range=(0, 1, 2), y_range=(-1, 1, 2))
    lines = export_surface(g, "csv").decode().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 5
    for line in lines[1:]:
        x, y, re, hy, norm2 = (float(v) for v in line.split(","))
        assert norm2 == re * re + hy * hy


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_export_round_trip(fmt):
    g = surface_grid(9, 4, x_range=(0, 50, 11), y_range=(-12, 12, 7), path="polynomial")
    data = export_surface(g, fmt)
    back = read_surface(data, fmt)
    for name in ("x", "y", "re", "hy", "norm2"):
        assert np.array_equal(getattr(back, name), getattr(g, name))
    assert export_surface(back, fmt) == data


def test_export_is_deterministic_and_row_major():
    g = surface_grid(3, 1, x_range=(0, 2, 3), y_range=(-1, 1, 2))
    assert export_surface(g) == export_surface(surface_grid(3, 1, x_range=(0, 2, 3), y_range=(-1, 1, 2)))
    doc = json.loads(export_surface(g, "json"))
    assert doc["shape"] == [3, 2]
    assert [row[:2] for row in doc["rows"]] == [[0, -1], [0, 1], [1, -1], [1, 1], [2, -1], [2, 1]]


def test_export_rejects_unknown_format():
    g = SurfaceGrid(np.zeros(1), np.zeros(1), np.zeros((1, 1)), np.zeros((1, 1)), np.zeros((1, 1)))
    with pytest.raises(ValueError):
        export_surface(g, "xml")
    with pytest.raises(ValueError):
        read_surface(b"a,b\n", "csv")
