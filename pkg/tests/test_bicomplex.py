import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicoulomb import (
    E1,
    E2,
    I1,
    J,
    ONE,
    ZERO,
    Bicomplex,
    DomainError,
    Hyperbolic,
    NullConeError,
    dagger,
    inverse,
    is_null_cone,
    real_norm,
    sqrt_j,
)

EPS = 2.0 ** -52

mag = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, mag, mag)
bicomplexes = st.builds(Bicomplex, complexes, complexes)

# ulp bounds are relative, so they only hold while no intermediate result
# underflows into the subnormal range
normal_mag = st.one_of(
    st.just(0.0),
    st.builds(lambda s, v: s * v, st.sampled_from([-1.0, 1.0]), st.floats(min_value=1e-100, max_value=1e3)),
)
normal_bicomplexes = st.builds(
    Bicomplex, st.builds(complex, normal_mag, normal_mag), st.builds(complex, normal_mag, normal_mag)
)
hyperbolics = st.builds(Hyperbolic, mag, mag)


def ulp_error(a, b, scale):
    out = 0.0
    for x, y, s in ((a.c1, b.c1, scale[0]), (a.c2, b.c2, scale[1])):
        d = abs(x - y)
        if d:
            out = max(out, d / (EPS * s))
    return out


def moduli(*vals):
    return [abs(v.c1) for v in vals], [abs(v.c2) for v in vals]


# -- ring operations -------------------------------------------------------------


def test_idempotents_annihilate():
    assert E1 * E2 == ZERO
    assert E2 * E1 == ZERO
    assert E1 * E1 == E1 and E2 * E2 == E2
    assert E1 + E2 == ONE


def test_j_squares_to_one():
    assert J * J == ONE
    assert J == E1 - E2


def test_componentwise_product():
    a = Bicomplex(1, 2)
    b = Bicomplex(3, 5)
    assert a * b == Bicomplex(3, 10)


def test_scalar_embedding_and_coercion():
    assert Bicomplex.from_complex(2 + 1j) == Bicomplex(2 + 1j, 2 + 1j)
    assert 2 * E1 == Bicomplex(2, 0)
    assert E1 + 1 == Bicomplex(2, 1)
    assert 1 - E1 == E2
    assert I1 * I1 == -ONE


def test_non_finite_components_rejected():
    with pytest.raises(ValueError):
        Bicomplex(float("nan"), 0)
    with pytest.raises(ValueError):
        Hyperbolic(float("inf"), 0)


def test_division_and_powers():
    a = Bicomplex(2, 4j)
    assert (a / a).isclose(ONE, rel_tol=1e-15)
    assert a ** 3 == a * a * a
    assert (a ** -2).isclose(ONE / (a * a), rel_tol=1e-15)
    with pytest.raises(NullConeError):
        ONE / E1


@given(normal_bicomplexes, normal_bicomplexes, normal_bicomplexes)
def test_ring_axioms_within_four_ulp(a, b, c):
    m1, m2 = moduli(a, b, c)
    prod = (m1[0] * m1[1] * m1[2], m2[0] * m2[1] * m2[2])
    total = (sum(m1), sum(m2))
    dist = (m1[0] * (m1[1] + m1[2]), m2[0] * (m2[1] + m2[2]))
    assert ulp_error((a * b) * c, a * (b * c), prod) <= 4
    assert ulp_error((a + b) + c, a + (b + c), total) <= 4
    assert ulp_error(a * (b + c), a * b + a * c, dist) <= 4
    assert a * b == b * a
    assert a + b == b + a
    assert a * ONE == a
    assert a + ZERO == a
    assert a + (-a) == ZERO


# -- dagger ----------------------------------------------------------------------


def test_dagger_conjugates_components():
    assert dagger(Bicomplex(1j, 2)) == Bicomplex(-1j, 2)


def test_dagger_times_self_is_squared_modulus():
    a = Bicomplex(3 + 4j, 2)
    assert dagger(a) * a == Bicomplex(25, 4)


@given(bicomplexes, bicomplexes)
def test_dagger_is_ring_involution(a, b):
    assert dagger(dagger(a)) == a
    assert dagger(a * b) == dagger(a) * dagger(b)
    assert dagger(a + b) == dagger(a) + dagger(b)
    p = dagger(a) * a
    assert p.c1.real >= 0 and p.c2.real >= 0
    assert p.c1.imag == 0 and p.c2.imag == 0


# -- real norm -------------------------------------------------------------------


def test_real_norm_examples():
    assert real_norm(E1) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert real_norm(Bicomplex(3, 4)) == pytest.approx(math.sqrt(12.5), rel=1e-15)
    assert real_norm(ONE) == 1.0
    assert real_norm(ZERO) == 0.0
    assert abs(Bicomplex(3, 4)) == real_norm(Bicomplex(3, 4))


@given(hyperbolics)
def test_real_norm_of_hyperbolic(h):
    assert real_norm(h.to_bicomplex()) == pytest.approx(math.hypot(h.x, h.y), rel=1e-14, abs=1e-300)


@given(bicomplexes, bicomplexes, complexes)
def test_norm_properties(a, b, z):
    na, nb = real_norm(a), real_norm(b)
    slack = 8 * EPS
    assert na >= 0
    assert (na == 0) == (a == ZERO)
    assert real_norm(z * a) == pytest.approx(abs(z) * na, rel=slack, abs=1e-300)
    assert real_norm(a + b) <= (na + nb) * (1 + slack)
    assert real_norm(a * b) <= math.sqrt(2) * na * nb * (1 + slack)


def test_product_norm_bound_is_sharp():
    # |e1 * e1| = 1/sqrt(2) = sqrt(2) |e1|^2: the algebra is not absolute-valued
    assert real_norm(E1 * E1) == pytest.approx(math.sqrt(2) * real_norm(E1) ** 2, rel=1e-15)


# -- null cone and inverse -------------------------------------------------------


def test_null_cone_examples():
    assert is_null_cone(Bicomplex(5, 0), 0)
    assert not is_null_cone(J, 0)
    assert is_null_cone(ZERO, 0)
    assert is_null_cone(Bicomplex(1, 1e-13))
    assert not is_null_cone(Bicomplex(1, 1e-13), 0)
    with pytest.raises(ValueError):
        is_null_cone(ONE, -1)


def test_inverse_examples():
    assert inverse(Bicomplex(2, 4)) == Bicomplex(0.5, 0.25)
    assert inverse(ONE) == ONE
    with pytest.raises(NullConeError):
        inverse(Bicomplex(5, 0))


@given(bicomplexes)
def test_inverse_is_reciprocal(a):
    if a.is_null_cone(1e-3):
        return
    assert (a * a.inverse()).isclose(ONE, rel_tol=1e-14)


# -- square root of j ------------------------------------------------------------


def test_sqrt_j():
    s = sqrt_j()
    assert s * s == J
    assert Bicomplex(2, 3) * s == Bicomplex(2, 3j)
    assert real_norm(s) == pytest.approx(1.0, rel=1e-15)


# -- hyperbolic numbers ----------------------------------------------------------


def test_hyperbolic_embedding():
    h = Hyperbolic(3.0, 1.0)
    assert h.to_bicomplex() == Bicomplex(4, 2)
    assert Bicomplex.from_hyperbolic(3, 1) == Bicomplex(4, 2)
    assert Bicomplex(4, 2).x == 3 and Bicomplex(4, 2).y == 1


@given(hyperbolics)
def test_hyperbolic_round_trip(h):
    b = h.to_bicomplex()
    back = b.to_hyperbolic()
    tol = 4 * EPS * (abs(h.x) + abs(h.y)) + 1e-300
    assert back.x == pytest.approx(h.x, abs=tol)
    assert back.y == pytest.approx(h.y, abs=tol)
    assert Bicomplex.from_hyperbolic(back.x, back.y).isclose(b, rel_tol=1e-15, abs_tol=1e-12)


def test_to_hyperbolic_rejects_complex_components():
    with pytest.raises(DomainError):
        Bicomplex(1j, 1).to_hyperbolic()


@given(hyperbolics, hyperbolics)
def test_hyperbolic_product_matches_bicomplex(a, b):
    assert (a * b).to_bicomplex().isclose(a.to_bicomplex() * b.to_bicomplex(), rel_tol=1e-12, abs_tol=1e-9)


def test_hyperbolic_positive_cone_and_powers():
    assert Hyperbolic(2, 1).is_positive()
    assert not Hyperbolic(1, 1).is_positive()
    assert Hyperbolic(1, 0.5) ** -1 == Hyperbolic.from_idempotent(1 / 1.5, 1 / 0.5)
    with pytest.raises(NullConeError):
        Hyperbolic(1, 1) ** -1


def test_textual_rendering():
    assert str(Bicomplex(1 + 2j, 3 - 4j)) == "1+2i1 | 3-4i1"
    assert str(Bicomplex(0.1, 0)) == "0.10000000000000001+0i1 | 0+0i1"
    assert str(Hyperbolic(-0.5, 0.25)) == "-0.5+0.25j"
