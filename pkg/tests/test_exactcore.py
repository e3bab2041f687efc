from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from eop.errors import DomainViolation, IncompatibleSupport, NonInvertibleGroundState, NotProportional
from eop.exactcore import (
    ONE, ZERO, Factor, Poly, QuasiPoly, qp_add, qp_canonicalize, qp_derivative, qp_eval_float, qp_mul,
    qp_ratio, quasi, rational,
)


def half(root, orient=1, e=F(1, 2)):
    return Factor(root, e, orient)


# --- rationals ---------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("3", F(3)), ("-7/2", F(-7, 2)), ("4/6", F(2, 3)), (" 1/3 ", F(1, 3))])
def test_rational_literals(text, value):
    assert rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", 0.5, True])
def test_rational_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        rational(bad)


# --- Poly --------------------------------------------------------------------

def test_poly_trims_and_degree():
    assert Poly([1, 2, 0, 0]).degree == 1
    assert Poly([0, 0]).is_zero() and Poly([]).degree == -1


def test_poly_arithmetic_by_hand():
    p, r = Poly([1, 1]), Poly([-1, 1])
    assert p * r == Poly([-1, 0, 1])
    assert (p + r) == Poly([0, 2])
    assert (p ** 3)(2) == 27
    assert Poly([4, -4, 1]).divmod_linear(2) == (Poly([-2, 1]), 0)


def test_poly_format():
    assert Poly([F(3, 2), F(-1, 2)]).format("y") == "-1/2*y + 3/2"
    assert Poly([0, 0, 1]).format() == "z^2"


ints = st.integers(-6, 6)
polys = st.lists(ints, min_size=0, max_size=5).map(Poly)


@given(polys, polys)
def test_poly_degree_laws(p, r):
    assert (p + r).degree <= max(p.degree, r.degree)
    if not p.is_zero() and not r.is_zero():
        assert (p * r).degree == p.degree + r.degree


@given(polys, polys, st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_poly_evaluation_is_a_ring_map(p, r, z):
    assert (p * r)(z) == p(z) * r(z)
    assert (p + r)(z) == p(z) + r(z)


# --- quasi-polynomials: worked values -------------------------------------------

def test_derivative_power_rule():
    f = quasi([1], [half(1)])
    assert qp_derivative(f) == quasi([F(1, 2)], [Factor(1, F(-1, 2))])


def test_derivative_exponential():
    f = quasi([1], rate=F(-3, 2))
    assert qp_derivative(f) == quasi([F(-3, 2)], rate=F(-3, 2))


def test_derivative_product_rule_value():
    # z^2 (z-1)^{1/2}  ->  (z-1)^{-1/2} (5z^2/2 - 2z)
    f = quasi([0, 0, 1], [half(1)])
    assert qp_derivative(f) == quasi([0, -2, F(5, 2)], [Factor(1, F(-1, 2))])
    for z in (2, 3):
        with mpmath.workdps(40):
            fd = mpmath.diff(lambda t: qp_eval_float(f, t), z)
            assert abs(fd - qp_eval_float(qp_derivative(f), z)) < mpmath.mpf(10) ** -30


def test_mul_adds_exponents():
    f = quasi([1], [half(1)])
    assert qp_mul(f, f) == quasi([-1, 1])
    assert qp_mul(f, ZERO).is_zero()


def test_sin_squared_is_polynomial():
    s = quasi([1], [half(-1, 1), half(1, -1)])
    assert qp_mul(s, s) == quasi([1, 0, -1])


def test_add_aligns_integer_offsets():
    a = quasi([1], [Factor(1, F(3, 2))])
    b = quasi([1], [half(1)])
    assert qp_add(a, b) == quasi([0, 1], [half(1)])
    f = quasi([2, 1], [half(1)])
    assert qp_add(f, f.scale(-1)).is_zero()


def test_add_disjoint_roots_is_incompatible():
    with pytest.raises(IncompatibleSupport):
        qp_add(quasi([1], [half(1)]), quasi([1], [half(2)]))


def test_canonical_absorbs_integer_parts():
    raw = QuasiPoly(Poly([-1, 1]), (half(1),), F(0))
    assert qp_canonicalize(raw) == quasi([1], [Factor(1, F(3, 2))])
    assert qp_canonicalize(ZERO).is_zero()
    # (z-2)^{-1} (z-2)^2 collapses to a plain polynomial
    assert quasi([4, -4, 1], [Factor(2, -1)]) == quasi([-2, 1])


def test_canonical_poly_does_not_vanish_at_fractional_roots():
    f = quasi(Poly([-1, 1]) * Poly([2, 1]), [half(1), Factor(5, F(1, 3))])
    for fac in f.factors:
        assert f.poly(fac.root) != 0


def test_ratio_values():
    f = quasi([1, 2], [half(1)], rate=1)
    assert qp_ratio(f.scale(3), f) == 3
    assert qp_ratio(ZERO, f) == 0
    assert qp_ratio(quasi([1], [Factor(1, F(3, 2))]), quasi([-1, 1], [half(1)])) == 1
    with pytest.raises(NotProportional):
        qp_ratio(quasi([0, 1]), quasi([1]))


def test_eval_float_values():
    assert qp_eval_float(quasi([0, 0, 1]), 2) == 4
    assert qp_eval_float(quasi([1], [half(1, -1)]), F(3, 4)) == mpmath.mpf("0.5")
    assert qp_eval_float(quasi([0, 1], rate=F(-1, 2)), 0) == 0
    with pytest.raises(DomainViolation):
        qp_eval_float(quasi([1], [half(1)]), 0)


def test_inverse_of_prefactor_and_rejection():
    g = quasi([1], [half(-1, 1), Factor(3, -1)], rate=2)
    assert (g * g.inverse()) == ONE
    # integer exponents absorbed into the polynomial are still invertible
    h = quasi(Poly([1, 1]) * Poly([-3, 1]), [Factor(1, F(1, 4), -1)])
    assert h * h.inverse() == ONE
    with pytest.raises(NonInvertibleGroundState):
        quasi([1, 0, 1]).inverse()


# --- quasi-polynomials: properties ---------------------------------------------

# fixed orientation per root keeps operands compatible on (-1, 1)
ROOTS = ((F(-1), 1), (F(1), -1), (F(3), -1))
exps = st.integers(-8, 8).map(lambda k: F(k, 4))


@st.composite
def quasis(draw, fracs=None, rate=None):
    poly = Poly(draw(st.lists(ints, min_size=1, max_size=4)))
    facs = []
    for i, (a, o) in enumerate(ROOTS):
        if fracs is not None:
            e = fracs[i] + draw(st.integers(-1, 2))
        else:
            e = draw(exps)
        facs.append(Factor(a, e, o))
    r = rate if rate is not None else draw(st.sampled_from([F(0), F(1, 2), F(-1)]))
    return quasi(poly, facs, r)


FRACS = (F(1, 2), F(1, 4), F(0))
same_family = quasis(fracs=FRACS, rate=F(1, 2))
domain_z = st.integers(-90, 90).map(lambda k: F(k, 100))


@given(quasis(), quasis())
def test_mul_commutes(f, g):
    assert qp_mul(f, g) == qp_mul(g, f)


@given(quasis(), quasis(), quasis())
def test_mul_associates(f, g, h):
    assert qp_mul(qp_mul(f, g), h) == qp_mul(f, qp_mul(g, h))


@given(quasis(), same_family, same_family)
def test_distributive(f, g, h):
    assert qp_mul(f, qp_add(g, h)) == qp_add(qp_mul(f, g), qp_mul(f, h))


@given(same_family, same_family)
def test_add_commutes(f, g):
    assert qp_add(f, g) == qp_add(g, f)


@given(quasis(), st.fractions(min_value=1, max_value=9, max_denominator=9), st.booleans())
def test_ratio_of_scaled(f, c, neg):
    c = -c if neg else c
    if f.is_zero():
        return
    assert qp_ratio(f.scale(c), f) == c


@given(quasis())
def test_canonical_idempotent(f):
    assert qp_canonicalize(qp_canonicalize(f)) == qp_canonicalize(f)
    roots = [fac.root for fac in f.factors]
    assert roots == sorted(roots)


@given(quasis(), domain_z)
def test_derivative_matches_central_difference(f, z):
    with mpmath.workdps(60):
        h = mpmath.mpf(10) ** -25
        zf = mpmath.mpf(z.numerator) / z.denominator
        fd = (qp_eval_float(f, zf + h) - qp_eval_float(f, zf - h)) / (2 * h)
        exact = qp_eval_float(qp_derivative(f), zf)
        scale = max(abs(exact), abs(qp_eval_float(f, zf)), mpmath.mpf(1) / 10**10)
        assert abs(fd - exact) / scale < mpmath.mpf(10) ** -20


@given(quasis(), quasis(), domain_z)
def test_product_evaluates_pointwise(f, g, z):
    with mpmath.workdps(50):
        lhs = qp_eval_float(qp_mul(f, g), z)
        rhs = qp_eval_float(f, z) * qp_eval_float(g, z)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -40 * max(1, abs(rhs))
