from fractions import Fraction as F
from math import comb

import mpmath
import pytest
from hypothesis import given, strategies as st

from eop.errors import InvalidQuantumNumbers, OrderExceedsDegree
from eop.exactcore import Factor, Poly, quasi
from eop.orthopoly import (
    FamilyId, assoc_legendre, jacobi, laguerre, legendre, ode_residual, resolve_xjacobi_convention, xjacobi,
    xjacobi_b, xjacobi_operator_residual,
)

X = Poly.x()
PTS = (F(-7, 10), F(1, 3), F(9, 10))


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def close(a, b, tol=mpmath.mpf(10) ** -35):
    return abs(a - b) <= tol * max(1, abs(b))


# --- worked values ----------------------------------------------------------------

def test_laguerre_values():
    assert laguerre(0, F(7, 3)) == Poly([1])
    assert laguerre(1, 2) == Poly([3, -1])
    assert laguerre(2, 1)(0) == 3


def test_jacobi_values():
    assert jacobi(0, 2, 1) == Poly([1])
    assert jacobi(1, 2, 1)(1) == 3
    assert ode_residual(FamilyId("jacobi", (3, 1)), 2).is_zero()


def test_assoc_legendre_values():
    sq = [Factor(-1, F(1, 2), 1), Factor(1, F(1, 2), -1)]
    assert assoc_legendre(0, 0) == quasi([1])
    assert assoc_legendre(1, 1) == quasi([1], sq)
    assert assoc_legendre(2, 1) == quasi([0, 3], sq)
    with pytest.raises(OrderExceedsDegree):
        assoc_legendre(1, 2)


def test_xjacobi_first_member():
    assert xjacobi_b(3, 1) == 2
    assert xjacobi(1, 3, 1) == Poly([F(3, 2), F(-1, 2)])


@pytest.mark.parametrize("fam,idx", [
    (FamilyId("laguerre", (5,)), 3),
    (FamilyId("assoclegendre", (3,)), 2),
    (FamilyId("xjacobi", (3, 2)), 2),
    (FamilyId("xjacobi", (3, 1)), 2),
])
def test_named_residuals_vanish(fam, idx):
    assert ode_residual(fam, idx).is_zero()


# --- independent numerical oracles ------------------------------------------------

@pytest.mark.parametrize("N", range(0, 6))
@pytest.mark.parametrize("beta", [F(0), F(3), F(5, 2)])
def test_laguerre_against_mpmath(N, beta):
    with mpmath.workdps(50):
        for x in PTS:
            assert close(laguerre(N, beta)(mp(x)), mpmath.laguerre(N, mp(beta), mp(x)))


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("a,b", [(2, 1), (1, 4), (F(1, 2), F(3, 2))])
def test_jacobi_against_mpmath(n, a, b):
    with mpmath.workdps(50):
        for x in PTS:
            assert close(jacobi(n, a, b)(mp(x)), mpmath.jacobi(n, mp(F(a)), mp(F(b)), mp(x)))


@pytest.mark.parametrize("m,mu", [(m, mu) for m in range(5) for mu in range(m + 1)])
def test_assoc_legendre_against_mpmath(m, mu):
    # mpmath includes the Condon-Shortley phase (-1)^mu
    with mpmath.workdps(50):
        for x in PTS:
            assert close(assoc_legendre(m, mu).eval_float(mp(x)), (-1) ** mu * mpmath.legenp(m, mu, mp(x)))


# --- structural properties ----------------------------------------------------------

@pytest.mark.parametrize("k", range(0, 9))
def test_all_families_solve_their_equations(k):
    assert ode_residual(FamilyId("laguerre", (F(3, 2),)), k).is_zero()
    assert ode_residual(FamilyId("jacobi", (2, 3)), k).is_zero()
    for mu in range(k + 1):
        assert ode_residual(FamilyId("assoclegendre", (k,)), mu).is_zero()
    if k >= 1:
        for d, g in ((3, 1), (3, 2), (5, 2)):
            assert ode_residual(FamilyId("xjacobi", (d, g)), k).is_zero()


@given(st.integers(0, 10), st.integers(0, 6))
def test_jacobi_endpoint(n, a):
    assert jacobi(n, a, F(1, 3))(1) == comb(n + a, n)


@given(st.integers(1, 10), st.fractions(min_value=0, max_value=6, max_denominator=4))
def test_laguerre_three_term_recurrence(N, beta):
    lhs = laguerre(N + 1, beta) * (N + 1)
    rhs = Poly([2 * N + beta + 1, -1]) * laguerre(N, beta) - laguerre(N - 1, beta) * (N + beta)
    assert lhs == rhs


@given(st.integers(1, 10), st.sampled_from([(3, 1), (3, 2), (5, 2), (F(7, 2), F(1, 2))]))
def test_xjacobi_degree(n, dg):
    assert xjacobi(n, *dg).degree == n


def test_xjacobi_has_no_degree_zero_member():
    with pytest.raises(ValueError):
        xjacobi(0, 3, 1)


def test_convention_picks_swapped_parameters():
    conv = resolve_xjacobi_convention(3, 1)
    assert (conv.eta, conv.xi) == (1, 3)
    assert conv.B == conv.b == 2 and conv.sign == 1
    assert conv.rejected == ((3, 1),)
    # the literal assignment leaves a nonzero residual
    assert not xjacobi_operator_residual(2, 3, 1, 3, 1).is_zero()


@pytest.mark.parametrize("bad", [("laguerre", (-1,)), ("jacobi", (-2, 0)), ("xjacobi", (1, 3)), ("hermite", (1,))])
def test_family_validation(bad):
    with pytest.raises(InvalidQuantumNumbers):
        FamilyId(*bad)


def test_legendre_is_assoc_order_zero():
    for m in range(6):
        assert quasi(legendre(m)) == assoc_legendre(m, 0)
