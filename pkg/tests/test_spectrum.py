from fractions import Fraction as F
from math import prod

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from eop.errors import InvalidQuantumNumbers
from eop.spectrum import (
    energy_level, level_energy, phi1_eval, phi1_factors, phi2_diagonal, phi2_eval, phi2_factors, positivity_scan,
    search_u1, solve_constraints, spectrum_table,
)

rats = st.fractions(min_value=F(1, 10), max_value=6, max_denominator=12)


def test_phi1_at_origin_for_p1():
    v = phi1_eval(0, 0, F(-1, 8), F(3, 2), 2, 1)
    assert v.value == 0 and v.vanishing_factors == [1]


@given(st.integers(0, 6), rats, rats)
def test_origin_energy_kills_first_bracket(p, x2, a):
    u1 = F(p + 2, 2)
    E = -a ** 2 / (2 * (2 * u1 - 1) ** 2)
    assert phi1_eval(0, x2, E, u1, u1 + F(1, 2), a).factors[0] == 0


@given(rats, rats)
def test_phi1_diagonal_third_bracket(x, u1):
    v = phi1_eval(x, x, F(-1), u1, u1 + F(1, 2), 1)
    assert v.factors[2] == -2


@given(st.integers(0, 8), rats)
def test_phi2_vanishes_on_diagonal(k, u1):
    v = phi2_eval(k, k, u1, u1 + F(1, 2), 2, 3)
    assert v.value == 0 and 2 in v.vanishing_factors


def test_phi2_linear_bracket_example():
    # [-1 + 2(x2+u2) - gamma - delta] vanishes at x2 + u2 = 3 for gamma=2, delta=3
    v = phi2_eval(F(1, 3), 1, F(1, 7), 2, 2, 3)
    assert 3 in v.vanishing_factors


@settings(max_examples=100)
@given(rats, rats, rats, rats, rats, rats)
def test_phi1_matches_complex_bracket_pair(x1, x2, u1, u2, negE, a):
    # multiply [sqrt(-a^2) - sqrt(2E)(2X1-1)][sqrt(-a^2) + sqrt(2E)(2X1-1)] in complex arithmetic
    E = -negE
    v = phi1_eval(x1, x2, E, u1, u2, a)
    q = lambda v: mpmath.mpf(v.numerator) / v.denominator  # noqa: E731
    with mpmath.workdps(50):
        X1, X2 = q(x1 + u1), q(x2 + u2)
        A = mpmath.sqrt(mpmath.mpc(-q(a) ** 2))
        s = mpmath.sqrt(mpmath.mpc(2 * q(E))) * (2 * X1 - 1)
        ref = (A - s) * (A + s) * (2 * X1 + 2 * X2 - 1) * (2 * X1 - 2 * X2 - 1) / 4
        exact = q(v.value)
        assert abs(ref.imag) < mpmath.mpf(10) ** -40
        assert abs(ref.real - exact) <= mpmath.mpf(10) ** -40 * max(1, abs(exact))


@given(rats, rats, rats, rats)
def test_phi2_reverse_order_product(x1, x2, u1, u2):
    fac = phi2_factors(x1 + u1, x2 + u2, 2, 3)
    assert phi2_eval(x1, x2, u1, u2, 2, 3).value == -F(1, 1024) * prod(reversed(fac))


@given(rats, rats, rats, rats)
def test_vanishing_iff_zero(x1, x2, u1, u2):
    v = phi2_eval(x1, x2, u1, u2, 2, 3)
    assert (v.value == 0) == bool(v.vanishing_factors)


def test_phi1_rejects_unbound():
    with pytest.raises(InvalidQuantumNumbers):
        phi1_eval(0, 0, F(1, 8), 1, 1, 1)


def test_solve_constraints_examples():
    s = solve_constraints(1, 1)
    assert (s.u1, s.u2, s.E) == (F(3, 2), 2, F(-1, 8))
    assert solve_constraints(3, 2).E == F(-1, 8)


@pytest.mark.parametrize("p", range(0, 7))
def test_constraint_ledger(p):
    s = solve_constraints(p, 1)
    assert s.u2 == s.u1 + F(1, 2) and s.E == level_energy(p, 1)
    assert s.entry("Phi1(0,0)").holds and s.entry("Phi2(0,0)").holds and s.entry("Phi2(p+1,p+1)").holds
    corner = s.entry("Phi1(p+1,p+1)")
    assert not corner.holds and corner.value.vanishing_factors == []


def test_u1_search_finds_nothing():
    for p in range(0, 5):
        rows = search_u1(p, 1)
        assert rows and not any(r["all"] for r in rows)


def test_energy_level_examples():
    assert energy_level(1, 0, 1) == F(-1, 32)
    assert energy_level(2, 1, 2) == F(-1, 32)
    assert energy_level(3, 2, 2) == 4 * energy_level(3, 2, 1)


@given(st.integers(1, 6), st.integers(0, 6), st.sampled_from([F(1), F(2), F(3), F(2, 5)]))
def test_level_identity(N, m, a):
    assert energy_level(N, m, a) == level_energy(2 * (N + m) + 1, a)


def test_spectrum_table_rows():
    rows = {r.p: r for r in spectrum_table(5, 1)}
    assert 1 not in rows
    assert rows[3].E == F(-1, 32) and rows[3].states == ((1, 0),)
    assert rows[5].E == F(-1, 72) and rows[5].states == ((1, 1), (2, 0))
    assert spectrum_table(3, 1, include_n0=True)[0].states == ((0, 0),)


def test_positivity_scan_records_signs():
    rows = positivity_scan(3, 1)
    assert [(r["p"], r["x"]) for r in rows] == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
    assert all(r["phi2"] == 0 for r in rows)
    first = rows[0]
    assert first["phi1"] == -15 and not first["phi1_positive"]


def test_phi2_diagonal_list():
    vals = phi2_diagonal(2)
    assert len(vals) == 4 and all(v.value == 0 for v in vals)
