from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from eop import formulas as fm
from eop.errors import InvalidQuantumNumbers, NotProportional, UnknownOperator
from eop.exactcore import Factor, Poly, quasi
from eop.model import (
    SINGLE, Labels, ModelParams, SeparatedEigenfunction, build_eigenfunction, build_operator, eigenvalue,
    hamiltonian_residual, ladder_match, make_state, radial_factor,
)


@pytest.fixture(scope="module")
def s142(params):
    return make_state(1, 4, 2, params)


# --- parameters and states ----------------------------------------------------------

@pytest.mark.parametrize("a,g,d", [(0, 2, 3), (1, 3, 2), (1, 2, 4), (-1, 2, 3), (1, 0, 1)])
def test_params_validation(a, g, d):
    with pytest.raises(InvalidQuantumNumbers):
        ModelParams(a, g, d)


def test_params_b(params):
    assert params.b == 5 and params.mu_shift == 2


def test_state_examples(params):
    s = make_state(1, 3, 1, params)
    assert (s.rho, s.mu, s.eps) == (7, 3, F(1, 5))
    assert make_state(1, 0, 1, params, coords=["radial"]).E == F(-1, 32)
    with pytest.raises(InvalidQuantumNumbers, match="mu=5 exceeds m=1"):
        make_state(1, 1, 3, params)
    with pytest.raises(InvalidQuantumNumbers):
        make_state(1, 3, 0, params)


def test_energy_identity_on_grid(states):
    for s in states:
        assert s.E == -s.params.alpha ** 2 / (8 * F(s.N + s.m + 1) ** 2)
        assert s.eps > 0 and s.E < 0


# --- eigenfunctions ----------------------------------------------------------------------

def test_grid_eigenfunctions_certified(states):
    for s in states:
        assert all(r.is_zero() for r in hamiltonian_residual(s, build_eigenfunction(s)))


def test_wrong_eps_is_caught(params):
    s = make_state(2, 3, 1, params)
    f = build_eigenfunction(s)
    bad = SeparatedEigenfunction(radial_factor(s.N, s.m, 2 * params.alpha), f.polar, f.azimuthal)
    rad, pol, az = hamiltonian_residual(s, bad)
    assert not rad.is_zero() and pol.is_zero() and az.is_zero()


def test_eigenvalues(s142):
    L, P = s142.labels, s142.params
    assert eigenvalue("H", L, P) == s142.E == F(-1, 288)
    assert eigenvalue("Htheta", L, P) == 81
    assert eigenvalue("Hphi", L, P) == 16


def test_azimuthal_factor_shape(params):
    f = build_eigenfunction(make_state(1, 3, 1, params)).azimuthal
    exps = {fac.root: fac.exponent for fac in f.factors}
    assert exps == {F(-1): F(7, 4), F(1): F(5, 4), F(5): F(-1)}


# --- operators ----------------------------------------------------------------------------

def test_LN_operator_form(params):
    C = build_operator("LN", Labels(1, 1, 1, 0, 1), params)
    (D,) = C.stages
    assert D.coefficient(1) == quasi([4])
    assert D.coefficient(0) == quasi([1]) - quasi([4], [Factor(0, -1)])


def test_Lmu_operator_form(params):
    (D,) = build_operator("Lmu", Labels(0, 1, 1, 1, 1), params).stages
    sq = [Factor(-1, F(1, 2), 1), Factor(1, F(1, 2), -1)]
    assert D.coefficient(1) == quasi([1], sq)
    assert D.coefficient(0) == quasi([0, -1], [Factor(-1, F(-1, 2), 1), Factor(1, F(-1, 2), -1)])


def test_conjugated_ladder_is_a_chain(s142):
    C = build_operator("LnConj", s142)
    assert len(C.stages) == 3 and C.left is not None and C.right is not None


def test_products_are_separated(s142):
    D = build_operator("D1minus", s142)
    assert set(D.parts) == {"radial", "polar"}
    assert set(build_operator("D2plus", s142).parts) == {"polar", "azimuthal"}


def test_unknown_operator(s142):
    with pytest.raises(UnknownOperator):
        build_operator("Lfoo", s142)


# --- ladder coefficients (frozen from exact computation) ------------------------------------

FROZEN_142 = {
    "LN": F(-1, 6), "RN": F(-10, 3), "Lmu": F(-8), "Fwd": F(-10), "Bwd": F(2),
    "LnBare": F(-120), "LnConj": F(-120), "RnBare": F(-280), "RnConj": F(-280),
    "Hr": F(-1, 288), "Htheta": F(81), "Hphi": F(16), "D1minus": F(1, 6), "D2plus": F(2240),
}


@pytest.mark.parametrize("op,value", sorted(FROZEN_142.items()))
def test_frozen_coefficients(s142, op, value):
    la = ladder_match(op, s142)
    assert la.matched and not la.annihilated
    assert la.coefficient == value == la.expected


@pytest.mark.parametrize("op", ["Lrho", "Rmu", "D1plus", "D2minus"])
def test_annihilation_at_the_edge(s142, op):
    # mu == m: lowering the degree or raising the order leaves no Legendre factor
    la = ladder_match(op, s142)
    assert la.annihilated and la.matched and la.coefficient == 0


def test_LN_example_radial_only(params):
    la = ladder_match("LN", make_state(1, 0, 1, params, coords=["radial"]))
    assert la.coefficient == F(-1, 2) == la.stated
    assert (la.output.N, la.output.mr) == (0, 1)


def test_Lrho_example(params):
    la = ladder_match("Lrho", Labels(0, 2, 2, 1, 1), params)
    assert la.coefficient == 3 == la.stated


def test_LnConj_example(params):
    la = ladder_match("LnConj", make_state(1, 4, 2, params))
    assert la.coefficient == la.stated == -120


def test_stated_sign_differences(s142, params):
    assert ladder_match("Lmu", s142).stated == 8
    la = ladder_match("Rmu", make_state(1, 5, 2, params))
    assert la.coefficient == 1 and la.stated == -1


def test_RnConj_stated_factor_differs(s142):
    la = ladder_match("RnConj", s142)
    assert la.stated == -240 and la.coefficient / la.stated == F(7, 6)


def test_stated_variants_are_not_proportional(s142):
    for op in ("Fwd[stated]", "Bwd[stated]", "LnConj[stated ground state]"):
        la = ladder_match(op, s142)
        assert not la.matched and la.coefficient is None


def test_D1_bookkeeping_preserves_energy(states):
    for s in states[:18]:
        for op, dN, dm in (("D1minus", -1, 1), ("D1plus", 1, -1)):
            la = ladder_match(op, s)
            if la.annihilated:
                continue
            T = la.output
            assert (T.N, T.mr, T.mp) == (s.N + dN, s.m + dm, s.m + dm)
            assert eigenvalue("H", T, s.params) == s.E


def test_D2_output_is_not_an_H_eigenfunction(params):
    s = make_state(1, 5, 2, params)
    la = ladder_match("D2minus", s)
    assert la.matched and not la.annihilated
    with pytest.raises(NotProportional):
        eigenvalue("H", la.output, params)


def test_verify_identity_reexported():
    import eop.model as model

    assert callable(model.verify_identity)


# --- properties ----------------------------------------------------------------------------------

@st.composite
def valid_states(draw):
    a = draw(st.sampled_from([F(1), F(1, 2), F(3)]))
    g, d = draw(st.sampled_from([(F(2), F(3)), (F(1), F(2)), (F(1, 2), F(5, 2))]))
    P = ModelParams(a, g, d)
    n = draw(st.integers(1, 3))
    m = n + P.mu_shift + draw(st.integers(0, 2))
    return make_state(draw(st.integers(0, 3)), m, n, P)


@settings(max_examples=15)
@given(valid_states())
def test_random_states_are_certified(s):
    assert all(r.is_zero() for r in hamiltonian_residual(s, build_eigenfunction(s)))


@settings(max_examples=15)
@given(valid_states(), st.sampled_from(sorted(SINGLE)))
def test_random_ladders_close(s, op):
    la = ladder_match(op, s)
    assert la.matched
    assert la.coefficient == (0 if la.annihilated else la.expected)


@given(st.integers(0, 6), st.integers(0, 6), st.sampled_from([F(1), F(2), F(5, 3)]))
def test_quantization_matches_level_formula(N, m, a):
    assert fm.energy(N, m, a) == -a ** 2 / (8 * F(N + m + 1) ** 2)
