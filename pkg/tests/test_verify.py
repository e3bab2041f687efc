import json
from fractions import Fraction as F

import pytest

from eop.model import Grid, Labels, act, combo_add, make_state
from eop.report import Case, VerificationReport, compare
from eop.verify import IDENTITIES, SUITES, product_scalar, run_suite, verify_identity

SMALL = Grid(alphas=(1,), N=(1, 2), dm=(0, 1), n=(1, 2))


@pytest.fixture(scope="module")
def reports(grid):
    return {r.identity_id: r for r in run_suite("all", grid)}


def test_compare_verdicts():
    assert compare({}, 2, 2).verdict == "Match"
    c = compare({}, 2, 6)
    assert (c.verdict, c.ratio) == ("Mismatch", 3)
    assert compare({}, 0, 5).ratio is None
    assert compare({}, 1, None).verdict == "NotProportional"


def test_ratio_pattern():
    r = VerificationReport("x", False, "", {}, [compare({}, 1, -1), compare({}, 3, -3)])
    assert r.ratio_pattern() == "CONSTANT -1/1"
    r.cases.append(compare({}, 1, 2))
    assert r.ratio_pattern() == "VARYING"
    assert VerificationReport("y", True, "", {}, [compare({}, 1, 1)]).ratio_pattern() == "NONE"


def test_suites_cover_registry():
    assert set(SUITES["all"]) <= set(IDENTITIES)
    assert {"all", "odes", "ladders", "integrals", "algebra", "structure"} <= set(SUITES)
    with pytest.raises(KeyError):
        run_suite("nope", SMALL)


def test_every_asserted_identity_passes(reports):
    failing = [i for i, r in reports.items() if r.asserted and not r.passed]
    assert failing == []


def test_every_grid_state_appears_once(reports, states):
    keys = [json.dumps(c.state, sort_keys=True) for c in reports["ode:radial"].cases]
    assert len(keys) == len(set(keys)) == len(states) == 54


def test_reports_are_deterministic():
    a = [r.to_dict() for r in run_suite("odes", SMALL)]
    b = [r.to_dict() for r in run_suite("odes", SMALL)]
    assert json.dumps(a) == json.dumps(b)


def test_mismatches_carry_ratios(reports):
    for r in reports.values():
        for c in r.cases:
            if c.verdict == "Mismatch" and c.expected not in (0, None) and not isinstance(c.expected, str):
                assert c.ratio == F(c.measured) / F(c.expected)


# --- recorded findings, frozen ------------------------------------------------------

def test_htheta_d1_is_off_by_sixteen(reports):
    r = reports["Htheta-D1"]
    assert not r.asserted and r.ratio_pattern() == "CONSTANT 16/1"
    first = next(c for c in r.cases if c.verdict == "Mismatch")
    rho = 2 * first.state["m"] + 1
    # [H_theta, D1-] eigenvalue shift is (rho+2)^2 - rho^2
    assert first.measured == 4 * (rho + 1) and first.expected == F(rho + 1, 4)


def test_j_relations_off_by_sixteen(reports):
    assert reports["J-relations"].ratio_pattern() == "CONSTANT 16/1"


def test_k_relations_agree(reports):
    assert reports["K-relations"].passed


def test_jk_cross_is_nonzero(reports):
    assert all(c.verdict == "Nonzero" for c in reports["JK-cross"].cases)


def test_hphi_d2_coefficients_swapped(grid):
    r = verify_identity("Hphi-D2", grid)
    for c in r.cases:
        if c.verdict == "Annihilated":
            continue
        mu = F(c.expected - 1, 2) if "D2minus" in c.state["check"] else F(1 - c.expected, 2)
        if "D2minus" in c.state["check"]:
            assert c.measured == -(2 * mu - 1)
        else:
            assert c.measured == 2 * mu + 1


def test_stated_coefficient_patterns(reports):
    assert reports["stated-coefficient:Lmu"].ratio_pattern() == "CONSTANT -1/1"
    assert reports["stated-coefficient:Rmu"].ratio_pattern() == "CONSTANT -1/1"
    for op in ("LN", "RN", "Lrho", "Rrho", "Bwd", "LnConj", "LnBare"):
        assert reports[f"stated-coefficient:{op}"].passed, op
    assert reports["stated-coefficient:RnConj"].ratio_pattern() == "VARYING"


def test_D2_threading_residuals(reports):
    r = reports["D2-threading"]
    bad = [c for c in r.cases if c.verdict == "Nonzero"]
    assert bad and all(c.measured == "0,nonzero,0" for c in bad)


def test_d1_products_and_derived_split(reports):
    assert reports["product-D1"].passed
    assert reports["P1P2-split[derived]"].passed
    assert not reports["P1P2-split"].passed


def test_d1_commutes_with_h(reports):
    r = reports["commutators-with-H:D1"]
    assert r.asserted and r.passed
    assert {c.verdict for c in r.cases} <= {"Match", "Annihilated"}


def test_d2_does_not_commute_with_h(reports):
    assert any(c.verdict == "NotProportional" for c in reports["commutators-with-H:D2"].cases)


# --- eigenbasis algebra ---------------------------------------------------------------

def test_product_scalar(params):
    s = make_state(2, 3, 1, params)
    mp = product_scalar(("D1minus", "D1plus"), s.labels, params)
    pm = product_scalar(("D1plus", "D1minus"), s.labels, params)
    assert mp is not None and pm is not None and mp != pm
    assert product_scalar(("D1minus",), s.labels, params) is None


def test_combo_linearity(params):
    L1, L2 = make_state(1, 4, 2, params).labels, make_state(2, 4, 2, params).labels
    c = {L1: F(2), L2: F(-3)}
    lhs = act("D1minus", c, params)
    rhs = combo_add((2, act("D1minus", {L1: F(1)}, params)), (-3, act("D1minus", {L2: F(1)}, params)))
    assert lhs == rhs


def test_structure_crosscheck_per_state(params):
    from eop.spectrum import structure_vs_ladder_crosscheck

    rep = structure_vs_ladder_crosscheck(make_state(1, 4, 2, params))
    assert len(rep.cases) == 7
    comm = [c for c in rep.cases if "2 P2" in c.state["check"]]
    assert len(comm) == 1
