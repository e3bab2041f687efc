"""Identity checks over a grid of states, grouped into suites.

Each identity is either *asserted* (an engine-level truth whose failure is a
bug: ODE residuals, ladder closure, ``[D1, H] = 0``, energy identities) or
*recorded* (a comparison against a stated closed form; disagreements are data
and carry an exact ratio where one exists).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import formulas as fm
from .errors import NotProportional
from .exactcore import Factor, Poly, quasi
from .model import (
    BasisState,
    Grid,
    Labels,
    ModelParams,
    act,
    act_eigen,
    combo_add,
    combo_format,
    combo_scale_by,
    eigen_triple,
    eigenvalue,
    hamiltonian_residual,
    ladder_match,
    make_state,
    op_Hphi,
    SINGLE,
    STATED_VARIANTS,
)
from .diffop import op_apply
from .orthopoly import FamilyId, ode_residual, resolve_xjacobi_convention, xjacobi
from .report import Case, VerificationReport, compare, fmt_q
from . import spectrum as sp

__all__ = ["IDENTITIES", "SUITES", "verify_identity", "run_suite", "product_scalar", "DEFAULT_PMAX"]

DEFAULT_PMAX = 6


@dataclass(frozen=True)
class Identity:
    asserted: bool
    description: str
    fn: Callable[["Context"], list[Case]]


@dataclass(frozen=True)
class Context:
    grid: Grid
    pmax: int = DEFAULT_PMAX

    def states(self) -> list[BasisState]:
        return self.grid.states()


IDENTITIES: dict[str, Identity] = {}


def identity(name: str, asserted: bool, description: str):
    def deco(fn):
        IDENTITIES[name] = Identity(asserted, description, fn)
        return fn
    return deco


def _st(s: BasisState, **extra) -> dict:
    d = s.to_dict()
    d.update(extra)
    return d


def _residual_case(state: dict, res) -> Case:
    if res.is_zero():
        return Case(state, Fraction(0), Fraction(0), "Match")
    return Case(state, Fraction(0), res.format(), "Nonzero")


# ---------------------------------------------------------------------------
# eigenbasis helpers

def product_scalar(ops, L: Labels, P: ModelParams) -> Fraction | None:
    """Scalar ``c`` with ``ops[0](ops[1](...(Psi)))= c Psi``; ``None`` if the result is not a multiple."""
    combo = {L: Fraction(1)}
    try:
        for op in reversed(ops):
            combo = act(op, combo, P)
    except NotProportional:
        return None
    if not combo:
        return Fraction(0)
    if set(combo) != {L}:
        return None
    return combo[L]


def _combo_case(state: dict, measured: dict, expected: dict) -> Case:
    """Compare two combinations of eigenfunction triples."""
    ms, es = combo_format(measured), combo_format(expected)
    if not measured and not expected:
        return Case(state, es, ms, "Match")
    if not expected:
        return Case(state, es, ms, "Nonzero")
    if set(measured) != set(expected):
        return Case(state, es, ms, "NotProportional", None, "different eigenfunction content")
    ratios = {measured[k] / expected[k] for k in expected}
    if len(ratios) != 1:
        return Case(state, es, ms, "NotProportional", None, "component ratios differ")
    r = ratios.pop()
    return Case(state, es, ms, "Match" if r == 1 else "Mismatch", r)


def _rho_label(L: Labels) -> Fraction:
    return Fraction(2 * L.mp + 1)


def _J1(c, P):
    inner = combo_scale_by(c, lambda L: 1 / _rho_label(L))
    return combo_add((1, act("D1minus", inner, P)), (-1, act("D1plus", inner, P)))


def _J2(c, P):
    return combo_add((1, act("D1minus", c, P)), (1, act("D1plus", c, P)))


def _K1(c, P):
    inner = combo_scale_by(c, lambda L: 1 / (2 * fm.azimuthal_mu(L.n, P)))
    return combo_add((1, act("D2plus", inner, P)), (-1, act("D2minus", inner, P)))


def _K2(c, P):
    return combo_add((1, act("D2minus", c, P)), (1, act("D2plus", c, P)))


def _commutator(A, B, c, P):
    return combo_add((1, A(B(c, P), P)), (-1, B(A(c, P), P)))


def _Htheta(c, P):
    return act_eigen("Htheta", c, P)


def _Hphi(c, P):
    return act_eigen("Hphi", c, P)


# ---------------------------------------------------------------------------
# ODE certificates

@identity("ode:radial", True, "radial factor satisfies the radial equation with threaded k2")
def _ode_radial(ctx):
    return [_residual_case(_st(s), hamiltonian_residual(s, eigen_triple(s.labels, s.params))[0]) for s in ctx.states()]


@identity("ode:polar", True, "polar factor is an H_theta eigenfunction with eigenvalue rho^2")
def _ode_polar(ctx):
    return [_residual_case(_st(s), hamiltonian_residual(s, eigen_triple(s.labels, s.params))[1]) for s in ctx.states()]


@identity("ode:azimuthal", True, "azimuthal factor is an H_phi eigenfunction with eigenvalue mu^2")
def _ode_azimuthal(ctx):
    return [_residual_case(_st(s), hamiltonian_residual(s, eigen_triple(s.labels, s.params))[2]) for s in ctx.states()]


XJACOBI_CERT_PARAMS = ((3, 1), (3, 2), (5, 2))


@identity("ode:xjacobi", True, "X1 Jacobi polynomials n=1..8 solve the exceptional equation")
def _ode_xjacobi(ctx):
    out = []
    for d, g in XJACOBI_CERT_PARAMS:
        conv = resolve_xjacobi_convention(d, g)
        for n in range(1, 9):
            res = ode_residual(FamilyId("xjacobi", (d, g)), n)
            out.append(_residual_case({"n": n, "delta": fmt_q(d), "gamma": fmt_q(g),
                                       "eta": fmt_q(conv.eta), "xi": fmt_q(conv.xi)}, res))
    return out


@identity("ode:families", True, "Laguerre, Jacobi and associated Legendre members up to index 8")
def _ode_families(ctx):
    out = []
    g, d = ctx.grid.gamma, ctx.grid.delta
    for k in range(9):
        out.append(_residual_case({"family": "laguerre", "index": k, "beta": "5/1"},
                                  ode_residual(FamilyId("laguerre", (5,)), k)))
        out.append(_residual_case({"family": "jacobi", "index": k, "a": fmt_q(g), "b": fmt_q(d)},
                                  ode_residual(FamilyId("jacobi", (g, d)), k)))
        for mu in range(k + 1):
            out.append(_residual_case({"family": "assoclegendre", "m": k, "mu": mu},
                                      ode_residual(FamilyId("assoclegendre", (k,)), mu)))
    return out


def _unique_azimuthal(ctx):
    seen = {}
    for s in ctx.states():
        key = (s.n, s.params.gamma, s.params.delta)
        seen.setdefault(key, s)
    return list(seen.values())


@identity("ode:substitution-prefactor", False,
          "azimuthal function built with exponents (delta+2)/4, (gamma+2)/4 and the reduced equation")
def _ode_substitution(ctx):
    out = []
    for s in _unique_azimuthal(ctx):
        P = s.params
        g, d, b = P.gamma, P.delta, P.b
        Y = xjacobi(s.n, d, g)
        Z = quasi(Y, [Factor(b, -1), Factor(1, (g + 2) / 4, -1), Factor(-1, (d + 2) / 4, 1)])
        hz = op_apply(op_Hphi(P), Z)
        try:
            lam = hz.ratio(Z)
        except NotProportional:
            lam = None
        st = {"n": s.n, "gamma": fmt_q(g), "delta": fmt_q(d)}
        out.append(compare({**st, "check": "H_phi eigenvalue"}, s.mu**2, lam))
        # reduced equation for the polynomial part
        k1 = Fraction(s.mu**2)
        yb = quasi(Poly([1]), [Factor(b, -1)])
        c2 = quasi(Poly([-1, 0, 1]))
        c1 = quasi(Poly([g - d, g + d + 2])) - yb * quasi(Poly([-2, 0, 2]))
        c0 = quasi(Poly([(g + d + 1) ** 2 / 4 - k1])) - yb * quasi(Poly([g - d, g + d - 1]))
        f = quasi(Y)
        res = c2 * f.derivative().derivative() + c1 * f.derivative() + c0 * f
        out.append(_residual_case({**st, "check": "reduced equation residual"}, res))
    return out


# ---------------------------------------------------------------------------
# ladders

LADDER_OPS = ("LN", "RN", "Lrho", "Rrho", "Lmu", "Rmu", "Fwd", "Bwd", "LnBare", "RnBare", "LnConj", "RnConj")
EIGEN_OPS = ("Hr", "Htheta", "Hphi")
INTEGRAL_OPS = ("D1minus", "D1plus", "D2minus", "D2plus")


def _ladder_case(s: BasisState, op: str, against: str) -> Case:
    la = ladder_match(op, s)
    st = _st(s, op=op, target=la.output.to_dict())
    ref = la.expected if against == "derived" else la.stated
    if la.annihilated and la.matched:
        return Case(st, ref, Fraction(0), "Annihilated", None, "target factor does not exist; result is zero")
    return compare(st, ref, la.coefficient if la.matched else None, la.note)


def _make_ladder_identity(op: str):
    @identity(f"ladder:{op}", True, f"{op} maps the factor to an exact multiple of its target")
    def _fn(ctx, op=op):
        return [_ladder_case(s, op, "derived") for s in ctx.states()]


def _make_stated_identity(op: str):
    @identity(f"stated-coefficient:{op}", False, f"{op} coefficient against the stated closed form")
    def _fn(ctx, op=op):
        return [_ladder_case(s, op, "stated") for s in ctx.states()]


for _op in LADDER_OPS + EIGEN_OPS + INTEGRAL_OPS:
    _make_ladder_identity(_op)
for _op in LADDER_OPS:
    _make_stated_identity(_op)


@identity("stated-operator", False,
          "forward/backward maps with literal coefficients and conjugation by the stated ground state")
def _stated_ops(ctx):
    out = []
    for s in _unique_azimuthal(ctx):
        for op in STATED_VARIANTS:
            la = ladder_match(op, s)
            st = {"n": s.n, "gamma": fmt_q(s.params.gamma), "delta": fmt_q(s.params.delta), "op": op}
            out.append(compare(st, la.stated, la.coefficient if la.matched else None, la.note))
    return out


# ---------------------------------------------------------------------------
# integrals

@identity("D1-actions", False, "D1 actions against the stated coefficients")
def _d1_actions(ctx):
    return [_ladder_case(s, op, "stated") for s in ctx.states() for op in ("D1minus", "D1plus")]


@identity("D2-actions", False, "D2 actions against the stated coefficients")
def _d2_actions(ctx):
    return [_ladder_case(s, op, "stated") for s in ctx.states() for op in ("D2minus", "D2plus")]


def _eigen_shift(which: str, s: BasisState, op: str, sign: int) -> tuple[Fraction | None, bool, str]:
    """``lambda`` with ``[X, D] Psi = lambda D Psi`` (``sign=+1``) or ``[D, X]`` (``sign=-1``)."""
    la = ladder_match(op, s)
    if la.annihilated:
        return Fraction(0), True, "annihilated"
    if not la.matched:
        return None, False, la.note
    try:
        out = eigenvalue(which, la.output, s.params)
    except NotProportional:
        return None, False, f"output {la.output} is not an eigenfunction of {which}"
    base = eigenvalue(which, s.labels, s.params)
    return sign * (out - base), False, ""


def _commutator_cases(ctx, which: str, ops) -> list[Case]:
    out = []
    for s in ctx.states():
        for op in ops:
            lam, ann, note = _eigen_shift(which, s, op, -1)
            st = _st(s, check=f"[{op}, {which}]")
            if ann:
                out.append(Case(st, Fraction(0), Fraction(0), "Annihilated", None, note))
            else:
                out.append(compare(st, 0, lam, note))
    return out


@identity("commutators-with-H:D1", True, "[D1-, H] = 0 = [D1+, H] on every state")
def _comm_h_d1(ctx):
    return _commutator_cases(ctx, "H", ("D1minus", "D1plus"))


@identity("commutators-with-Hphi:D1", True, "[D1-, H_phi] = 0 = [D1+, H_phi] on every state")
def _comm_hphi_d1(ctx):
    return _commutator_cases(ctx, "Hphi", ("D1minus", "D1plus"))


@identity("commutators-with-H:D2", False, "[D2-, H] = 0 = [D2+, H] and [D2, H_theta] = 0")
def _comm_h_d2(ctx):
    return _commutator_cases(ctx, "H", ("D2minus", "D2plus")) + _commutator_cases(ctx, "Htheta", ("D2minus", "D2plus"))


@identity("commutators-with-H", False, "[D, H] = 0 for all four integrals D1-, D1+, D2-, D2+")
def _comm_h_all(ctx):
    return _commutator_cases(ctx, "H", INTEGRAL_OPS)


@identity("D2-threading", False,
          "Hamiltonian residual of the triple (psi_N, Theta^{mu+1}, Z_{n-1}) produced by D2-")
def _d2_threading(ctx):
    out = []
    for s in ctx.states():
        la = ladder_match("D2minus", s)
        st = _st(s, output=la.output.to_dict())
        if la.annihilated:
            out.append(Case(st, "0,0,0", "0,0,0", "Annihilated", None, "D2- annihilates this state"))
            continue
        ref = make_state(s.N, s.m, s.n - 1, s.params)
        res = hamiltonian_residual(ref, eigen_triple(la.output, s.params))
        flags = ",".join("0" if r.is_zero() else "nonzero" for r in res)
        verdict = "Match" if all(r.is_zero() for r in res) else "Nonzero"
        note = "" if verdict == "Match" else f"polar residual {res[1].format('z')}"
        out.append(Case(st, "0,0,0", flags, verdict, None, note))
    return out


# ---------------------------------------------------------------------------
# algebra

@identity("Htheta-D1", False, "[H_theta, D1-] = (rho+1)/4 D1-  and  [H_theta, D1+] = -(rho-1)/4 D1+")
def _htheta_d1(ctx):
    out = []
    for s in ctx.states():
        for op, stated in (("D1minus", fm.stated_Htheta_D1minus(s.rho)), ("D1plus", fm.stated_Htheta_D1plus(s.rho))):
            lam, ann, note = _eigen_shift("Htheta", s, op, +1)
            st = _st(s, check=f"[H_theta, {op}]")
            if ann:
                out.append(Case(st, stated, None, "Annihilated", None, note))
            else:
                out.append(compare(st, stated, lam, note))
    return out


@identity("Hphi-D2", False, "[H_phi, D2-] = (2mu+1) D2-  and  [H_phi, D2+] = -(2mu-1) D2+")
def _hphi_d2(ctx):
    out = []
    for s in ctx.states():
        for op, stated in (("D2minus", fm.stated_Hphi_D2minus(s.mu)), ("D2plus", fm.stated_Hphi_D2plus(s.mu))):
            lam, ann, note = _eigen_shift("Hphi", s, op, +1)
            st = _st(s, check=f"[H_phi, {op}]")
            if ann:
                out.append(Case(st, stated, None, "Annihilated", None, note))
            else:
                out.append(compare(st, stated, lam, note))
    return out


def _products(s: BasisState, minus: str, plus: str):
    L, P = s.labels, s.params
    return product_scalar((minus, plus), L, P), product_scalar((plus, minus), L, P)


@identity("product-D1", False, "D1-D1+ and D1+D1- against the stated bracket products")
def _product_d1(ctx):
    out = []
    for s in ctx.states():
        mp, pm = _products(s, "D1minus", "D1plus")
        a, rho, mu = s.params.alpha, Fraction(s.rho), Fraction(s.mu)
        out.append(compare(_st(s, check="D1- D1+"), fm.stated_D1m_D1p(s.E, rho, mu, a), mp))
        out.append(compare(_st(s, check="D1+ D1-"), fm.stated_D1p_D1m(s.E, rho, mu, a), pm))
    return out


@identity("product-D2", False, "D2-D2+ and D2+D2- against the stated bracket products")
def _product_d2(ctx):
    out = []
    for s in ctx.states():
        mp, pm = _products(s, "D2minus", "D2plus")
        g, d = s.params.gamma, s.params.delta
        out.append(compare(_st(s, check="D2- D2+"), fm.stated_D2m_D2p(s.rho, s.mu, g, d), mp))
        out.append(compare(_st(s, check="D2+ D2-"), fm.stated_D2p_D2m(s.rho, s.mu, g, d), pm))
    return out


def _split_cases(s, mp, pm, even, odd, root, label):
    out = []
    comm = None if mp is None or pm is None else mp - pm
    anti = None if mp is None or pm is None else mp + pm
    out.append(compare(_st(s, check=f"{label[0]} = even + odd*{label[2]}"), even + odd * root, mp))
    out.append(compare(_st(s, check=f"{label[1]} = even - odd*{label[2]}"), even - odd * root, pm))
    out.append(compare(_st(s, check="commutator = 2 odd root"), 2 * odd * root, comm))
    out.append(compare(_st(s, check="anticommutator = 2 even"), 2 * even, anti))
    return out


@identity("P1P2-split", False, "D1 products as P1 +- P2 sqrt(H_theta) with the stated P1, P2")
def _p1p2(ctx):
    out = []
    for s in ctx.states():
        mp, pm = _products(s, "D1minus", "D1plus")
        rho, mu, a = Fraction(s.rho), Fraction(s.mu), s.params.alpha
        p1, p2 = fm.stated_P1(s.E, rho**2, mu**2, a), fm.stated_P2(s.E, rho**2, mu**2, a)
        out += _split_cases(s, mp, pm, p1, p2, rho, ("D1-D1+", "D1+D1-", "rho"))
    return out


@identity("P1P2-split[derived]", True, "D1 products as P1 +- P2 rho with P1, P2 from the bracket products")
def _p1p2_derived(ctx):
    out = []
    for s in ctx.states():
        mp, pm = _products(s, "D1minus", "D1plus")
        rho, mu, a = Fraction(s.rho), Fraction(s.mu), s.params.alpha
        p1, p2 = fm.derived_P1(s.E, rho, mu, a), fm.derived_P2(s.E, rho, mu, a)
        out += _split_cases(s, mp, pm, p1, p2, rho, ("D1-D1+", "D1+D1-", "rho"))
    return out


@identity("P3P4-split", False, "D2 products as P3 +- P4 sqrt(H_phi) with the stated P3, P4")
def _p3p4(ctx):
    out = []
    for s in ctx.states():
        mp, pm = _products(s, "D2minus", "D2plus")
        rho, mu = Fraction(s.rho), Fraction(s.mu)
        g, d = s.params.gamma, s.params.delta
        p3, p4 = fm.stated_P3(rho**2, mu**2, g, d), fm.stated_P4(rho**2, mu**2, g, d)
        out += _split_cases(s, mp, pm, p3, p4, mu, ("D2-D2+", "D2+D2-", "mu"))
    return out


@identity("J-relations", False, "[H_theta, J1] = (J1+J2)/4 and [H_theta, J2] = (rho^2 J1 + J2)/4")
def _j_relations(ctx):
    out = []
    for s in ctx.states():
        P, psi, rho2 = s.params, {s.labels: Fraction(1)}, Fraction(s.rho) ** 2
        m1 = _commutator(_Htheta, _J1, psi, P)
        e1 = combo_add((Fraction(1, 4), _J1(psi, P)), (Fraction(1, 4), _J2(psi, P)))
        m2 = _commutator(_Htheta, _J2, psi, P)
        e2 = combo_add((rho2 / 4, _J1(psi, P)), (Fraction(1, 4), _J2(psi, P)))
        out.append(_combo_case(_st(s, check="[H_theta, J1]"), m1, e1))
        out.append(_combo_case(_st(s, check="[H_theta, J2]"), m2, e2))
    return out


@identity("K-relations", False, "[H_phi, K1] = K1+K2 and [H_phi, K2] = (2n+delta+gamma-1)^2 K1 + K2")
def _k_relations(ctx):
    out = []
    for s in ctx.states():
        P, psi = s.params, {s.labels: Fraction(1)}
        c = (2 * s.n + P.delta + P.gamma - 1) ** 2
        m1 = _commutator(_Hphi, _K1, psi, P)
        e1 = combo_add((1, _K1(psi, P)), (1, _K2(psi, P)))
        m2 = _commutator(_Hphi, _K2, psi, P)
        e2 = combo_add((c, _K1(psi, P)), (1, _K2(psi, P)))
        out.append(_combo_case(_st(s, check="[H_phi, K1]"), m1, e1))
        out.append(_combo_case(_st(s, check="[H_phi, K2]"), m2, e2))
    return out


@identity("JK-cross", False, "[J1, K1] = 0 = [J2, K2]")
def _jk_cross(ctx):
    out = []
    for s in ctx.states():
        P, psi = s.params, {s.labels: Fraction(1)}
        out.append(_combo_case(_st(s, check="[J1, K1]"), _commutator(_J1, _K1, psi, P), {}))
        out.append(_combo_case(_st(s, check="[J2, K2]"), _commutator(_J2, _K2, psi, P), {}))
    return out


# ---------------------------------------------------------------------------
# spectrum

def _spectrum_params(ctx):
    return [(a, ctx.grid.gamma, ctx.grid.delta) for a in ctx.grid.alphas]


@identity("energy-identities", True,
          "-alpha^2/(8(N+m+1)^2) equals -alpha^2/(2(p+1)^2) at p = 2(N+m)+1 and the state energy")
def _energy_identities(ctx):
    out = []
    for a in (1, 2, 3):
        for N in range(0, 7):
            for m in range(0, 7):
                st = {"N": N, "m": m, "alpha": fmt_q(a)}
                e = sp.energy_level(N, m, a)
                out.append(compare({**st, "check": "level"}, sp.level_energy(2 * (N + m) + 1, a), e))
                out.append(compare({**st, "check": "quantization"}, fm.energy(N, m, a), e))
    return out


@identity("spectrum-constraints", True,
          "u1=(p+2)/2, u2=(p+3)/2, E=-alpha^2/(2(p+1)^2); Phi1(0,0), Phi2(0,0), Phi2(p+1,p+1) vanish")
def _spectrum_constraints(ctx):
    out = []
    for a, g, d in _spectrum_params(ctx):
        for p in range(0, ctx.pmax + 1):
            sol = sp.solve_constraints(p, a, g, d)
            st = {"p": p, "alpha": fmt_q(a)}
            out.append(compare({**st, "check": "u1"}, Fraction(p + 2, 2), sol.u1))
            out.append(compare({**st, "check": "u2"}, Fraction(p + 3, 2), sol.u2))
            out.append(compare({**st, "check": "E"}, sp.level_energy(p, a), sol.E))
            for name in ("Phi1(0,0)", "Phi2(0,0)", "Phi2(p+1,p+1)"):
                out.append(compare({**st, "check": name}, 0, sol.entry(name).value.value))
    return out


@identity("phi1-corner", False, "Phi1(p+1, p+1) = 0 at the quoted solution")
def _phi1_corner(ctx):
    out = []
    for a, g, d in _spectrum_params(ctx):
        for p in range(0, ctx.pmax + 1):
            e = sp.solve_constraints(p, a, g, d).entry("Phi1(p+1,p+1)")
            facs = ", ".join(fmt_q(v) for v in e.value.factors)
            out.append(compare({"p": p, "alpha": fmt_q(a)}, 0, e.value.value, f"brackets [{facs}]"))
    return out


@identity("phi2-diagonal", False, "Phi2(x, x) > 0 for 0 < x <= p at the quoted solution")
def _phi2_diagonal(ctx):
    out = []
    g, d = ctx.grid.gamma, ctx.grid.delta
    for p in range(0, ctx.pmax + 1):
        for v in sp.phi2_diagonal(p, g, d)[1:p + 1]:
            x = int(v.arguments["x1"])
            verdict = "Match" if v.value > 0 else "Nonpositive"
            out.append(Case({"p": p, "x": x}, ">0", v.value, verdict, None,
                            f"vanishing brackets {v.vanishing_factors}"))
    return out


@identity("phi1-positivity", False, "Phi1(x, x) > 0 for 0 < x <= p at the quoted solution")
def _phi1_positivity(ctx):
    out = []
    for a, g, d in _spectrum_params(ctx):
        for row in sp.positivity_scan(ctx.pmax, a, g, d):
            verdict = "Match" if row["phi1_positive"] else "Nonpositive"
            out.append(Case({"p": row["p"], "x": row["x"], "alpha": fmt_q(a)}, ">0", row["phi1"], verdict))
    return out


@identity("u1-search", False, "some u1 = k/4 > 0 satisfies all four constraints")
def _u1_search(ctx):
    out = []
    for a, g, d in _spectrum_params(ctx):
        for p in range(0, ctx.pmax + 1):
            rows = sp.search_u1(p, a, g, d)
            hits = [r for r in rows if r["all"]]
            verdict = "Match" if hits else "NoSolution"
            note = f"{len(rows)} candidates scanned"
            out.append(Case({"p": p, "alpha": fmt_q(a)}, ">=1", Fraction(len(hits)), verdict, None, note))
    return out


@identity("structure-crosscheck", False, "operator products against Phi1, Phi2 and the stated split")
def _structure(ctx):
    out = []
    for s in ctx.states():
        out.extend(sp.structure_vs_ladder_crosscheck(s).cases)
    return out


# ---------------------------------------------------------------------------
# suites

SUITES: dict[str, tuple[str, ...]] = {
    "odes": ("ode:radial", "ode:polar", "ode:azimuthal", "ode:xjacobi", "ode:families", "ode:substitution-prefactor"),
    "ladders": tuple(f"ladder:{op}" for op in LADDER_OPS + EIGEN_OPS)
    + tuple(f"stated-coefficient:{op}" for op in LADDER_OPS) + ("stated-operator",),
    "integrals": tuple(f"ladder:{op}" for op in INTEGRAL_OPS)
    + ("D1-actions", "D2-actions", "commutators-with-H:D1", "commutators-with-Hphi:D1",
       "commutators-with-H:D2", "D2-threading"),
    "algebra": ("Htheta-D1", "Hphi-D2", "product-D1", "product-D2", "P1P2-split", "P1P2-split[derived]",
                "P3P4-split", "J-relations", "K-relations", "JK-cross", "D2-threading",
                "phi1-corner", "phi2-diagonal"),
    "structure": ("energy-identities", "spectrum-constraints", "structure-crosscheck", "P1P2-split[derived]",
                  "phi1-corner", "phi2-diagonal", "phi1-positivity", "u1-search"),
}
SUITES["all"] = tuple(dict.fromkeys(i for name in ("odes", "ladders", "integrals", "algebra", "structure")
                                    for i in SUITES[name]))


def verify_identity(identity_id: str, grid: Grid | None = None, pmax: int = DEFAULT_PMAX) -> VerificationReport:
    from .model import default_grid

    if identity_id not in IDENTITIES:
        raise KeyError(f"unknown identity {identity_id!r}")
    grid = grid or default_grid()
    ident = IDENTITIES[identity_id]
    ctx = Context(grid, pmax)
    return VerificationReport(identity_id, ident.asserted, ident.description, grid.to_dict(), ident.fn(ctx))


def run_suite(name: str, grid: Grid | None = None, pmax: int = DEFAULT_PMAX) -> list[VerificationReport]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [verify_identity(i, grid, pmax) for i in SUITES[name]]
