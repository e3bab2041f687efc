"""Deformed oscillator structure functions, the finite-dimension constraints and level tables.

Structure-function arguments are exact rationals.  The energy enters the first
structure function only through ``sqrt(-alpha^2)`` and ``sqrt(2E)``; those two
brackets always appear as a conjugate pair, so their product

    [sqrt(-a^2) - s][sqrt(-a^2) + s] = -a^2 - s^2,   s^2 = 2E (2X1 - 1)^2

is used directly and no complex number is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import formulas as fm
from .errors import InvalidQuantumNumbers, NoSolution
from .exactcore import rational
from .report import Case, VerificationReport, compare, fmt_q

__all__ = [
    "StructureFunctionValue",
    "SpectrumSolution",
    "LevelRow",
    "phi1_factors",
    "phi2_factors",
    "phi1_eval",
    "phi2_eval",
    "solve_constraints",
    "search_u1",
    "energy_level",
    "spectrum_table",
    "positivity_scan",
    "phi2_diagonal",
    "structure_vs_ladder_crosscheck",
]

F = Fraction


@dataclass(frozen=True)
class StructureFunctionValue:
    which: str
    arguments: dict
    prefactor: Fraction
    factors: tuple
    value: Fraction

    @property
    def vanishing_factors(self) -> list[int]:
        """1-based positions of the bracket factors that are zero."""
        return [i + 1 for i, v in enumerate(self.factors) if v == 0]

    def to_dict(self) -> dict:
        return {
            "which": self.which,
            "arguments": {k: fmt_q(v) for k, v in self.arguments.items()},
            "prefactor": fmt_q(self.prefactor),
            "factors": [fmt_q(v) for v in self.factors],
            "value": fmt_q(self.value),
            "vanishingFactors": self.vanishing_factors,
        }


def phi1_factors(X1, X2, E, alpha) -> list[Fraction]:
    """Brackets of the first structure function at ``X1 = x1+u1``, ``X2 = x2+u2``."""
    t = 2 * F(X1) - 1
    return [
        -F(alpha) ** 2 - 2 * F(E) * t * t,
        2 * F(X1) + 2 * F(X2) - 1,
        2 * F(X1) - 2 * F(X2) - 1,
    ]


def phi2_factors(X1, X2, gamma, delta) -> list[Fraction]:
    """The ten brackets of the second structure function."""
    s, t, g, d = 2 * F(X2), 2 * F(X1), F(gamma), F(delta)
    return [
        -1 + t + s,
        1 + t - s,
        -1 + s - g - d,
        -3 + s + g - d,
        -1 + s + g - d,
        1 + s + g - d,
        -3 + s - g + d,
        -1 + s - g + d,
        1 + s - g + d,
        -3 - s + g + d,
    ]


def phi1_eval(x1, x2, E, u1, u2, alpha) -> StructureFunctionValue:
    x1, x2, E, u1, u2, alpha = map(rational, (x1, x2, E, u1, u2, alpha))
    if alpha <= 0:
        raise InvalidQuantumNumbers("alpha must be positive")
    if E >= 0:
        raise InvalidQuantumNumbers("the structure function is defined for bound states, E < 0")
    fac = phi1_factors(x1 + u1, x2 + u2, E, alpha)
    args = {"x1": x1, "x2": x2, "E": E, "u1": u1, "u2": u2, "alpha": alpha}
    return StructureFunctionValue("Phi1", args, F(1, 4), tuple(fac), F(1, 4) * prod(fac))


def phi2_eval(x1, x2, u1, u2, gamma, delta) -> StructureFunctionValue:
    x1, x2, u1, u2, gamma, delta = map(rational, (x1, x2, u1, u2, gamma, delta))
    fac = phi2_factors(x1 + u1, x2 + u2, gamma, delta)
    args = {"x1": x1, "x2": x2, "u1": u1, "u2": u2, "gamma": gamma, "delta": delta}
    return StructureFunctionValue("Phi2", args, -F(1, 1024), tuple(fac), -F(1, 1024) * prod(fac))


# ---------------------------------------------------------------------------
# constraints

@dataclass(frozen=True)
class ConstraintEntry:
    name: str
    value: StructureFunctionValue

    @property
    def holds(self) -> bool:
        return self.value.value == 0

    def to_dict(self) -> dict:
        return {"constraint": self.name, "holds": self.holds, **self.value.to_dict()}


@dataclass(frozen=True)
class SpectrumSolution:
    p: int
    u1: Fraction
    u2: Fraction
    E: Fraction
    ledger: tuple

    def entry(self, name: str) -> ConstraintEntry:
        for e in self.ledger:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"p": self.p, "u1": fmt_q(self.u1), "u2": fmt_q(self.u2), "E": fmt_q(self.E),
                "constraints": [e.to_dict() for e in self.ledger]}


def _energy_from_origin(u1: Fraction, alpha: Fraction) -> Fraction:
    """Solve the first bracket of ``Phi1(0,0)`` for ``E``."""
    t = 2 * u1 - 1
    if t == 0:
        raise NoSolution("Phi1(0,0) = 0 cannot fix E when 2*u1 - 1 = 0")
    return -alpha**2 / (2 * t * t)


def _ledger(p, u1, u2, E, alpha, gamma, delta) -> tuple:
    c = p + 1
    return (
        ConstraintEntry("Phi1(0,0)", phi1_eval(0, 0, E, u1, u2, alpha)),
        ConstraintEntry("Phi1(p+1,p+1)", phi1_eval(c, c, E, u1, u2, alpha)),
        ConstraintEntry("Phi2(0,0)", phi2_eval(0, 0, u1, u2, gamma, delta)),
        ConstraintEntry("Phi2(p+1,p+1)", phi2_eval(c, c, u1, u2, gamma, delta)),
    )


def solve_constraints(p: int, alpha, gamma=2, delta=3) -> SpectrumSolution:
    """Candidate solution ``u1 = (p+2)/2``, ``u2 = u1 + 1/2`` with ``E`` from ``Phi1(0,0) = 0``.

    Every constraint is then evaluated and stored in the ledger whether or not
    it holds.
    """
    if int(p) != p or p < 0:
        raise InvalidQuantumNumbers("p must be a nonnegative integer")
    p = int(p)
    alpha, gamma, delta = rational(alpha), rational(gamma), rational(delta)
    if alpha <= 0:
        raise InvalidQuantumNumbers("alpha must be positive")
    u1 = F(1, 2) + F(p + 1, 2)
    u2 = u1 + F(1, 2)
    E = _energy_from_origin(u1, alpha)
    return SpectrumSolution(p, u1, u2, E, _ledger(p, u1, u2, E, alpha, gamma, delta))


def search_u1(p: int, alpha, gamma=2, delta=3) -> list[dict]:
    """Scan ``u1 = k/4`` for ``0 < k <= 8(p+2)``, with ``u2 = u1 + 1/2`` and ``E`` from ``Phi1(0,0)``.

    Returns one record per candidate listing which constraints hold; the
    ``all`` flag marks candidates satisfying all four.
    """
    alpha, gamma, delta = rational(alpha), rational(gamma), rational(delta)
    out = []
    for k in range(1, 8 * (p + 2) + 1):
        u1 = F(k, 4)
        u2 = u1 + F(1, 2)
        try:
            E = _energy_from_origin(u1, alpha)
        except NoSolution:
            continue
        led = _ledger(p, u1, u2, E, alpha, gamma, delta)
        holds = {e.name: e.holds for e in led}
        out.append({"u1": u1, "u2": u2, "E": E, "holds": holds, "all": all(holds.values())})
    return out


# ---------------------------------------------------------------------------
# levels

def energy_level(N: int, m: int, alpha) -> Fraction:
    """``-alpha^2 / (8 (N+m+1)^2)``."""
    if N < 0 or m < 0:
        raise InvalidQuantumNumbers("N and m must be nonnegative")
    return -rational(alpha) ** 2 / (8 * F(N + m + 1) ** 2)


def level_energy(p: int, alpha) -> Fraction:
    """``-alpha^2 / (2 (p+1)^2)``."""
    return -rational(alpha) ** 2 / (2 * F(p + 1) ** 2)


@dataclass(frozen=True)
class LevelRow:
    p: int
    E: Fraction
    states: tuple
    note: str = "n is a free label: E does not depend on it"

    def to_dict(self) -> dict:
        return {"p": self.p, "E": fmt_q(self.E), "states": [list(s) for s in self.states], "note": self.note}


def spectrum_table(pmax: int, alpha, include_n0: bool = False) -> list[LevelRow]:
    """Levels for odd ``p <= pmax`` with their ``(N, m)`` pairs, ``p = 2(N+m)+1``.

    Levels with no admissible pair (``p = 1`` when ``N >= 1``) are omitted.
    """
    if int(pmax) != pmax or pmax < 1:
        raise InvalidQuantumNumbers("pmax must be a positive integer")
    alpha = rational(alpha)
    n_min = 0 if include_n0 else 1
    rows = []
    for p in range(1, int(pmax) + 1, 2):
        total = (p - 1) // 2
        states = tuple((N, total - N) for N in range(n_min, total + 1))
        if not states:
            continue
        E = level_energy(p, alpha)
        for N, m in states:
            if energy_level(N, m, alpha) != E:
                raise ArithmeticError(f"level identity broken at N={N}, m={m}")
        rows.append(LevelRow(p, E, states))
    return rows


def positivity_scan(pmax: int = 6, alpha=1, gamma=2, delta=3) -> list[dict]:
    """Sign of ``Phi1(x,x)`` and ``Phi2(x,x)`` for ``x = 1..p`` at the candidate solution."""
    rows = []
    for p in range(0, pmax + 1):
        sol = solve_constraints(p, alpha, gamma, delta)
        for x in range(1, p + 1):
            v1 = phi1_eval(x, x, sol.E, sol.u1, sol.u2, alpha).value
            v2 = phi2_eval(x, x, sol.u1, sol.u2, gamma, delta).value
            rows.append({"p": p, "x": x, "phi1": v1, "phi2": v2,
                         "phi1_positive": v1 > 0, "phi2_positive": v2 > 0})
    return rows


def phi2_diagonal(p: int, gamma=2, delta=3) -> list[StructureFunctionValue]:
    """``Phi2(x, x)`` for ``x = 0..p+1`` with ``u2 = u1 + 1/2``."""
    sol_u1 = F(1, 2) + F(p + 1, 2)
    return [phi2_eval(x, x, sol_u1, sol_u1 + F(1, 2), gamma, delta) for x in range(p + 2)]


# ---------------------------------------------------------------------------
# structure functions against composed ladder coefficients

def structure_vs_ladder_crosscheck(s, grid: dict | None = None) -> VerificationReport:
    """Compare operator products measured on ``s`` with the structure functions.

    ``sqrt(H_theta) = 2(x1+u1)`` becomes ``rho`` and ``sqrt(H_phi) = x2+u2``
    becomes ``mu``; the raised arguments ``x+1`` shift both.
    """
    from .verify import product_scalar

    P, L = s.params, s.labels
    rho, mu, E, a = F(s.rho), F(s.mu), s.E, P.alpha
    st = s.to_dict()
    rep = VerificationReport("structure-crosscheck", False,
                             "operator products versus structure-function values and the P1/P2 split",
                             grid or {"state": st})

    def measured(ops):
        return product_scalar(ops, L, P)

    X1, X2 = rho / 2, mu
    checks = [
        ("D1- D1+ = Phi1(x)", ("D1minus", "D1plus"), phi1_eval(X1, X2, E, 0, 0, a).value),
        ("D1+ D1- = Phi1(x+1)", ("D1plus", "D1minus"), phi1_eval(X1 + 1, X2 + 1, E, 0, 0, a).value),
        ("D2+ D2- = Phi2(x)", ("D2plus", "D2minus"), phi2_eval(X1, X2, 0, 0, P.gamma, P.delta).value),
        ("D2- D2+ = Phi2(x+1)", ("D2minus", "D2plus"), phi2_eval(X1 + 1, X2 + 1, 0, 0, P.gamma, P.delta).value),
    ]
    p1 = fm.stated_P1(E, rho**2, mu**2, a)
    p2 = fm.stated_P2(E, rho**2, mu**2, a)
    checks += [
        ("D1- D1+ = P1 + P2 rho", ("D1minus", "D1plus"), p1 + p2 * rho),
        ("D1+ D1- = P1 - P2 rho", ("D1plus", "D1minus"), p1 - p2 * rho),
    ]
    for label, ops, expected in checks:
        rep.cases.append(compare({**st, "check": label}, expected, measured(ops)))
    m_mp = measured(("D1minus", "D1plus"))
    m_pm = measured(("D1plus", "D1minus"))
    comm = None if m_mp is None or m_pm is None else m_mp - m_pm
    rep.cases.append(compare({**st, "check": "[D1-, D1+] = 2 P2 rho"}, 2 * p2 * rho, comm))
    return rep
