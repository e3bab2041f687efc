"""Closed-form scalars: the stated formulas and the ones the engine derives.

Everything here is plain rational arithmetic on quantum numbers.  The
``stated_*`` functions transcribe the published expressions verbatim (with
radicals replaced by eigenvalues on the eigenbasis); the ``derived_*``
functions are what exact computation actually produces.  Keeping both side by
side is what lets a report carry an exact ratio for every disagreement.

Label convention: every function takes the per-factor labels ``L`` (fields
``N, mr, mp, mu, n``) and the model parameters ``P`` (``alpha, gamma, delta``).
``rho`` is ``2*mr + 1`` for radial operators and ``2*mp + 1`` for polar ones.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

F = Fraction


def _rho_r(L) -> Fraction:
    return F(2 * L.mr + 1)


def _rho_z(L) -> Fraction:
    return F(2 * L.mp + 1)


def azimuthal_mu(n, P) -> Fraction:
    """``mu = n + (gamma+delta-1)/2``."""
    return n + (P.gamma + P.delta - 1) / 2


def energy(N, m, alpha) -> Fraction:
    """``-alpha^2 / (2 (2N + rho + 1)^2)`` with ``rho = 2m + 1``."""
    return -F(alpha) ** 2 / (2 * F(2 * N + 2 * m + 2) ** 2)


# single-factor ladder coefficients, as stated -----------------------------------

def stated_LN(L, P):
    rho = _rho_r(L)
    return -2 * P.alpha / (2 * L.N + rho + 1)


def stated_RN(L, P):
    rho = _rho_r(L)
    return -2 * P.alpha * (L.N + 1) * (L.N + rho) / (2 * L.N + rho + 1)


def stated_Lrho(L, P):
    return L.mu + (_rho_z(L) - 1) / 2


def stated_Rrho(L, P):
    return L.mu - (_rho_z(L) + 1) / 2


def stated_Lmu(L, P):
    rho = _rho_z(L)
    return ((rho - 1) / 2 + L.mu) * ((rho + 1) / 2 - L.mu)


def stated_Rmu(L, P):
    return F(-1)


def stated_Fwd(L, P):
    """Input is the intermediate Jacobi polynomial of degree ``n``."""
    return -2 * (L.n + P.delta - 1)


def stated_Bwd(L, P):
    return (L.n + P.gamma) / 2


def stated_Ln(L, P):
    n, g, d = L.n, P.gamma, P.delta
    return -(n + d) * (n + g) * (n + d - 2) * (n + g - 2)


def stated_Rn(L, P):
    n, g, d = L.n, P.gamma, P.delta
    return -n * (n + d) * (n + g) * (n + d + g - 1)


def stated_D1minus(L, P):
    rho = _rho_r(L)
    return (rho - 2 * L.mu + 1) * P.alpha / (2 * L.N + rho + 1)


def stated_D1plus(L, P):
    rho, N = _rho_r(L), L.N
    return -P.alpha * (N + 1) * (N + rho) * (rho + 2 * L.mu - 1) / (2 * N + rho + 1)


def stated_D2minus(L, P):
    return -stated_Ln(L, P)


def stated_D2plus(L, P):
    rho, mu = _rho_z(L), L.mu
    n, g, d = L.n, P.gamma, P.delta
    return -F(1, 4) * n * (n + d) * (n + g) * (n + d + g - 1) * (rho + 2 * mu - 1) * (rho - 2 * mu + 1)


# single-factor ladder coefficients, as computed ---------------------------------

derived_LN = stated_LN
derived_RN = stated_RN
derived_Lrho = stated_Lrho
derived_Rrho = stated_Rrho


def derived_Lmu(L, P):
    # associated Legendre functions without the Condon-Shortley phase
    return -stated_Lmu(L, P)


def derived_Rmu(L, P):
    return F(1)


def derived_Fwd(L, P):
    return -2 * (L.n + P.delta)


derived_Bwd = stated_Bwd
derived_Ln = stated_Ln


def derived_Rn(L, P):
    n, g, d = L.n, P.gamma, P.delta
    return -n * (n + d) * (n + g) * (n + d + g)


def derived_Hr(L, P):
    return energy(L.N, L.mr, P.alpha)


def derived_Htheta(L, P):
    return _rho_z(L) ** 2


def derived_Hphi(L, P):
    return azimuthal_mu(L.n, P) ** 2


# products of integrals on an eigenfunction --------------------------------------

def stated_D1m_D1p(E, rho, mu, alpha):
    """``D1- D1+`` with radicals paired into rational brackets."""
    return F(1, 4) * (-F(alpha) ** 2 - 2 * E * (rho - 1) ** 2) * (rho + 2 * mu - 1) * (rho - 2 * mu - 1)


def stated_D1p_D1m(E, rho, mu, alpha):
    return F(1, 4) * (-F(alpha) ** 2 - 2 * E * (rho + 1) ** 2) * (rho + 2 * mu + 1) * (rho - 2 * mu + 1)


def stated_D2m_D2p(rho, mu, gamma, delta):
    t, s, g, d = F(rho), 2 * F(mu), F(gamma), F(delta)
    brackets = [
        1 + t + s, -1 + t - s,
        1 + s - g - d, -1 + s + g - d, 1 + s + g - d, 3 + s + g - d,
        -1 + s - g + d, 1 + s - g + d, 3 + s - g + d, -1 + s + g + d,
    ]
    return -F(1, 1024) * prod(brackets)


def stated_D2p_D2m(rho, mu, gamma, delta):
    t, s, g, d = F(rho), 2 * F(mu), F(gamma), F(delta)
    brackets = [
        -1 + t + s, 1 + t - s,
        -1 + s - g - d, -3 + s + g - d, -1 + s + g - d, 1 + s + g - d,
        -3 + s - g + d, -1 + s - g + d, 1 + s - g + d, -3 + s + g + d,
    ]
    return -F(1, 1024) * prod(brackets)


def stated_P1(H, Ht, Hp, alpha):
    a2 = F(alpha) ** 2
    return -F(1, 4) * (16 * H - 64 * H * Ht + 32 * H * Ht**2 + 16 * H * Hp - 32 * H * Ht * Hp
                       + 2 * a2 - 4 * Ht * a2 + 4 * Hp * a2)


def stated_P2(H, Ht, Hp, alpha):
    return F(1, 4) * (16 * H - 32 * H * Ht + 16 * H * Hp + 2 * F(alpha) ** 2)


def stated_P3(Ht, Hp, gamma, delta):
    g, d = F(gamma), F(delta)
    gd2 = (g - d) ** 2
    return -F(1, 1024) * ((g + d - 1) ** 2 - 4 * Hp) \
        * ((gd2 - 9) * (Ht - 1) - 4 * (gd2 + Ht - 22) * Hp + 16 * Hp**2) \
        * (gd2**2 + (4 * Hp - 1) ** 2 - 2 * gd2 * (4 * Hp + 1))


def stated_P4(Ht, Hp, gamma, delta):
    g, d = F(gamma), F(delta)
    gd2 = (g - d) ** 2
    return F(1, 256) * ((g + d - 1) ** 2 - 4 * Hp) \
        * (gd2**2 + (1 - 4 * Hp) ** 2 - 2 * gd2 * (1 + 4 * Hp)) \
        * (gd2 + 3 * Ht - 4 * (3 + 4 * Hp))


def derived_P1(E, rho, mu, alpha):
    """Even part of the ``D1`` product pair: ``(D1-D1+ + D1+D1-)/2``."""
    return (stated_D1m_D1p(E, rho, mu, alpha) + stated_D1p_D1m(E, rho, mu, alpha)) / 2


def derived_P2(E, rho, mu, alpha):
    """Odd part divided by ``rho``: ``(D1-D1+ - D1+D1-)/(2 rho)``."""
    return (stated_D1m_D1p(E, rho, mu, alpha) - stated_D1p_D1m(E, rho, mu, alpha)) / (2 * rho)


# commutator coefficients ---------------------------------------------------------

def stated_Htheta_D1minus(rho):
    return F(1, 4) * (rho + 1)


def stated_Htheta_D1plus(rho):
    return -F(1, 4) * (rho - 1)


def stated_Hphi_D2minus(mu):
    return 2 * F(mu) + 1


def stated_Hphi_D2plus(mu):
    return -(2 * F(mu) - 1)
