"""Classical and X1-exceptional orthogonal polynomials with exact coefficients.

Parameter conventions
---------------------
``jacobi(n, a, b)`` is the standard Jacobi polynomial with weight
``(1-y)**a * (1+y)**b``.

``xjacobi(n, delta, gamma)`` is the X1 exceptional polynomial attached to the
weight ``(1-y)**gamma * (1+y)**delta / (y-b)**2`` with
``b = (delta+gamma)/(delta-gamma)``.  Its building blocks are therefore the
standard Jacobi polynomials ``jacobi(k, gamma, delta)``: the superscript pair
``(delta, gamma)`` lists the ``(1+y)`` exponent first.  This is the only
reading under which the polynomial is the polynomial part of an eigenfunction
of the azimuthal operator on ``-1 < y < 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InvalidQuantumNumbers, OrderExceedsDegree
from .exactcore import Factor, Poly, QuasiPoly, ZERO, quasi, rational

__all__ = [
    "FamilyId",
    "laguerre",
    "jacobi",
    "legendre",
    "assoc_legendre",
    "xjacobi",
    "xjacobi_b",
    "xjacobi_operator_residual",
    "XJacobiConvention",
    "resolve_xjacobi_convention",
    "ode_residual",
    "polar_prefactor",
]

X = Poly.x()


@lru_cache(maxsize=None)
def laguerre(N: int, beta) -> Poly:
    """Generalized Laguerre polynomial L^beta_N(x).

    Explicit sum ``sum_k (-1)^k binom(N+beta, N-k) x^k / k!`` with the
    generalized binomial for rational ``beta``.
    """
    if N < 0:
        raise ValueError("Laguerre index must be nonnegative")
    beta = rational(beta)
    coeffs = []
    for k in range(N + 1):
        # binom(N+beta, N-k) = prod_{j=1}^{N-k} (beta + k + j) / (N-k)!
        num = Fraction(1)
        for j in range(1, N - k + 1):
            num *= beta + k + j
        coeffs.append((-1) ** k * num / (factorial(N - k) * factorial(k)))
    return Poly(coeffs)


@lru_cache(maxsize=None)
def jacobi(n: int, a, b) -> Poly:
    """Standard Jacobi polynomial P^{(a,b)}_n via the three-term recurrence.

    ``jacobi(-1, ...)`` is the zero polynomial.
    """
    a, b = rational(a), rational(b)
    if n < 0:
        return Poly()
    if n == 0:
        return Poly([1])
    if n == 1:
        # (a+1) + (a+b+2)(y-1)/2
        return Poly([(a - b) / 2, (a + b + 2) / 2])
    p1, p0 = jacobi(n - 1, a, b), jacobi(n - 2, a, b)
    k = n
    s = 2 * k + a + b
    c1 = 2 * k * (k + a + b) * (s - 2)
    c2 = (s - 1) * (a * a - b * b)
    c3 = (s - 1) * s * (s - 2)
    c4 = 2 * (k + a - 1) * (k + b - 1) * s
    if c1 == 0:
        raise ZeroDivisionError(f"degenerate Jacobi recurrence at n={n}, a={a}, b={b}")
    return (p1 * Poly([c2, c3]) - p0 * c4) / c1


@lru_cache(maxsize=None)
def legendre(m: int) -> Poly:
    """Legendre polynomial P_m via Rodrigues' formula."""
    if m < 0:
        raise ValueError("Legendre degree must be nonnegative")
    p = Poly([-1, 0, 1]) ** m
    return p.deriv(m) / (2**m * factorial(m))


def polar_prefactor(order) -> list[Factor]:
    """Factors of ``(1-z)**(order/2) * (1+z)**(order/2)`` on ``-1 < z < 1``."""
    e = rational(order) / 2
    return [Factor(-1, e, 1), Factor(1, e, -1)]


@lru_cache(maxsize=None)
def assoc_legendre(m: int, mu: int) -> QuasiPoly:
    """P^mu_m(z) = (1-z^2)^{mu/2} d^mu/dz^mu P_m(z), no Condon-Shortley phase."""
    if mu < 0 or m < 0:
        raise ValueError("degree and order must be nonnegative")
    if mu > m:
        raise OrderExceedsDegree(f"order {mu} exceeds degree {m}")
    return quasi(legendre(m).deriv(mu), polar_prefactor(mu))


def xjacobi_b(delta, gamma) -> Fraction:
    delta, gamma = rational(delta), rational(gamma)
    if delta == gamma:
        raise InvalidQuantumNumbers("delta must differ from gamma")
    return (delta + gamma) / (delta - gamma)


@lru_cache(maxsize=None)
def xjacobi(n: int, delta, gamma) -> Poly:
    """X1 exceptional Jacobi polynomial of degree ``n >= 1``.

    ``-(y-b)/2 * P_{n-1} + (b*P_{n-1} - P_{n-2}) / (delta+gamma+2n-2)`` with
    ``P_k = jacobi(k, gamma, delta)`` and ``P_{-1} = 0``.
    """
    if n < 1:
        raise ValueError("the X1 family starts at degree 1")
    delta, gamma = rational(delta), rational(gamma)
    b = xjacobi_b(delta, gamma)
    p1 = jacobi(n - 1, gamma, delta)
    p0 = jacobi(n - 2, gamma, delta)
    return Poly([b, -1]) * p1 / 2 + (p1 * b - p0) / (delta + gamma + 2 * n - 2)


def _exceptional_operator(eta, xi, Y: Poly) -> QuasiPoly:
    """T^{(eta,xi)}(Y) = (X^2-1)Y'' + 2A (1-BX)/(B-X) ((X-C)Y' - Y)."""
    A = (xi - eta) / 2
    B = (xi + eta) / (xi - eta)
    C = B + 1 / A
    lead = quasi(Poly([-1, 0, 1]) * Y.deriv(2))
    inner = Poly([-C, 1]) * Y.deriv() - Y
    # (1-BX)/(B-X) = (BX-1)/(X-B)
    tail = quasi(Poly([-1, B]) * inner * (2 * A), [Factor(B, -1)])
    return lead + tail


def xjacobi_operator_residual(n: int, delta, gamma, eta, xi) -> QuasiPoly:
    """Residual of ``T^{(eta,xi)} Y = (n-1)(n+eta+xi) Y`` for ``Y = xjacobi(n, delta, gamma)``."""
    Y = xjacobi(n, delta, gamma)
    eta, xi = rational(eta), rational(xi)
    return _exceptional_operator(eta, xi, Y) - quasi(Y * ((n - 1) * (n + eta + xi)))


@dataclass(frozen=True)
class XJacobiConvention:
    """Outcome of fitting the exceptional operator's parameter order."""

    delta: Fraction
    gamma: Fraction
    eta: Fraction
    xi: Fraction
    B: Fraction
    b: Fraction
    tested_degrees: tuple[int, ...]
    rejected: tuple[tuple[Fraction, Fraction], ...]

    @property
    def sign(self) -> int:
        """+1 when the operator's B equals b, -1 when B = -b."""
        return 1 if self.B == self.b else -1


@lru_cache(maxsize=None)
def resolve_xjacobi_convention(delta, gamma, degrees: tuple[int, ...] = (1, 2, 3, 4)) -> XJacobiConvention:
    """Pick the (eta, xi) assignment whose operator annihilates the residual.

    The literal identification eta=delta, xi=gamma gives B = -b; the swapped
    one gives B = +b. Both are tried on ``degrees`` and the annihilating one
    is kept.
    """
    delta, gamma = rational(delta), rational(gamma)
    b = xjacobi_b(delta, gamma)
    rejected = []
    chosen = None
    for eta, xi in ((delta, gamma), (gamma, delta)):
        if all(xjacobi_operator_residual(n, delta, gamma, eta, xi).is_zero() for n in degrees):
            chosen = (eta, xi)
            break
        rejected.append((eta, xi))
    if chosen is None:
        raise ArithmeticError(f"no operator convention annihilates X1 polynomials for delta={delta}, gamma={gamma}")
    eta, xi = chosen
    return XJacobiConvention(delta, gamma, eta, xi, (xi + eta) / (xi - eta), b, degrees, tuple(rejected))


@dataclass(frozen=True)
class FamilyId:
    """Tag plus parameters. ``params``: (beta,) | (a, b) | (m,) | (delta, gamma)."""

    tag: str
    params: tuple

    def __post_init__(self):
        tag = self.tag.lower()
        object.__setattr__(self, "tag", tag)
        p = tuple(int(v) if tag == "assoclegendre" else rational(v) for v in self.params)
        object.__setattr__(self, "params", p)
        if tag == "laguerre":
            if len(p) != 1 or p[0] <= -1:
                raise InvalidQuantumNumbers("Laguerre needs beta > -1")
        elif tag == "jacobi":
            if len(p) != 2 or p[0] <= -1 or p[1] <= -1:
                raise InvalidQuantumNumbers("Jacobi needs a, b > -1")
        elif tag == "assoclegendre":
            if len(p) != 1 or p[0] < 0:
                raise InvalidQuantumNumbers("associated Legendre needs a nonnegative degree")
        elif tag == "xjacobi":
            if len(p) != 2 or not p[0] > p[1] > 0:
                raise InvalidQuantumNumbers("X1 Jacobi needs delta > gamma > 0")
        else:
            raise InvalidQuantumNumbers(f"unknown family {self.tag!r}")


def ode_residual(family: FamilyId, index: int) -> QuasiPoly:
    """Apply the family's defining operator to its member; zero certifies it.

    For associated Legendre the parameter is the degree ``m`` and ``index`` is
    the order ``mu``.
    """
    tag, p = family.tag, family.params
    if tag == "laguerre":
        (beta,) = p
        y = laguerre(index, beta)
        res = X * y.deriv(2) + Poly([beta + 1, -1]) * y.deriv() + y * index
        return quasi(res)
    if tag == "jacobi":
        a, b = p
        y = jacobi(index, a, b)
        res = Poly([1, 0, -1]) * y.deriv(2) + Poly([b - a, -(a + b + 2)]) * y.deriv() + y * (index * (index + a + b + 1))
        return quasi(res)
    if tag == "assoclegendre":
        (m,) = p
        mu = index
        f = assoc_legendre(m, mu)
        one_minus_z2 = quasi(Poly([1, 0, -1]))
        d1 = f.derivative()
        d2 = d1.derivative()
        inv = quasi(Poly([1]), [Factor(-1, -1, 1), Factor(1, -1, -1)])
        return one_minus_z2 * d2 + quasi(Poly([0, -2])) * d1 + f * (m * (m + 1)) - inv * f * (mu * mu)
    if tag == "xjacobi":
        delta, gamma = p
        conv = resolve_xjacobi_convention(delta, gamma)
        return xjacobi_operator_residual(index, delta, gamma, conv.eta, conv.xi)
    raise InvalidQuantumNumbers(tag)
