"""Exact scalar, polynomial and quasi-polynomial arithmetic.

Scalars are :class:`fractions.Fraction`. A :class:`QuasiPoly` is a function

    exp(rate*z) * prod_i (orientation_i*(z - root_i))**exponent_i * poly(z)

with rational exponents. Fractional powers are formal symbols: the algebra
(product rule, exponent addition) is exact, and numerical evaluation is only
allowed where every fractional-power base is positive.

Canonical form
--------------
* the zero function has ``poly == 0`` and nothing else;
* ``poly`` does not vanish at any factor root (integer parts absorbed);
* factors with a nonnegative integer exponent are multiplied into ``poly``;
* negative integer exponents are stored with orientation ``+1``;
* factors are sorted by root.

Every operation in this module returns canonical values, so equality of
canonical quasi-polynomials is structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import mpmath

from .errors import (
    DomainViolation,
    IncompatibleSupport,
    NonInvertibleGroundState,
    NotProportional,
    OrientationClash,
)

__all__ = [
    "Fraction",
    "rational",
    "Poly",
    "Factor",
    "QuasiPoly",
    "ZERO",
    "ONE",
    "quasi",
    "qp_derivative",
    "qp_mul",
    "qp_add",
    "qp_canonicalize",
    "qp_ratio",
    "qp_eval_float",
    "WORKING_DPS",
]

# Minimum working precision (decimal digits) for float cross-checks.
WORKING_DPS = 50


def rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings like ``"3"``, ``"-7/2"``. Floats are
    rejected so that no rounded value ever enters the exact layer.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational literal")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Univariate polynomial with Fraction coefficients, ``coeffs[k]`` of ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    # construction helpers
    @classmethod
    def constant(cls, value) -> "Poly":
        return cls([value])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def linear(cls, slope, intercept) -> "Poly":
        """``slope*z + intercept``."""
        return cls([intercept, slope])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # arithmetic
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-v for v in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly([other]) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Poly(out)
        s = rational(other)
        return Poly([s * v for v in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, scalar) -> "Poly":
        s = rational(scalar)
        return Poly([v / s for v in self.coeffs])

    def __call__(self, z):
        """Horner evaluation; works for Fractions and mpmath numbers."""
        acc = 0 * z if not isinstance(z, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            if isinstance(z, (int, Fraction)):
                acc = acc * z + c
            else:
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def deriv(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def divmod_linear(self, root) -> tuple["Poly", Fraction]:
        """Synthetic division by ``(z - root)``; returns (quotient, remainder)."""
        a = rational(root)
        if not self.coeffs:
            return Poly(), Fraction(0)
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a + c
            out.append(acc)
        rem = out.pop()
        return Poly(reversed(out)), rem

    def scale_arg(self, c) -> "Poly":
        """Return ``p(c*z)``."""
        c = rational(c)
        return Poly([v * c**i for i, v in enumerate(self.coeffs)])

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def format(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _fmt(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.format()})"


@dataclass(frozen=True, order=True)
class Factor:
    """The power ``(orientation*(z - root))**exponent``."""

    root: Fraction
    exponent: Fraction
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "root", rational(self.root))
        object.__setattr__(self, "exponent", rational(self.exponent))
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @property
    def base(self) -> Poly:
        return Poly([-self.orientation * self.root, self.orientation])

    def format(self, var: str = "z") -> str:
        a = self.root
        if a == 0:
            base = var if self.orientation == 1 else f"-{var}"
        elif self.orientation == 1:
            base = f"{var} - {_fmt(a)}" if a > 0 else f"{var} + {_fmt(-a)}"
        else:
            base = f"{_fmt(a)} - {var}" if a > 0 else f"-{_fmt(-a)} - {var}"
        return f"({base})^({_fmt(self.exponent)})"


@dataclass(frozen=True)
class QuasiPoly:
    """``exp(rate*z) * prod(factors) * poly``.

    The dataclass constructor stores what it is given; use :func:`quasi` or
    the arithmetic methods to get canonical values.
    """

    poly: Poly = field(default_factory=Poly)
    factors: tuple[Factor, ...] = ()
    rate: Fraction = Fraction(0)

    # constructors
    @staticmethod
    def const(value) -> "QuasiPoly":
        return quasi(Poly([value]))

    @staticmethod
    def from_poly(p: Poly | Sequence) -> "QuasiPoly":
        return quasi(p if isinstance(p, Poly) else Poly(p))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    # arithmetic sugar
    def __add__(self, other) -> "QuasiPoly":
        return qp_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other) -> "QuasiPoly":
        return qp_add(self, _lift(other).scale(-1))

    def __rsub__(self, other) -> "QuasiPoly":
        return qp_add(_lift(other), self.scale(-1))

    def __neg__(self) -> "QuasiPoly":
        return self.scale(-1)

    def __mul__(self, other) -> "QuasiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return qp_mul(self, _lift(other))

    __rmul__ = __mul__

    def scale(self, c) -> "QuasiPoly":
        c = rational(c)
        if c == 0 or self.is_zero():
            return ZERO
        return QuasiPoly(self.poly * c, self.factors, self.rate)

    def derivative(self) -> "QuasiPoly":
        return qp_derivative(self)

    def ratio(self, other: "QuasiPoly") -> Fraction:
        return qp_ratio(self, other)

    def eval_float(self, z):
        return qp_eval_float(self, z)

    def is_prefactor(self) -> bool:
        """True when the polynomial part splits into rational linear factors."""
        return _split_linear(self.poly) is not None

    def inverse(self) -> "QuasiPoly":
        """Reciprocal of a prefactor.

        Integer powers of linear factors are absorbed into the polynomial part
        by canonicalization, so the polynomial part may be ``c * prod(z - a_i)``
        with rational ``a_i``; anything else raises
        :class:`NonInvertibleGroundState`.
        """
        split = _split_linear(self.poly)
        if split is None:
            raise NonInvertibleGroundState(
                f"cannot invert quasi-polynomial with polynomial part {self.poly.format()}"
            )
        lead, roots = split
        inv = [Factor(f.root, -f.exponent, f.orientation) for f in self.factors]
        inv += [Factor(a, -1) for a in roots]
        return quasi(Poly([1 / lead]), inv, -self.rate)

    def format(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.rate:
            parts.append(f"exp({_fmt(self.rate)}*{var})")
        parts.extend(f.format(var) for f in self.factors)
        if not (parts and self.poly == Poly([1])):
            parts.append(f"({self.poly.format(var)})" if parts else self.poly.format(var))
        return "*".join(parts)

    def __str__(self) -> str:
        return self.format()


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return small + large[::-1]


# rational-root search is only attempted for modest integer coefficients
_SPLIT_LIMIT = 10**12


def _split_linear(p: Poly):
    """Return ``(leading, roots)`` if ``p`` is ``leading * prod(z - root)`` over Q."""
    if p.is_zero():
        return None
    roots = []
    while p.degree > 0:
        den = 1
        for c in p.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in p.coeffs]
        if ints[0] == 0:
            root = Fraction(0)
        else:
            a0, an = ints[0], ints[-1]
            if abs(a0) > _SPLIT_LIMIT or abs(an) > _SPLIT_LIMIT:
                return None
            root = None
            for num in _divisors(a0):
                for q in _divisors(an):
                    for cand in (Fraction(num, q), Fraction(-num, q)):
                        if p(cand) == 0:
                            root = cand
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
            if root is None:
                return None
        p, _ = p.divmod_linear(root)
        roots.append(root)
    return p.leading, roots


def _lift(value) -> QuasiPoly:
    if isinstance(value, QuasiPoly):
        return value
    if isinstance(value, Poly):
        return quasi(value)
    return quasi(Poly([rational(value)]))


def quasi(poly, factors: Iterable[Factor] = (), rate=0, scale=1) -> QuasiPoly:
    """Build a canonical quasi-polynomial. ``scale`` is folded into ``poly``."""
    p = poly if isinstance(poly, Poly) else Poly(poly)
    return qp_canonicalize(QuasiPoly(p * rational(scale), tuple(factors), rational(rate)))


ZERO = QuasiPoly(Poly(), (), Fraction(0))
ONE = QuasiPoly(Poly([1]), (), Fraction(0))


def _merge(factors: Iterable[Factor], poly: Poly) -> tuple[dict, Poly]:
    """Combine factors sharing a root. Returns {root: [orientation, exponent]}."""
    merged: dict[Fraction, list] = {}
    for fac in factors:
        if fac.exponent == 0:
            continue
        cur = merged.get(fac.root)
        if cur is None:
            merged[fac.root] = [fac.orientation, fac.exponent]
            continue
        if cur[0] != fac.orientation:
            # (-(z-a))**k == (-1)**k (z-a)**k is only exact for integer k
            if _is_int(fac.exponent):
                poly = poly * (-1) ** abs(int(fac.exponent))
            elif _is_int(cur[1]):
                poly = poly * (-1) ** abs(int(cur[1]))
                cur[0] = fac.orientation
            else:
                raise OrientationClash(
                    f"root {_fmt(fac.root)} appears with both orientations "
                    f"and fractional exponents {_fmt(cur[1])}, {_fmt(fac.exponent)}"
                )
        cur[1] += fac.exponent
    return merged, poly


def qp_canonicalize(f: QuasiPoly) -> QuasiPoly:
    """Return the canonical representative of ``f`` (idempotent)."""
    if f.poly.is_zero():
        return ZERO
    merged, poly = _merge(f.factors, f.poly)
    out = []
    for root, (orient, expo) in merged.items():
        while True:
            q, rem = poly.divmod_linear(root)
            if rem != 0:
                break
            poly = q * orient  # divide by orient*(z-root); orient = 1/orient
            expo += 1
        if _is_int(expo):
            k = int(expo)
            base = Poly([-orient * root, orient])
            if k >= 0:
                poly = poly * base**k
                continue
            if orient == -1:
                poly = poly * (-1) ** (-k)
                orient = 1
        out.append(Factor(root, expo, orient))
    out.sort(key=lambda fac: fac.root)
    return QuasiPoly(poly, tuple(out), f.rate)


def qp_mul(f: QuasiPoly, g: QuasiPoly) -> QuasiPoly:
    """Exact product. Raises :class:`OrientationClash` on inconsistent bases."""
    if f.is_zero() or g.is_zero():
        return ZERO
    return qp_canonicalize(QuasiPoly(f.poly * g.poly, f.factors + g.factors, f.rate + g.rate))


def qp_add(f: QuasiPoly, g: QuasiPoly) -> QuasiPoly:
    """Exact sum, aligning each factor to the smaller exponent.

    A factor present on one side only counts as exponent 0 on the other. Raises
    :class:`IncompatibleSupport` when the rates differ or an exponent gap is not
    an integer.
    """
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.rate != g.rate:
        raise IncompatibleSupport(f"exponential rates differ: {_fmt(f.rate)} vs {_fmt(g.rate)}")
    fd = {fac.root: fac for fac in f.factors}
    gd = {fac.root: fac for fac in g.factors}
    pf, pg = f.poly, g.poly
    out = []
    for root in sorted(set(fd) | set(gd)):
        a, b = fd.get(root), gd.get(root)
        if a is None:
            a = Factor(root, 0, b.orientation)
        if b is None:
            b = Factor(root, 0, a.orientation)
        if a.orientation != b.orientation:
            if _is_int(a.exponent):
                pf = pf * (-1) ** abs(int(a.exponent))
                a = Factor(root, a.exponent, b.orientation)
            elif _is_int(b.exponent):
                pg = pg * (-1) ** abs(int(b.exponent))
                b = Factor(root, b.exponent, a.orientation)
            else:
                raise OrientationClash(f"root {_fmt(root)} with opposite orientations")
        gap = a.exponent - b.exponent
        if not _is_int(gap):
            raise IncompatibleSupport(
                f"non-integer exponent gap {_fmt(gap)} at root {_fmt(root)}"
            )
        low = min(a.exponent, b.exponent)
        base = a.base
        pf = pf * base ** int(a.exponent - low)
        pg = pg * base ** int(b.exponent - low)
        out.append(Factor(root, low, a.orientation))
    return qp_canonicalize(QuasiPoly(pf + pg, tuple(out), f.rate))


def qp_derivative(f: QuasiPoly) -> QuasiPoly:
    """d/dz of ``f``, canonical.

    With B = prod(bases), the new polynomial part is
    ``rate*p*B + sum_i e_i*o_i*p*prod_{j!=i} b_j + p'*B`` and each exponent drops by one.
    """
    if f.is_zero():
        return ZERO
    bases = [fac.base for fac in f.factors]
    full = Poly([1])
    for b in bases:
        full = full * b
    p = f.poly
    new = p * full * f.rate + p.deriv() * full
    for i, fac in enumerate(f.factors):
        others = Poly([1])
        for j, b in enumerate(bases):
            if j != i:
                others = others * b
        new = new + p * others * (fac.exponent * fac.orientation)
    facs = tuple(Factor(fac.root, fac.exponent - 1, fac.orientation) for fac in f.factors)
    return qp_canonicalize(QuasiPoly(new, facs, f.rate))


def qp_ratio(f: QuasiPoly, g: QuasiPoly) -> Fraction:
    """Return ``c`` with ``f == c*g`` exactly, else raise :class:`NotProportional`."""
    if g.is_zero():
        raise ValueError("reference function is zero")
    f, g = qp_canonicalize(f), qp_canonicalize(g)
    if f.is_zero():
        return Fraction(0)
    if f.rate != g.rate or f.factors != g.factors or f.poly.degree != g.poly.degree:
        raise NotProportional(f"{f} is not a multiple of {g}")
    c = f.poly.leading / g.poly.leading
    if f.poly != g.poly * c:
        raise NotProportional(f"{f} is not a multiple of {g}")
    return c


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def qp_eval_float(f: QuasiPoly, z):
    """Evaluate at ``z`` with at least :data:`WORKING_DPS` digits.

    Fractional powers need a positive base; integer powers accept any nonzero
    base. Raises :class:`DomainViolation` otherwise.
    """
    with mpmath.workdps(max(mpmath.mp.dps, WORKING_DPS)):
        if isinstance(z, Fraction):
            z = _mpf(z)
        z = mpmath.mpf(z)
        if f.is_zero():
            return mpmath.mpf(0)
        val = f.poly(z)
        for fac in f.factors:
            base = fac.orientation * (z - _mpf(fac.root))
            if base < 0 and not _is_int(fac.exponent) or base == 0 and fac.exponent < 0:
                raise DomainViolation(f"base {fac.format()} is {mpmath.nstr(base, 5)} at z={mpmath.nstr(z, 10)}")
            if _is_int(fac.exponent):
                val *= base ** int(fac.exponent)
            else:
                val *= mpmath.power(base, _mpf(fac.exponent))
        if f.rate:
            val *= mpmath.exp(_mpf(f.rate) * z)
        return +val
