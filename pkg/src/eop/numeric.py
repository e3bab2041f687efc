"""High-precision float cross-checks of exact results.

Exact quasi-polynomials are evaluated with mpmath at :data:`WORKING_DPS`
digits; derivatives on the numeric side come from ``mpmath.diff`` applied to
the *input* function, so the exact differentiation code is never consulted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath.calculus.quadrature import GaussLegendre

from .diffop import DiffOp, OpChain, as_chain
from .exactcore import WORKING_DPS, Factor, QuasiPoly, qp_eval_float, quasi
from .orthopoly import resolve_xjacobi_convention, xjacobi, xjacobi_b

__all__ = [
    "TOLERANCE",
    "CheckResult",
    "sample_points",
    "relative_error",
    "check_apply",
    "check_chain",
    "check_eigen",
    "check_scalar",
    "gauss_legendre_nodes",
    "xjacobi_inner",
    "xjacobi_orthogonality",
    "xjacobi_ode_numeric",
    "crosscheck_grid",
]

TOLERANCE = mpmath.mpf(10) ** -30
# radial points stay clear of r=0; angular points clear of the endpoints
DOMAINS = {"radial": (Fraction(1, 5), Fraction(4)), "polar": (Fraction(-9, 10), Fraction(9, 10)),
           "azimuthal": (Fraction(-9, 10), Fraction(9, 10))}


@dataclass(frozen=True)
class CheckResult:
    label: str
    points: tuple
    errors: tuple

    @property
    def max_error(self):
        return max(self.errors, default=mpmath.mpf(0))

    @property
    def ok(self) -> bool:
        return self.max_error < TOLERANCE


def sample_points(kind: str, rng: random.Random, k: int = 3) -> tuple[Fraction, ...]:
    """``k`` random rationals with denominator 997 inside the coordinate's domain."""
    lo, hi = DOMAINS[kind]
    a, b = int(lo * 997), int(hi * 997)
    return tuple(Fraction(rng.randint(a, b), 997) for _ in range(k))


def relative_error(exact, approx, scale=None):
    """``|exact - approx| / scale`` where ``scale`` defaults to ``max(|exact|, |approx|)``."""
    scale = scale if scale is not None else max(abs(exact), abs(approx))
    if scale == 0:
        return mpmath.mpf(0)
    return abs(exact - approx) / scale


def _f(g: QuasiPoly):
    return lambda t: qp_eval_float(g, t)


def check_apply(D: DiffOp, f: QuasiPoly, g: QuasiPoly, points, label: str = "") -> CheckResult:
    """Compare the exact ``g = D f`` with ``sum_k c_k(z) f^(k)(z)`` from ``mpmath.diff``.

    The error is scaled by the largest individual term so that cancellations
    (including exact zeros) are judged against the size of what cancelled.
    """
    errs = []
    with mpmath.workdps(WORKING_DPS + 20):
        for z in points:
            zf = mpmath.mpf(z.numerator) / z.denominator
            terms = [qp_eval_float(c, zf) * mpmath.diff(_f(f), zf, k) for k, c in D.terms.items()]
            approx = mpmath.fsum(terms)
            exact = qp_eval_float(g, zf)
            scale = max([abs(t) for t in terms] + [abs(exact)])
            errs.append(relative_error(exact, approx, scale))
    return CheckResult(label, tuple(points), tuple(errs))


def check_chain(C: OpChain | DiffOp, f: QuasiPoly, points, label: str = "") -> list[CheckResult]:
    """Stage-by-stage check of a chain; multiplications are checked as pointwise products."""
    C = as_chain(C)
    trace = C.trace(f)
    out = []
    with mpmath.workdps(WORKING_DPS + 20):
        if C.right is not None:
            errs = []
            for z in points:
                zf = mpmath.mpf(z.numerator) / z.denominator
                errs.append(relative_error(qp_eval_float(trace[0], zf), qp_eval_float(C.right, zf) * qp_eval_float(f, zf)))
            out.append(CheckResult(f"{label}:right", tuple(points), tuple(errs)))
        for i, D in enumerate(reversed(C.stages)):
            out.append(check_apply(D, trace[i], trace[i + 1], points, f"{label}:stage{i}"))
        if C.left is not None:
            errs = []
            for z in points:
                zf = mpmath.mpf(z.numerator) / z.denominator
                errs.append(relative_error(qp_eval_float(trace[-1], zf),
                                           qp_eval_float(C.left, zf) * qp_eval_float(trace[-2], zf)))
            out.append(CheckResult(f"{label}:left", tuple(points), tuple(errs)))
    return out


def check_eigen(image: QuasiPoly, target: QuasiPoly, coefficient: Fraction, points, label: str = "") -> CheckResult:
    """Pointwise ``image(z) = coefficient * target(z)``."""
    errs = []
    with mpmath.workdps(WORKING_DPS + 20):
        c = mpmath.mpf(coefficient.numerator) / coefficient.denominator
        for z in points:
            zf = mpmath.mpf(z.numerator) / z.denominator
            a, b = qp_eval_float(image, zf), c * qp_eval_float(target, zf)
            errs.append(relative_error(a, b))
    return CheckResult(label, tuple(points), tuple(errs))


def check_scalar(exact: Fraction, approx, label: str = "") -> CheckResult:
    with mpmath.workdps(WORKING_DPS + 20):
        e = mpmath.mpf(exact.numerator) / exact.denominator
        return CheckResult(label, (), (relative_error(e, approx),))


# ---------------------------------------------------------------------------
# quadrature

@lru_cache(maxsize=None)
def gauss_legendre_nodes(degree: int = 8, dps: int = WORKING_DPS) -> tuple:
    """Nodes and weights on [-1, 1]; ``3 * 2**(degree-1)`` points (384 for degree 8)."""
    with mpmath.workdps(dps + 10):
        return tuple(GaussLegendre(mpmath.mp).calc_nodes(degree, mpmath.mp.prec))


def xjacobi_inner(i: int, j: int, delta, gamma, degree: int = 8):
    """``int_{-1}^{1} P_i P_j (1-y)^gamma (1+y)^delta / (y-b)^2 dy`` by Gauss-Legendre."""
    delta, gamma = Fraction(delta), Fraction(gamma)
    b = xjacobi_b(delta, gamma)
    w = quasi(xjacobi(i, delta, gamma) * xjacobi(j, delta, gamma), _weight_factors(delta, gamma, b))
    with mpmath.workdps(WORKING_DPS + 10):
        return mpmath.fsum(wt * qp_eval_float(w, x) for x, wt in gauss_legendre_nodes(degree))


def _weight_factors(delta, gamma, b):
    return [Factor(1, gamma, -1), Factor(-1, delta, 1), Factor(b, -2)]


def xjacobi_orthogonality(i: int, j: int, delta, gamma, degree: int = 8):
    """Normalized overlap ``|<P_i, P_j>| / sqrt(<P_i,P_i><P_j,P_j>)``."""
    with mpmath.workdps(WORKING_DPS + 10):
        ij = xjacobi_inner(i, j, delta, gamma, degree)
        ii = xjacobi_inner(i, i, delta, gamma, degree)
        jj = xjacobi_inner(j, j, delta, gamma, degree)
        return abs(ij) / mpmath.sqrt(ii * jj)


def xjacobi_ode_numeric(n: int, delta, gamma, points) -> CheckResult:
    """Evaluate the exceptional equation with numerically differentiated ``P_n``."""
    conv = resolve_xjacobi_convention(delta, gamma)
    A = (conv.xi - conv.eta) / 2
    B = conv.B
    C = B + 1 / A
    lam = (n - 1) * (n + conv.eta + conv.xi)
    Y = xjacobi(n, delta, gamma)
    errs = []
    with mpmath.workdps(WORKING_DPS + 20):
        q = lambda v: mpmath.mpf(v.numerator) / v.denominator  # noqa: E731
        Af, Bf, Cf, lf = q(A), q(B), q(C), q(Fraction(lam))
        for z in points:
            x = q(z)
            y0 = Y(x)
            y1 = mpmath.diff(Y, x, 1)
            y2 = mpmath.diff(Y, x, 2)
            terms = [(x * x - 1) * y2, 2 * Af * (1 - Bf * x) / (Bf - x) * ((x - Cf) * y1 - y0), -lf * y0]
            scale = max(abs(t) for t in terms)
            errs.append(abs(mpmath.fsum(terms)) / scale if scale else mpmath.mpf(0))
    return CheckResult(f"xjacobi n={n}", tuple(points), tuple(errs))


def _structure_checks(rng: random.Random, alpha, gamma, delta, k: int = 3) -> list[CheckResult]:
    from .spectrum import phi1_eval, phi2_eval

    out = []
    q = lambda v: mpmath.mpf(v.numerator) / v.denominator  # noqa: E731
    for _ in range(k):
        x1, x2, u1, u2 = (Fraction(rng.randint(1, 4000), 997) for _ in range(4))
        E = -Fraction(rng.randint(1, 4000), 997)
        v1 = phi1_eval(x1, x2, E, u1, u2, alpha)
        v2 = phi2_eval(x1, x2, u1, u2, gamma, delta)
        with mpmath.workdps(WORKING_DPS + 20):
            X1, X2, a = q(x1 + u1), q(x2 + u2), q(Fraction(alpha))
            # the conjugate pair (sqrt(-a^2) -+ sqrt(2E)(2X1-1)) multiplied in complex arithmetic
            s = mpmath.sqrt(mpmath.mpc(2 * q(E))) * (2 * X1 - 1)
            A = mpmath.sqrt(mpmath.mpc(-a * a))
            f1 = ((A - s) * (A + s)).real * (2 * X1 + 2 * X2 - 1) * (2 * X1 - 2 * X2 - 1) / 4
            t, s2, g, d = 2 * X1, 2 * X2, q(Fraction(gamma)), q(Fraction(delta))
            brackets = [-1 + t + s2, 1 + t - s2, -1 + s2 - g - d, -3 + s2 + g - d, -1 + s2 + g - d,
                        1 + s2 + g - d, -3 + s2 - g + d, -1 + s2 - g + d, 1 + s2 - g + d, -3 - s2 + g + d]
            f2 = -mpmath.fprod(brackets) / 1024
        out.append(check_scalar(v1.value, f1, "Phi1"))
        out.append(check_scalar(v2.value, f2, "Phi2"))
    return out


def crosscheck_grid(grid=None, seed: int = 20240501, k: int = 3) -> list[CheckResult]:
    """Float-check every exact identity the engine asserts on ``grid``.

    Covers each stage of every single-coordinate operator, the final
    ``op f = c * target`` relation, the exceptional equation and the
    structure-function expansions.
    """
    from .model import SINGLE, build_operator, default_grid, factor_function, kind_ok, ladder_match

    grid = grid or default_grid()
    rng = random.Random(seed)
    out: list[CheckResult] = []
    for s in grid.states():
        for op, spec in SINGLE.items():
            f = factor_function(spec.src, s.labels, s.params)
            pts = sample_points(spec.coord, rng, k)
            C = build_operator(op, s)
            out.extend(check_chain(C, f, pts, f"{op}@{s.labels}"))
            la = ladder_match(op, s)
            if la.matched and not la.annihilated:
                target = factor_function(spec.dst, la.output, s.params)
                out.append(check_eigen(C(f), target, la.coefficient, pts, f"{op}@{s.labels}:coefficient"))
    for delta, gamma in ((3, 1), (3, 2), (5, 2)):
        for n in range(1, 9):
            out.append(xjacobi_ode_numeric(n, delta, gamma, sample_points("azimuthal", rng, k)))
    for a in grid.alphas:
        out.extend(_structure_checks(rng, a, grid.gamma, grid.delta, k))
    return out
