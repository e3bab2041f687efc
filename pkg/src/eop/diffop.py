"""Linear differential operators of order <= 2 with quasi-polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactcore import ONE, ZERO, Factor, Fraction, Poly, QuasiPoly, quasi, rational

__all__ = [
    "DiffOp",
    "OpChain",
    "op_apply",
    "chain_apply",
    "op_conjugate",
    "commutator_action",
    "as_chain",
    "angular_to_algebraic",
    "SIN_HALF",
]


def _coef(value) -> QuasiPoly:
    if isinstance(value, QuasiPoly):
        return value
    if isinstance(value, Poly):
        return quasi(value)
    return quasi(Poly([rational(value)]))


class DiffOp:
    """``sum_k coeff_k(z) d^k/dz^k`` for k in {0, 1, 2}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        out = {}
        for k, c in (terms or {}).items():
            if k not in (0, 1, 2):
                raise ValueError(f"order {k} not supported")
            c = _coef(c)
            if not c.is_zero():
                out[k] = c
        self.terms: dict[int, QuasiPoly] = dict(sorted(out.items()))

    @property
    def order(self) -> int:
        return max(self.terms, default=-1)

    def coefficient(self, k: int) -> QuasiPoly:
        return self.terms.get(k, ZERO)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        keys = set(self.terms) | set(other.terms)
        return DiffOp({k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + other.scale(-1)

    def scale(self, c) -> "DiffOp":
        return DiffOp({k: v.scale(c) for k, v in self.terms.items()})

    def shift(self, c) -> "DiffOp":
        """``self - c`` (subtract a constant multiple of the identity)."""
        return self - DiffOp({0: rational(c)})

    def __call__(self, f: QuasiPoly) -> QuasiPoly:
        return op_apply(self, f)

    def __repr__(self) -> str:
        parts = [f"[{c.format()}]*D^{k}" for k, c in self.terms.items()]
        return "DiffOp(" + " + ".join(parts) + ")" if parts else "DiffOp(0)"


def op_apply(D: DiffOp, f: QuasiPoly) -> QuasiPoly:
    """``sum_k coeff_k * f^(k)``, canonical."""
    if f.is_zero():
        return ZERO
    derivs = [f]
    for _ in range(D.order):
        derivs.append(derivs[-1].derivative())
    acc = ZERO
    for k, c in D.terms.items():
        acc = acc + c * derivs[k]
    return acc


@dataclass(frozen=True)
class OpChain:
    """``left * stages[0] * stages[1] * ... * stages[-1] * right``.

    Stages are applied right to left and never expanded into one operator.
    ``left``/``right`` are multiplication operators (``None`` means identity).
    """

    stages: tuple[DiffOp, ...]
    left: QuasiPoly | None = None
    right: QuasiPoly | None = None
    name: str = ""

    def __post_init__(self):
        if not self.stages:
            raise ValueError("an operator chain needs at least one stage")
        object.__setattr__(self, "stages", tuple(self.stages))

    def __call__(self, f: QuasiPoly) -> QuasiPoly:
        return chain_apply(self, f)

    def trace(self, f: QuasiPoly) -> list[QuasiPoly]:
        """Intermediate results: input after ``right``, after each stage, final."""
        out = []
        g = f if self.right is None else self.right * f
        out.append(g)
        for D in reversed(self.stages):
            g = op_apply(D, g)
            out.append(g)
        if self.left is not None:
            g = self.left * g
            out.append(g)
        return out


def as_chain(op) -> OpChain:
    if isinstance(op, OpChain):
        return op
    if isinstance(op, DiffOp):
        return OpChain((op,))
    raise TypeError(f"not an operator: {op!r}")


def chain_apply(C: OpChain | DiffOp, f: QuasiPoly) -> QuasiPoly:
    C = as_chain(C)
    return C.trace(f)[-1]


def op_conjugate(D: DiffOp | OpChain, g: QuasiPoly, name: str = "") -> OpChain:
    """Chain realizing ``g o D o g^{-1}``; ``g`` must be a pure prefactor."""
    inv = g.inverse()
    inner = as_chain(D)
    left = g if inner.left is None else g * inner.left
    right = inv if inner.right is None else inner.right * inv
    return OpChain(inner.stages, left, right, name or inner.name)


def commutator_action(A, B, f: QuasiPoly) -> QuasiPoly:
    """``A(B(f)) - B(A(f))``."""
    return chain_apply(A, chain_apply(B, f)) - chain_apply(B, chain_apply(A, f))


# sin(phi) = (1-y)^{1/2}(1+y)^{1/2} for y = cos(phi), 0 < phi < pi
SIN_HALF = (Factor(-1, Fraction(1, 2), 1), Factor(1, Fraction(1, 2), -1))


def angular_to_algebraic(c2, c1, c0) -> DiffOp:
    """Rewrite ``c2 d^2/dphi^2 + c1 d/dphi + c0`` in ``y = cos(phi)``.

    Uses ``d/dphi = -sin(phi) d/dy`` and ``d^2/dphi^2 = (1-y^2) d^2/dy^2 - y d/dy``.
    Coefficients are quasi-polynomials already expressed in ``y``.
    """
    c2, c1, c0 = _coef(c2), _coef(c1), _coef(c0)
    sin = quasi(Poly([1]), SIN_HALF)
    return DiffOp({
        2: c2 * quasi(Poly([1, 0, -1])),
        1: c2 * quasi(Poly([0, -1])) - c1 * sin,
        0: c0,
    })
