"""Exact verification engine for a superintegrable model built on X1 Jacobi polynomials.

Layers, bottom up: :mod:`eop.exactcore` (rationals, quasi-polynomials),
:mod:`eop.orthopoly` (polynomial families), :mod:`eop.diffop` (operators),
:mod:`eop.model` (states, eigenfunctions, ladders), :mod:`eop.verify`
(identity suites), :mod:`eop.spectrum` (structure functions, levels) and
:mod:`eop.numeric` (50-digit float cross-checks).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainViolation,
    EOPError,
    IncompatibleSupport,
    InvalidQuantumNumbers,
    NoSolution,
    NonInvertibleGroundState,
    NotProportional,
    OrderExceedsDegree,
    OrientationClash,
    UnknownOperator,
)
from .exactcore import Factor, Poly, QuasiPoly, quasi, rational  # noqa: E402
from .model import (  # noqa: E402
    BasisState,
    Grid,
    Labels,
    ModelParams,
    build_eigenfunction,
    build_operator,
    default_grid,
    hamiltonian_residual,
    ladder_match,
    make_state,
)
from .spectrum import energy_level, phi1_eval, phi2_eval, solve_constraints, spectrum_table  # noqa: E402
from .verify import run_suite, verify_identity  # noqa: E402

__all__ = [
    "__version__",
    "EOPError", "OrientationClash", "IncompatibleSupport", "NotProportional", "DomainViolation",
    "OrderExceedsDegree", "InvalidQuantumNumbers", "NonInvertibleGroundState", "UnknownOperator", "NoSolution",
    "Factor", "Poly", "QuasiPoly", "quasi", "rational",
    "BasisState", "Grid", "Labels", "ModelParams", "build_eigenfunction", "build_operator", "default_grid",
    "hamiltonian_residual", "ladder_match", "make_state",
    "energy_level", "phi1_eval", "phi2_eval", "solve_constraints", "spectrum_table",
    "run_suite", "verify_identity",
]
