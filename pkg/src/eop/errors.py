"""Exception hierarchy for the engine."""


class EOPError(Exception):
    """Base class for all engine errors."""


class OrientationClash(EOPError):
    """Two fractional-power factors share a root but disagree on orientation."""


class IncompatibleSupport(EOPError):
    """Quasi-polynomials cannot be added within a single function space."""


class NotProportional(EOPError):
    """A function is not an exact scalar multiple of the reference function."""


class DomainViolation(EOPError):
    """A fractional-power base is not positive at the evaluation point."""


class OrderExceedsDegree(EOPError):
    """Associated Legendre order larger than the degree."""


class InvalidQuantumNumbers(EOPError):
    """Quantum numbers or model parameters violate a constraint."""


class NonInvertibleGroundState(EOPError):
    """A conjugating function carries a nontrivial polynomial part."""


class UnknownOperator(EOPError):
    """Operator identifier not in the catalogue."""


class NoSolution(EOPError):
    """Constraint system has no solution."""
