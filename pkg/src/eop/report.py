"""Verification records shared by the model, spectrum and CLI layers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["Case", "VerificationReport", "compare", "fmt_q", "GOOD_VERDICTS"]

# verdicts that count as success for an asserted identity
GOOD_VERDICTS = ("Match", "Annihilated")


def fmt_q(x) -> str | None:
    """Canonical ``num/den`` text for a rational; other values pass through ``str``."""
    if x is None:
        return None
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass(frozen=True)
class Case:
    state: dict
    expected: Fraction | None
    measured: Fraction | str | None
    verdict: str
    ratio: Fraction | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "state": self.state,
            "expected": fmt_q(self.expected),
            "measured": fmt_q(self.measured),
            "verdict": self.verdict,
            "ratio": fmt_q(self.ratio),
            "note": self.note,
        }


def compare(state: dict, expected, measured, note: str = "") -> Case:
    """Case comparing two exact scalars; ``measured=None`` means not proportional."""
    if measured is None:
        return Case(state, expected, None, "NotProportional", None, note)
    expected, measured = Fraction(expected), Fraction(measured)
    if expected == measured:
        return Case(state, expected, measured, "Match", Fraction(1), note)
    ratio = measured / expected if expected != 0 else None
    return Case(state, expected, measured, "Mismatch", ratio, note)


@dataclass
class VerificationReport:
    identity_id: str
    asserted: bool
    description: str
    grid: dict
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict in GOOD_VERDICTS for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if c.verdict not in GOOD_VERDICTS]

    def ratio_pattern(self) -> str:
        """``CONSTANT r`` when every mismatch shares one exact ratio, ``VARYING`` otherwise."""
        ratios = {c.ratio for c in self.failures}
        if not ratios:
            return "NONE"
        if len(ratios) == 1 and None not in ratios and all(c.verdict == "Mismatch" for c in self.failures):
            return f"CONSTANT {fmt_q(next(iter(ratios)))}"
        return "VARYING"

    def to_dict(self) -> dict:
        return {
            "id": self.identity_id,
            "asserted": self.asserted,
            "description": self.description,
            "grid": self.grid,
            "passed": self.passed,
            "ratioPattern": self.ratio_pattern(),
            "cases": [c.to_dict() for c in self.cases],
        }
