"""Round accounting for the LOCAL-model cost of each primitive.

Nothing here simulates message passing.  Every algorithm charges its
declared round formula (concretized with explicit constants) to a
RoundLedger as it runs, so a driver's total is the sum of its parts and
can be checked against closed-form bounds.  Charges count communication
rounds only; message size is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import is_power_of_two


@dataclass(frozen=True)
class LedgerEntry:
    label: str
    rounds: int
    formula: str = ""


@dataclass
class RoundLedger:
    """Append-only list of (label, rounds, formula) charges."""

    entries: list[LedgerEntry] = field(default_factory=list)

    def charge(self, label: str, rounds: int, formula: str = "") -> None:
        if rounds < 0:
            raise ValueError(f"cannot charge {rounds} rounds")
        self.entries.append(LedgerEntry(label=label, rounds=rounds, formula=formula))

    @property
    def total(self) -> int:
        return sum(e.rounds for e in self.entries)

    def total_for(self, label: str) -> int:
        return sum(e.rounds for e in self.entries if e.label == label)

    def as_records(self) -> list[dict]:
        return [
            {"label": e.label, "rounds": e.rounds, "formula": e.formula}
            for e in self.entries
        ]


def halving_depth(factor: int) -> int:
    """Smallest t >= 0 with (factor/2)^(2^-t) <= 2, for power-of-two factor.

    Equivalently the number of times log2(factor/2) halves before reaching
    1; this is the recursion depth of the square-root rounding cascade.
    """
    if not is_power_of_two(factor):
        raise ValueError(f"factor must be a power of two, got {factor}")
    j = factor.bit_length() - 1
    t = 0
    while (1 << t) < j - 1:
        t += 1
    return t


@dataclass(frozen=True)
class RecurrenceCheck:
    ok: bool
    bound: Fraction
    depth: int
    measured: int


def check_recurrence_bound(
    measured_total: int,
    factor: int,
    rank: int,
    max_degree: int,
    alpha: int,
    c: Fraction | int,
) -> RecurrenceCheck:
    """Check a measured recursive-rounding total against its closed form.

    The recursion R(L) = alpha*r*R(sqrt(2L)) + c*r with base cost
    c*r^2 + c*log2(delta) solves to under 2*(alpha*r)^t_L*(c*r^2 +
    c*log2(delta)), where t_L is the halving depth of L.  The log2 term is
    exact for power-of-two max_degree and rounded up otherwise.
    """
    if rank < 1 or max_degree < 1:
        raise ValueError("rank and max_degree must be >= 1")
    c = Fraction(c)
    depth = halving_depth(factor)
    if is_power_of_two(max_degree):
        log_term = max_degree.bit_length() - 1
    else:
        log_term = math.ceil(math.log2(max_degree))
    bound = 2 * Fraction(alpha * rank) ** depth * (c * rank * rank + c * log_term)
    return RecurrenceCheck(
        ok=Fraction(measured_total) <= bound,
        bound=bound,
        depth=depth,
        measured=measured_total,
    )
