"""Instances, divisions and exact verification.

An instance is n measures plus n nonnegative rational demands.  User
facing instances have demands summing to exactly 1; recursive
subproblems are allowed slack (sum at most 1), which only makes them
easier to satisfy.

A division is a sorted list of cut points strictly inside (0,1) plus an
owner per piece.  Pieces are half open [c_j, c_{j+1}) with the final
piece closed at 1; since every measure here is non-atomic the convention
never changes a mass.  Verification is exact: surpluses are rationals
with no rounding, and validity is decided, never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, ValidationError
from .measure import Measure, RationalLike, ONE, ZERO, _frac


class Instance:
    """n agents, each with a measure and a demand."""

    __slots__ = ("measures", "demands")

    def __init__(self, measures: Sequence[Measure], demands: Sequence[RationalLike]):
        measures = tuple(measures)
        for i, m in enumerate(measures):
            if not isinstance(m, Measure):
                raise ValidationError(f"measures[{i}]", f"expected a Measure, got {type(m).__name__}")
        dem = tuple(_frac(d, f"demands[{i}]") for i, d in enumerate(demands))
        if not measures:
            raise ValidationError("measures", "need at least one agent")
        if len(dem) != len(measures):
            raise ValidationError("demands", f"expected {len(measures)} entries, got {len(dem)}")
        for i, d in enumerate(dem):
            if d < ZERO:
                raise ValidationError(f"demands[{i}]", f"demand must be nonnegative, got {d}")
        if sum(dem) > ONE:
            raise ValidationError("demands", f"demands sum to {sum(dem)} > 1")
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "demands", dem)

    def __setattr__(self, name, value):
        raise AttributeError("Instance is immutable")

    @property
    def n(self) -> int:
        return len(self.measures)

    @property
    def demand_sum(self) -> Fraction:
        return sum(self.demands, ZERO)

    def require_unit_demands(self):
        """Raise unless demands sum to exactly 1 (top-level contract)."""
        s = self.demand_sum
        if s != ONE:
            raise ValidationError("demands", f"demands must sum to 1 for a top-level instance, got {s}")

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.measures == other.measures and self.demands == other.demands

    def __hash__(self):
        return hash((self.measures, self.demands))

    def __repr__(self):
        return f"Instance(n={self.n}, demands={[str(d) for d in self.demands]})"


class Division:
    """Cut points in (0,1) plus one owner per piece.

    ``canonical()`` merges adjacent pieces of the same owner so the cut
    count never overstates.
    """

    __slots__ = ("cuts", "owners")

    def __init__(self, cuts: Sequence[RationalLike], owners: Sequence[int]):
        cut_vals = tuple(_frac(c, f"cuts[{i}]") for i, c in enumerate(cuts))
        for i, c in enumerate(cut_vals):
            if not (ZERO < c < ONE):
                raise ValidationError(f"cuts[{i}]", f"cut must lie strictly inside (0,1), got {c}")
            if i > 0 and cut_vals[i - 1] >= c:
                raise ValidationError(f"cuts[{i}]", "cuts must be strictly increasing with no duplicates")
        owner_vals = tuple(owners)
        for i, o in enumerate(owner_vals):
            if not isinstance(o, int) or isinstance(o, bool) or o < 0:
                raise ValidationError(f"owners[{i}]", f"owner must be a nonnegative agent index, got {o!r}")
        if len(owner_vals) != len(cut_vals) + 1:
            raise ValidationError("owners", f"expected {len(cut_vals) + 1} entries for {len(cut_vals)} cuts, got {len(owner_vals)}")
        object.__setattr__(self, "cuts", cut_vals)
        object.__setattr__(self, "owners", owner_vals)

    def __setattr__(self, name, value):
        raise AttributeError("Division is immutable")

    @property
    def cut_count(self) -> int:
        return len(self.cuts)

    def pieces(self) -> tuple[tuple[Fraction, Fraction, int], ...]:
        """(lo, hi, owner) triples covering [0,1] in order."""
        bounds = (ZERO,) + self.cuts + (ONE,)
        return tuple((bounds[i], bounds[i + 1], o) for i, o in enumerate(self.owners))

    def canonical(self) -> "Division":
        cuts, owners = [], [self.owners[0]]
        for cut, owner in zip(self.cuts, self.owners[1:]):
            if owner == owners[-1]:
                continue
            cuts.append(cut)
            owners.append(owner)
        if len(cuts) == len(self.cuts):
            return self
        return Division(cuts, owners)

    def __eq__(self, other):
        if not isinstance(other, Division):
            return NotImplemented
        return self.cuts == other.cuts and self.owners == other.owners

    def __hash__(self):
        return hash((self.cuts, self.owners))

    def __repr__(self):
        return f"Division(cuts={[str(c) for c in self.cuts]}, owners={list(self.owners)})"


@dataclass(frozen=True)
class VerificationReport:
    """Exact per-agent accounting for a division of an instance."""

    masses: tuple[Fraction, ...]      # received mass, per agent, under its own measure
    surpluses: tuple[Fraction, ...]   # mass minus demand
    cut_count: int                    # cuts after canonical merging
    valid: bool                       # every surplus is nonnegative

    def worst_agent(self) -> int:
        return min(range(len(self.surpluses)), key=lambda i: (self.surpluses[i], i))


def verify(inst: Instance, div: Division) -> VerificationReport:
    """Check a division against an instance, exactly."""
    for i, o in enumerate(div.owners):
        if o >= inst.n:
            raise ValidationError(f"owners[{i}]", f"agent index {o} out of range for {inst.n} agents")
    masses = [ZERO] * inst.n
    for lo, hi, owner in div.pieces():
        masses[owner] += inst.measures[owner].interval_mass(lo, hi)
    surpluses = tuple(m - d for m, d in zip(masses, inst.demands))
    return VerificationReport(
        masses=tuple(masses),
        surpluses=surpluses,
        cut_count=div.canonical().cut_count,
        valid=all(s >= ZERO for s in surpluses),
    )


def cut_count_bound(n: int) -> int:
    """Worst-case number of cuts the solver may use for n agents.

    One agent takes the whole interval with no cuts; for n >= 2 the
    guarantee is 3n - 4.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PreconditionError(f"agent count must be a positive integer, got {n!r}")
    return 0 if n == 1 else 3 * n - 4
