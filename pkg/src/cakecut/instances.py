"""Instance generators and a brute-force minimal-cut oracle.

The lower-bound family puts one agent on the whole interval with demand
close to 1 and n-1 agents on tiny disjoint supports around i/n with the
leftover demand split among them.  Any valid division must then place
two cut-or-endpoint positions inside each tiny support's neighbourhood:
the big agent forces every other agent's territory to total length at
most delta, so each tiny agent's positive-mass piece is a short interval
poking into its support, and both of that interval's endpoints land in
the delta-enlarged support.  With the supports' neighbourhoods disjoint
and away from 0 and 1, that is 2(n-1) cuts overall.

``oracle_min_cuts`` is an independent check at desk scale: it enumerates
every division whose cuts come from a finite candidate grid and returns
the smallest cut count that exactly verifies.  Grid infeasibility is
evidence, not proof, and is labelled as such everywhere it is reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable

from .division import Division, Instance, verify
from .errors import BudgetError, PreconditionError, ValidationError
from .measure import Measure, RationalLike, ONE, ZERO, _frac


@dataclass(frozen=True)
class LowerBoundParams:
    """Shape of one member of the hard family.

    ``epsilon`` is the tiny supports' half width, ``delta`` the big
    agent's slack.  delta < epsilon keeps the two-cuts-per-support
    argument valid; epsilon < 1/(2n) keeps the supports disjoint and
    strictly inside (0,1).
    """

    n: int
    epsilon: Fraction
    delta: Fraction

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValidationError("n", f"need an integer n >= 2, got {self.n!r}")
        object.__setattr__(self, "epsilon", _frac(self.epsilon, "epsilon"))
        object.__setattr__(self, "delta", _frac(self.delta, "delta"))
        if not (ZERO < self.epsilon < Fraction(1, 2 * self.n)):
            raise ValidationError("epsilon", f"need 0 < epsilon < 1/(2n) = 1/{2 * self.n}, got {self.epsilon}")
        if not (ZERO < self.delta < self.epsilon):
            raise ValidationError("delta", f"need 0 < delta < epsilon, got {self.delta}")

    @classmethod
    def practical(cls, n: int) -> "LowerBoundParams":
        """Human-readable magnitudes that keep the phenomenon intact."""
        eps = Fraction(1, 10 * n * n)
        return cls(n, eps, eps * eps)

    @classmethod
    def extreme(cls, n: int) -> "LowerBoundParams":
        """The construction at its original, astronomically small scale."""
        eps = Fraction(1, (100 * n) ** 10)
        return cls(n, eps, eps ** 10)

    def supports(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(
            (Fraction(i, self.n) - self.epsilon, Fraction(i, self.n) + self.epsilon)
            for i in range(1, self.n)
        )

    def enlarged_supports(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple((lo - self.delta, hi + self.delta) for lo, hi in self.supports())

    @property
    def neighbourhoods_disjoint(self) -> bool:
        """True when the enlarged supports are pairwise disjoint and
        interior, so per-support counts add up to a 2n-2 total."""
        return 2 * (self.epsilon + self.delta) < Fraction(1, self.n)


def lower_bound_instance(params: LowerBoundParams) -> Instance:
    """Instance family forcing 2n-2 cuts: agent 0 uniform with demand
    1 - delta, agents 1..n-1 uniform on tiny supports sharing delta."""
    measures = [Measure.uniform()]
    for lo, hi in params.supports():
        measures.append(Measure.uniform_on(lo, hi))
    demands = [ONE - params.delta] + [params.delta / (params.n - 1)] * (params.n - 1)
    return Instance(measures, demands)


def count_support_cuts(params: LowerBoundParams, div: Division) -> list[int]:
    """Cut-or-endpoint positions inside each delta-enlarged support.

    On any division that exactly verifies, every count is at least 2;
    an invalid division can score lower, so the counts certify the
    structural mechanism only alongside a verify pass.
    """
    positions = set(div.canonical().cuts) | {ZERO, ONE}
    return [sum(1 for p in positions if lo <= p <= hi) for lo, hi in params.enlarged_supports()]


def random_instance(n: int, max_segments: int, seed: int) -> Instance:
    """Deterministic random instance: step densities with breakpoints on
    a small grid, demands a random rational composition of 1."""
    if n < 1 or max_segments < 1:
        raise PreconditionError(f"need n >= 1 and max_segments >= 1, got {n}, {max_segments}")
    rng = random.Random(seed)
    measures = [_random_measure(rng, max_segments) for _ in range(n)]
    while True:
        weights = [rng.randint(0, 9) for _ in range(n)]
        if any(weights):
            break
    total = sum(weights)
    demands = [Fraction(w, total) for w in weights]
    return Instance(measures, demands)


def _random_measure(rng: random.Random, max_segments: int) -> Measure:
    segments = rng.randint(1, max_segments)
    denom = rng.choice([8, 12, 16, 20, 24])
    k = min(segments - 1, denom - 1)
    inner = sorted(rng.sample(range(1, denom), k)) if k else []
    bps = [ZERO] + [Fraction(j, denom) for j in inner] + [ONE]
    while True:
        dens = [Fraction(rng.randint(0, 6)) for _ in range(len(bps) - 1)]
        if any(dens):
            break
    total = sum(d * (bps[i + 1] - bps[i]) for i, d in enumerate(dens))
    return Measure(bps, [d / total for d in dens])


@dataclass(frozen=True)
class OracleResult:
    """Outcome of the exhaustive grid search.

    ``best_cuts`` is None when no division over the grid verified within
    the cut budget; that is evidence of infeasibility, not proof.
    """

    grid_size: int
    best_cuts: int | None
    witness: Division | None

    @property
    def feasible(self) -> bool:
        return self.best_cuts is not None

    def to_obj(self) -> dict:
        from .serialize import division_to_obj  # local import avoids a cycle

        return {
            "grid_size": self.grid_size,
            "best_cuts": self.best_cuts if self.feasible else "infeasible-on-grid",
            "evidence_only": not self.feasible,
            "witness": division_to_obj(self.witness) if self.witness is not None else None,
        }


def oracle_min_cuts(
    inst: Instance,
    max_cuts: int,
    grid_refine: int = 1,
    extra_points: Iterable[RationalLike] = (),
    budget: int = 5_000_000,
) -> OracleResult:
    """Minimum cut count over all divisions with cuts on a finite grid.

    The grid holds every measure breakpoint and every agent's quantile
    at every demand (the equality-binding candidates), refined by
    ``grid_refine`` equal subdivisions per cell, plus any caller-supplied
    points.  Ownership patterns with equal adjacent owners are skipped:
    their merged form uses fewer cuts and is enumerated earlier.

    Raises BudgetError up front if the enumeration would exceed
    ``budget`` verification calls; nothing is ever silently truncated.
    """
    if max_cuts < 0:
        raise PreconditionError(f"max_cuts must be nonnegative, got {max_cuts}")
    if grid_refine < 1:
        raise PreconditionError(f"grid_refine must be at least 1, got {grid_refine}")
    grid = _candidate_grid(inst, grid_refine, extra_points)
    interior = [g for g in grid if ZERO < g < ONE]
    n = inst.n

    work = 0
    for c in range(0, max_cuts + 1):
        tuples = _comb(len(interior), c)
        work += tuples * n * max(1, (n - 1) ** c)
    if work > budget:
        raise BudgetError(
            f"oracle enumeration needs about {work} verifications for {len(interior)} grid points, "
            f"max_cuts={max_cuts}, n={n}; budget is {budget}"
        )

    for c in range(0, max_cuts + 1):
        for cuts in combinations(interior, c):
            for owners in _owner_patterns(n, c):
                div = Division(cuts, owners)
                if verify(inst, div).valid:
                    return OracleResult(len(grid), c, div)
    return OracleResult(len(grid), None, None)


def _comb(m: int, k: int) -> int:
    from math import comb

    return comb(m, k)


def _owner_patterns(n: int, cuts: int):
    """All owner tuples of length cuts+1 without equal neighbours."""
    if cuts == 0:
        yield from ((i,) for i in range(n))
        return
    for pattern in product(range(n), repeat=cuts + 1):
        if all(pattern[i] != pattern[i + 1] for i in range(cuts)):
            yield pattern


def _candidate_grid(inst: Instance, refine: int, extra: Iterable[RationalLike]) -> list[Fraction]:
    pts: set[Fraction] = {ZERO, ONE}
    for m in inst.measures:
        pts.update(m.breakpoints)
        for d in inst.demands:
            pts.update((m.quantile(d), m.quantile(ONE - d)))
    for x in extra:
        x = _frac(x, "extra_points")
        if ZERO <= x <= ONE:
            pts.add(x)
    base = sorted(pts)
    if refine > 1:
        for lo, hi in zip(base, base[1:]):
            stepw = (hi - lo) / refine
            pts.update(lo + stepw * j for j in range(1, refine))
    return sorted(pts)
