"""Classical division procedures, used as baselines and test oracles.

``sliding_knife_equal`` is the textbook procedure for equal demands:
sweep a knife from 0 and stop at the first point where some remaining
agent has accumulated mass 1/n; that agent takes the piece and the sweep
continues with the rest.  It yields exactly n-1 cuts.

``common_denominator`` reduces rational unequal demands p_i/D to the
equal case by running the sweep with D virtual agents (agent i fielding
p_i copies of its measure) and merging adjacent pieces with the same
real owner, for at most D-1 cuts.

The sweep stopping rule is unsound for unequal demands: an agent with a
tiny demand concentrated early in the interval grabs a piece long before
heavier agents are served, and the leftovers cannot cover a demand close
to 1.  ``sliding_knife_equal`` therefore refuses unequal demands; the
unchecked rule is kept private for regression tests demonstrating the
failure.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .division import Division, Instance
from .errors import PreconditionError
from .measure import Measure, ONE, ZERO


def _threshold_sweep(measures: Sequence[Measure], thresholds: Sequence[Fraction]) -> Division:
    """One knife sweep: first virtual agent to reach its threshold wins.

    Ties break to the lowest index.  An agent whose threshold exceeds
    its remaining mass can never stop the knife; if nobody can, the
    lowest-index remaining agent takes the leftover piece.
    """
    remaining = list(range(len(measures)))
    prev = ZERO
    cuts: list[Fraction] = []
    owners: list[int] = []

    while remaining:
        if len(remaining) == 1:
            owners.append(remaining[0])  # last agent takes [prev, 1]
            break
        best = None
        for i in remaining:
            target = measures[i].cdf(prev) + thresholds[i]
            if target > ONE:
                continue
            stop = measures[i].quantile(target)
            if stop < prev:
                stop = prev  # zero threshold resolved on a plateau
            if best is None or stop < best[0]:
                best = (stop, i)
        if best is None:
            # nobody can reach a threshold; leftover to the lowest index
            owners.append(remaining[0])
            break
        stop, winner = best
        remaining.remove(winner)
        if stop == prev:
            continue  # empty piece: the winner owns nothing
        if stop == ONE:
            owners.append(winner)  # the rest of the cake; others get nothing
            break
        cuts.append(stop)
        owners.append(winner)
        prev = stop
    return Division(cuts, owners)


def sliding_knife_equal(inst: Instance) -> Division:
    """Fair division for equal demands 1/n with exactly n-1 cuts."""
    n = inst.n
    share = Fraction(1, n)
    if any(d != share for d in inst.demands):
        raise PreconditionError(
            f"sliding knife requires all demands equal to 1/{n}; "
            "the stopping rule is unsound for unequal demands"
        )
    div = _threshold_sweep(inst.measures, inst.demands).canonical()
    assert div.cut_count == n - 1, "equal-demand sweep must produce exactly n-1 cuts"
    return div


def _sliding_knife_any_demands(inst: Instance) -> Division:
    """The sweep run verbatim with unequal thresholds.  Unsound: kept
    only so tests and demos can exhibit the failure that motivates the
    equality precondition above."""
    return _threshold_sweep(inst.measures, inst.demands).canonical()


def common_denominator(inst: Instance) -> Division:
    """Unequal rational demands via the equal-demand sweep on D virtual agents.

    D is the least common denominator of the demands; agent i fields
    p_i = demand_i * D copies, interleaved round-robin so consecutive
    virtual winners tend to be distinct real agents.  Merging adjacent
    pieces of one real owner can only lower the count below D-1.
    """
    inst.require_unit_demands()
    denoms = [d.denominator for d in inst.demands]
    D = lcm(*denoms)
    counts = [int(d * D) for d in inst.demands]
    order: list[int] = []
    pending = list(counts)
    while any(pending):
        for i in range(inst.n):
            if pending[i] > 0:
                order.append(i)
                pending[i] -= 1
    virtual_measures = [inst.measures[i] for i in order]
    share = Fraction(1, D)
    virtual = _threshold_sweep(virtual_measures, [share] * D)
    real_owners = [order[v] for v in virtual.owners]
    return Division(virtual.cuts, real_owners).canonical()
