"""Exact search for balanced two-arc circle partitions.

Question decided here, per instance: do a nonempty proper subset P of
the agents and an arc X on the circle exist with

    min over P of mu_i(X)  =  sum of P's demands, and
    min over Q of mu_j(X^c) =  sum of Q's demands,

where Q is the complement of P and the demands sum to 1?  Two agents
always admit such a partition; from three agents on, existence for every
instance is an open problem, which is exactly why an exact decision
procedure per instance is worth having.

For step densities the search space collapses to finitely many affine
systems.  Write X by endpoints (a, b): on each cell of the grid induced
by all measures' breakpoints every arc mass is affine in (a, b), once
for the plain branch (b >= a, X = [a,b]) and once for the wrapping
branch (b <= a, X = [a,1] u [0,b]).  Since the demands sum to 1, both
defining equalities say the same thing about X:  mu_i*(X) = s_P for the
index attaining the P minimum and mu_j*(X) = s_P for the Q one, with
every other P measure at or above s_P and every other Q measure at or
below.  Enumerating subsets, attaining pairs, cell pairs and branches,
solving each 2x2 system exactly, and checking the inequalities is a
complete decision procedure on this instance class: a search that comes
back empty certifies that no witness exists for the instance, full stop.
Degenerate (rank-deficient) systems are resolved by exact vertex
enumeration of the feasible polygon, taking its lexicographically
smallest point, so ties and zero-density plateaus cannot hide solutions.

Everything is deterministic: enumeration order is subsets by size then
lexicographic, cells row major, plain branch before wrapping, and the
reported work metric counts systems examined rather than wall time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .division import Instance
from .errors import BudgetError, PreconditionError
from .instances import random_instance
from .measure import CircleArc, Measure, merge_breakpoints, ONE, ZERO


@dataclass(frozen=True)
class ConjectureWitness:
    """A balanced two-arc partition, with exact equality residuals.

    ``residuals`` holds min_P mu(X) - sum_P and min_Q mu(X^c) - sum_Q;
    both are zero for any witness this module returns.  ``degenerate``
    flags empty or full-circle arcs, which can only certify subsets
    whose demands sum to 0 or 1.
    """

    p_set: tuple[int, ...]
    q_set: tuple[int, ...]
    arc: CircleArc
    attaining: tuple[int, int]
    residuals: tuple[Fraction, Fraction]
    degenerate: bool

    def to_obj(self) -> dict:
        return {
            "p_set": list(self.p_set),
            "q_set": list(self.q_set),
            "arc": {"start": str(self.arc.start), "length": str(self.arc.length)},
            "attaining": list(self.attaining),
            "residuals": [str(r) for r in self.residuals],
            "degenerate": self.degenerate,
        }


def verify_witness(inst: Instance, witness: ConjectureWitness) -> bool:
    """Exact recheck of both minimum equalities, independent of how the
    witness was found."""
    p_set, q_set = set(witness.p_set), set(witness.q_set)
    if not p_set or not q_set or (p_set | q_set) != set(range(inst.n)) or (p_set & q_set):
        return False
    comp = witness.arc.complement()
    p_masses = {i: inst.measures[i].arc_mass(witness.arc) for i in p_set}
    q_masses = {j: inst.measures[j].arc_mass(comp) for j in q_set}
    s_p = sum((inst.demands[i] for i in p_set), ZERO)
    s_q = sum((inst.demands[j] for j in q_set), ZERO)
    i_star, j_star = witness.attaining
    return (
        min(p_masses.values()) == s_p
        and min(q_masses.values()) == s_q
        and p_masses.get(i_star) == s_p
        and q_masses.get(j_star) == s_q
    )


def search_witness(
    inst: Instance, cell_refine: int = 1, budget: int | None = None
) -> ConjectureWitness | None:
    """First witness in deterministic enumeration order, or None.

    None is a certificate: the affine-per-cell enumeration is exhaustive
    for step densities, so no witness exists for this instance at all,
    making the instance a counterexample to the general two-arc
    partition claim.  Raises BudgetError when more than ``budget``
    systems would be examined.
    """
    if inst.n < 2:
        raise PreconditionError(f"need at least 2 agents, got {inst.n}")
    if inst.demand_sum != ONE:
        raise PreconditionError(f"demands must sum to 1 on the circle, got {inst.demand_sum}")
    if cell_refine < 1:
        raise PreconditionError(f"cell_refine must be at least 1, got {cell_refine}")

    cells = _cells(inst.measures, cell_refine)
    coeffs = [_cell_coefficients(m, cells) for m in inst.measures]
    n = inst.n
    examined = 0

    for size in range(1, n):
        for p_set in combinations(range(n), size):
            q_set = tuple(j for j in range(n) if j not in p_set)
            s_p = sum((inst.demands[i] for i in p_set), ZERO)
            for i_star in p_set:
                for j_star in q_set:
                    for ca in range(len(cells)):
                        for cb in range(len(cells)):
                            for wrap in (False, True):
                                examined += 1
                                if budget is not None and examined > budget:
                                    raise BudgetError(
                                        f"witness search exceeded its budget of {budget} systems"
                                    )
                                point = _solve_cell(
                                    inst, coeffs, cells, p_set, q_set, s_p,
                                    i_star, j_star, ca, cb, wrap,
                                )
                                if point is None:
                                    continue
                                witness = _build_witness(
                                    inst, point, wrap, p_set, q_set, i_star, j_star
                                )
                                assert verify_witness(inst, witness)
                                return witness
    return None


def _cells(measures, refine: int) -> list[tuple[Fraction, Fraction]]:
    grid = list(merge_breakpoints(measures))
    if refine > 1:
        extra = []
        for lo, hi in zip(grid, grid[1:]):
            stepw = (hi - lo) / refine
            extra.extend(lo + stepw * j for j in range(1, refine))
        grid = sorted(set(grid) | set(extra))
    return list(zip(grid, grid[1:]))


def _cell_coefficients(m: Measure, cells) -> list[tuple[Fraction, Fraction]]:
    """Per cell, (slope, intercept) of the CDF: F(theta) = s*theta + c."""
    from bisect import bisect_right

    out = []
    cum = [ZERO]
    for i, d in enumerate(m.densities):
        cum.append(cum[-1] + d * (m.breakpoints[i + 1] - m.breakpoints[i]))
    for lo, hi in cells:
        mid = (lo + hi) / 2
        j = bisect_right(m.breakpoints, mid) - 1
        slope = m.densities[j]
        intercept = cum[j] - slope * m.breakpoints[j]
        out.append((slope, intercept))
    return out


def _mass_form(coeffs_i, ca: int, cb: int, wrap: bool) -> tuple[Fraction, Fraction, Fraction]:
    """mu(X) as (pa, pb, const): pa*a + pb*b + const on the cell pair."""
    sa, ia = coeffs_i[ca]
    sb, ib = coeffs_i[cb]
    if wrap:
        return (-sa, sb, ONE - ia + ib)
    return (-sa, sb, ib - ia)


def _solve_cell(inst, coeffs, cells, p_set, q_set, s_p, i_star, j_star, ca, cb, wrap):
    """Feasible (a, b) for the two equalities plus all side constraints
    within one cell pair and branch, or None.

    Returns the unique solution when the system has full rank, else the
    lexicographically smallest point of the feasible polygon.
    """
    e1 = _mass_form(coeffs[i_star], ca, cb, wrap)
    e2 = _mass_form(coeffs[j_star], ca, cb, wrap)

    # inequalities as (pa, pb, rhs) meaning pa*a + pb*b >= rhs
    a_lo, a_hi = cells[ca]
    b_lo, b_hi = cells[cb]
    ineqs = [
        (ONE, ZERO, a_lo),
        (-ONE, ZERO, -a_hi),
        (ZERO, ONE, b_lo),
        (ZERO, -ONE, -b_hi),
    ]
    ineqs.append((ONE, -ONE, ZERO) if wrap else (-ONE, ONE, ZERO))
    for i in p_set:
        if i != i_star:
            pa, pb, c = _mass_form(coeffs[i], ca, cb, wrap)
            ineqs.append((pa, pb, s_p - c))
    for j in q_set:
        if j != j_star:
            pa, pb, c = _mass_form(coeffs[j], ca, cb, wrap)
            ineqs.append((-pa, -pb, c - s_p))

    det = e1[0] * e2[1] - e2[0] * e1[1]
    if det != ZERO:
        r1, r2 = s_p - e1[2], s_p - e2[2]
        a = (r1 * e2[1] - r2 * e1[1]) / det
        b = (e1[0] * r2 - e2[0] * r1) / det
        if all(pa * a + pb * b >= rhs for pa, pb, rhs in ineqs):
            return (a, b)
        return None

    # rank deficient: fold the equalities into the inequality system and
    # take the lexicographically smallest vertex of the feasible polygon
    for pa, pb, c in (e1, e2):
        ineqs.append((pa, pb, s_p - c))
        ineqs.append((-pa, -pb, c - s_p))
    return _lexmin_vertex(ineqs)


def _lexmin_vertex(ineqs) -> tuple[Fraction, Fraction] | None:
    """Lexicographically smallest vertex of {pa*a + pb*b >= rhs}.

    The system always contains box constraints, so the feasible set is a
    bounded polygon (possibly a segment or point) whose lexmin sits on
    an intersection of two constraint boundaries.
    """
    best = None
    k = len(ineqs)
    for u in range(k):
        pa1, pb1, r1 = ineqs[u]
        for v in range(u + 1, k):
            pa2, pb2, r2 = ineqs[v]
            det = pa1 * pb2 - pa2 * pb1
            if det == ZERO:
                continue
            a = (r1 * pb2 - r2 * pb1) / det
            b = (pa1 * r2 - pa2 * r1) / det
            if all(pa * a + pb * b >= rhs for pa, pb, rhs in ineqs):
                if best is None or (a, b) < best:
                    best = (a, b)
    return best


def _build_witness(inst, point, wrap, p_set, q_set, i_star, j_star) -> ConjectureWitness:
    a, b = point
    if wrap:
        length = ONE - a + b
    else:
        length = b - a
    start = a % ONE  # endpoint 1 is the same circle point as 0
    arc = CircleArc(start, length)
    comp = arc.complement()
    s_p = sum((inst.demands[i] for i in p_set), ZERO)
    s_q = ONE - s_p
    res_p = min(inst.measures[i].arc_mass(arc) for i in p_set) - s_p
    res_q = min(inst.measures[j].arc_mass(comp) for j in q_set) - s_q
    return ConjectureWitness(
        p_set=tuple(p_set),
        q_set=tuple(q_set),
        arc=arc,
        attaining=(i_star, j_star),
        residuals=(res_p, res_q),
        degenerate=length == ZERO or length == ONE,
    )


def stress_campaign(
    n: int,
    count: int,
    seed: int,
    budget: int | None = None,
    max_segments: int = 4,
    cell_refine: int = 1,
) -> list[dict]:
    """Run the witness search over ``count`` random circle instances.

    Returns one record per instance: the outcome (witness,
    certified-none, or budget-exhausted), the witness when found, the
    deterministic work counter, and for certified-none outcomes the full
    instance as a candidate counterexample.  Records are plain JSON-
    ready dicts; identical seeds give identical records.
    """
    from .serialize import instance_to_obj

    if n < 2:
        raise PreconditionError(f"need at least 2 agents, got {n}")
    records = []
    for index in range(count):
        instance_seed = seed * 1_000_003 + index
        inst = random_instance(n, max_segments, seed=instance_seed)
        record = {
            "index": index,
            "n": n,
            "instance_seed": instance_seed,
            "cell_refine": cell_refine,
        }
        try:
            witness = search_witness(inst, cell_refine=cell_refine, budget=budget)
        except BudgetError as exc:
            record["outcome"] = "budget-exhausted"
            record["detail"] = str(exc)
        else:
            if witness is None:
                record["outcome"] = "certified-none"
                record["instance"] = instance_to_obj(inst)
            else:
                record["outcome"] = "witness"
                record["witness"] = witness.to_obj()
        records.append(record)
    return records
