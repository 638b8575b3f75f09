"""Two agents: circle arcs with prescribed masses and 2-cut divisions.

The engine is this fact: for measures mu, mu' on the circle and any
rational share alpha, some arc X has mu(X) = alpha exactly and
mu'(X) >= alpha.  Writing alpha = p/q in lowest terms, the q arcs that
each span p consecutive blocks of the mu-quantile grid cover every
circle point exactly p times, so their mu' masses sum to exactly p and
the best of them reaches the average p/q.  ``circle_lemma`` scans the
candidates in order and returns the first that qualifies, along with
that coverage certificate.

The scan costs O(q) which is fine for hand-sized denominators but not
for the shares produced deep inside the recursive solver, whose
denominators compound at every rescaling.  ``sliding_arc`` finds an arc
with the same guarantee in time independent of q: sweep the arc's start
point s, keeping mu-mass pinned at alpha; the mu' mass g(s) is piecewise
affine in s with average alpha (each circle point is covered by an
alpha-mass set of starts), so on some linearity cell an endpoint value
reaches alpha.  Both constructions are exact and cross-validated in the
test suite.

``solve_pair`` turns the arc into an interval division: cutting the
circle at 0, a two-agent instance is served with at most 2 cuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .division import Division, Instance
from .errors import PreconditionError
from .measure import CircleArc, Measure, RationalLike, ONE, ZERO, _frac

PIGEONHOLE_LIMIT = 64  # largest share denominator the O(q) scan will enumerate inside the solver


@dataclass(frozen=True)
class PigeonholeCertificate:
    """Evidence attached to a circle_lemma answer.

    ``masses`` are the mu' masses of all q candidate arcs; they sum to
    exactly p because each circle point lies in exactly p candidates.
    """

    p: int
    q: int
    masses: tuple[Fraction, ...]
    chosen: int

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "candidate_masses": [str(m) for m in self.masses],
            "chosen_index": self.chosen,
            "coverage_sum": str(sum(self.masses, ZERO)),
        }


def circle_lemma_certified(
    m_eq: Measure, m_ge: Measure, alpha: RationalLike
) -> tuple[CircleArc, PigeonholeCertificate]:
    """Arc X with m_eq(X) = alpha exactly and m_ge(X) >= alpha, plus the
    coverage certificate for all q candidate arcs."""
    alpha = _frac(alpha, "alpha")
    if not (ZERO <= alpha <= ONE):
        raise PreconditionError(f"alpha must lie in [0,1], got {alpha}")
    p, q = alpha.numerator, alpha.denominator

    # quantile grid of m_eq at levels j/q; t_0 = 0
    ts = [m_eq.quantile(Fraction(j, q)) for j in range(q)]

    arcs = []
    for i in range(q):
        start = ts[i]
        j = i + p
        end = ts[j] if j < q else ts[j - q] + ONE
        arcs.append(CircleArc(start, end - start))

    masses = tuple(m_ge.arc_mass(a) for a in arcs)
    assert sum(masses, ZERO) == p, "candidates must cover every point exactly p times"

    for i, (arc, mass) in enumerate(zip(arcs, masses)):
        assert m_eq.arc_mass(arc) == alpha
        if mass >= alpha:
            return arc, PigeonholeCertificate(p, q, masses, i)
    raise AssertionError("pigeonhole guarantees a qualifying arc")  # pragma: no cover


def circle_lemma(m_eq: Measure, m_ge: Measure, alpha: RationalLike) -> CircleArc:
    return circle_lemma_certified(m_eq, m_ge, alpha)[0]


def sliding_arc(m_eq: Measure, m_ge: Measure, alpha: RationalLike) -> CircleArc:
    """Arc with m_eq-mass exactly alpha and m_ge-mass >= alpha, found by
    an exact sweep whose cost does not depend on alpha's denominator."""
    alpha = _frac(alpha, "alpha")
    if not (ZERO <= alpha <= ONE):
        raise PreconditionError(f"alpha must lie in [0,1], got {alpha}")
    if alpha == ZERO:
        return CircleArc(ZERO, ZERO)
    if alpha == ONE:
        return CircleArc(ZERO, ONE)

    # Start candidates: both measures' breakpoints, plus every start
    # whose arc END lands on a breakpoint.  Between consecutive
    # candidates the arc's start and end stay inside fixed density
    # segments, so the m_ge mass is affine there.
    bps = sorted(set(m_eq.breakpoints) | set(m_ge.breakpoints))
    starts: set[Fraction] = set(b for b in bps if b < ONE)
    for b in bps:
        level = m_eq.cdf(b) - alpha
        if level < ZERO:
            level += ONE
        s = m_eq.quantile(level)
        if s < ONE:
            starts.add(s)
    cells = sorted(starts)
    cells.append(ONE)

    best: tuple[Fraction, CircleArc] | None = None
    for lo, hi in zip(cells, cells[1:]):
        for s, arc in _cell_end_arcs(m_eq, alpha, lo, hi):
            mass = m_ge.arc_mass(arc)
            if mass >= alpha:
                assert m_eq.arc_mass(arc) == alpha
                return arc
            if best is None or mass > best[0]:
                best = (mass, arc)
    raise AssertionError(
        "a qualifying arc exists because the m_ge mass averages alpha over starts"
    )  # pragma: no cover


def _cell_end_arcs(m_eq: Measure, alpha: Fraction, lo: Fraction, hi: Fraction):
    """The two arcs the cell's affine branch assigns to its endpoints.

    The branch is reconstructed from the cell midpoint: the arc-end
    moves with slope d_start/d_end, and a zero-density cell keeps the
    end still.  Endpoint arcs may differ from the global minimal-
    quantile choice by a zero-m_eq-mass plateau, which never changes
    the m_eq mass.
    """
    mid = (lo + hi) / 2
    v = m_eq.cdf(mid) + alpha
    wrapped = v > ONE
    end_mid = m_eq.quantile(v - ONE if wrapped else v)
    d_start = _density_at(m_eq, mid)
    d_end = _density_at(m_eq, end_mid)
    slope = d_start / d_end if d_end != ZERO else ZERO

    for s in (lo, hi):
        if s == ONE:
            continue
        e = end_mid + slope * (s - mid)
        if wrapped:
            length = ONE - s + e
        else:
            length = e - s
        if ZERO <= length <= ONE:
            yield s, CircleArc(s, length)


def _density_at(m: Measure, theta: Fraction) -> Fraction:
    """Density of the segment containing theta (right-continuous; the
    final segment extends through 1)."""
    from bisect import bisect_right

    j = bisect_right(m.breakpoints, theta) - 1
    if j >= len(m.densities):
        j = len(m.densities) - 1
    return m.densities[j]


def prescribed_arc(m_eq: Measure, m_ge: Measure, alpha: RationalLike, enumeration_limit: int = PIGEONHOLE_LIMIT) -> CircleArc:
    """Dispatch: enumerate the pigeonhole candidates for small
    denominators, sweep otherwise.  Same guarantee either way."""
    alpha = _frac(alpha, "alpha")
    if alpha.denominator <= enumeration_limit:
        return circle_lemma(m_eq, m_ge, alpha)
    return sliding_arc(m_eq, m_ge, alpha)


def solve_pair(inst: Instance, enumeration_limit: int = PIGEONHOLE_LIMIT) -> Division:
    """Divide [0,1] between two agents with at most 2 cuts.

    Take X on the circle with mu_2(X) = 1 - alpha_2 exactly and
    mu_1(X) >= 1 - alpha_2 >= alpha_1; give agent 0 the part of X read
    on the interval (cutting the circle at 0) and agent 1 the rest.
    Agent 1 nets mu_2 mass exactly alpha_2, agent 0 at least alpha_1.
    """
    if inst.n != 2:
        raise PreconditionError(f"solve_pair needs exactly 2 agents, got {inst.n}")
    m1, m2 = inst.measures
    a2 = inst.demands[1]
    arc = prescribed_arc(m2, m1, ONE - a2, enumeration_limit)
    return _arc_to_division(arc).canonical()


def _arc_to_division(arc: CircleArc) -> Division:
    """Cut the circle at 0: agent 0 owns the arc, agent 1 its complement."""
    boundary = {arc.start, (arc.start + arc.length) % ONE}
    cuts = sorted(c for c in boundary if ZERO < c < ONE)
    bounds = [ZERO] + cuts + [ONE]
    owners = []
    for piece_lo, piece_hi in zip(bounds, bounds[1:]):
        midpoint = (piece_lo + piece_hi) / 2
        owners.append(0 if arc.contains(midpoint) else 1)
    return Division(cuts, owners)
