"""Recursive division of [0,1] with at most 3n-4 cuts for n agents.

The driver is a knife sweep: for a point theta let the crossed set hold
every agent whose mass on [0,theta] exceeds 1/2, plus, to break ties
deterministically, agents sitting exactly at 1/2 up to an index k.  Take
the minimal x (then minimal tie index t) where the crossed set's demand
reaches 1/2.  Minimality pins the witness agent t at mass exactly 1/2
and splits the others into P (at or above 1/2 at x) and Q (at or below),
with both demand sums at most 1/2.  One case analysis then reduces the
problem to strictly smaller subproblems:

  PQ_SPLIT       P and Q nonempty: cut at x; t joins both sides, with
                 its demand split as 1/2 minus each side's sum.
  HALF_ASSIGN    one side empty and t's demand at most 1/2: t takes
                 [0,x] (mass exactly 1/2) and the rest recurse opposite.
  T_ASSIGN_AT_Y  t's demand exceeds 1/2; at the minimal y where t's mass
                 reaches its demand nobody else is that far along: t
                 takes [0,y], the rest recurse on (y,1].
  UV_SPLIT       at y, agents split into U (mass >= t's demand) and V
                 (below): cut at y, t joins both sides.
  Z_SPLIT        everyone is in U: at the last point z where some s in U
                 ties t's running mass (value beta >= 1/2), cut at z;
                 left serves U minus s plus t, right is the pair {s,t}.

Each subproblem is rescaled to a fresh instance on [0,1] (affine
reparametrisation; measure renormalised by its interval mass; demand
divided by that mass); subproblem demand sums stay at most 1, and the
cut counts obey c(m) <= 1 + c(k) + c(m+1-k), which telescopes from the
base cases c(1) = 0 and c(2) <= 2 to 3m-4.

Two departures from the plain story, both recorded in the trace:

* Mirroring.  When Q is empty the analysis runs on the instance
  reflected by theta -> 1-theta, at the reflected sweep point 1-x.  The
  sweep is NOT rerun after reflecting: the reflected instance can have a
  different minimal x whose case mirrors again, which would oscillate.
  Reflection at the original x is loop free and exactly invertible.

* Demand slack.  Subproblem demand sums may drop below 1.  The case
  thresholds keep the absolute constant 1/2 and remain sound while the
  sum is at least 1/2, but below that no sweep point exists (even at
  theta = 1 the crossed demand cannot reach 1/2).  Such nodes divide all
  demands by their sum first, which only raises demands, restores sum 1
  exactly, and keeps every witness exact.

Every recursion level is logged as a CaseStep holding the fired case,
its witnesses, and child descriptors; ``check_trace`` replays a trace
against the original instance and re-verifies all invariants and the
cut accounting, returning the path to the first violated node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .division import Division, Instance, cut_count_bound, verify
from .errors import PreconditionError
from .measure import Measure, crossings, HALF, ONE, ZERO
from .pair import solve_pair

CASE_PQ_SPLIT = "PQ_SPLIT"
CASE_HALF_ASSIGN = "HALF_ASSIGN"
CASE_T_ASSIGN_AT_Y = "T_ASSIGN_AT_Y"
CASE_UV_SPLIT = "UV_SPLIT"
CASE_Z_SPLIT = "Z_SPLIT"
CASE_BASE_PAIR = "BASE_PAIR"
CASE_BASE_SINGLE = "BASE_SINGLE"


@dataclass(frozen=True)
class Frame:
    """Affine chart mapping a node's local [0,1] into original
    coordinates; ``flipped`` reverses orientation."""

    lo: Fraction
    hi: Fraction
    flipped: bool = False

    def to_original(self, u: Fraction) -> Fraction:
        if self.flipped:
            return self.hi - u * (self.hi - self.lo)
        return self.lo + u * (self.hi - self.lo)

    def sub(self, a: Fraction, b: Fraction) -> "Frame":
        """Chart of the child occupying local [a,b] of this frame."""
        p, q = self.to_original(a), self.to_original(b)
        if self.flipped:
            return Frame(q, p, True)
        return Frame(p, q, False)

    def mirror(self) -> "Frame":
        return Frame(self.lo, self.hi, not self.flipped)


@dataclass(frozen=True)
class SweepResult:
    """Outcome of the minimal knife sweep on an instance.

    Indices are instance positions.  ``x`` is minimal with the crossed
    demand at least 1/2, ``t`` the minimal tie index there; t's mass on
    [0,x] is exactly 1/2, P sits at or above 1/2, Q at or below.
    """

    x: Fraction
    t: int
    s_set: tuple[int, ...]
    p_set: tuple[int, ...]
    q_set: tuple[int, ...]


def find_sweep(inst: Instance) -> SweepResult:
    """Minimal sweep point and tie-break agent, computed exactly.

    The crossed demand only changes at the finitely many minimal
    half-mass points, so scanning those in (point, index) order is an
    exhaustive search over all candidate sweep positions.
    """
    if inst.n < 2:
        raise PreconditionError(f"sweep needs at least 2 agents, got {inst.n}")
    total = inst.demand_sum
    if total < HALF:
        raise PreconditionError(
            f"sweep threshold 1/2 is unreachable: demands sum to {total}"
        )
    half_points = sorted(
        (m.quantile(HALF), i) for i, m in enumerate(inst.measures)
    )
    running = ZERO
    x = None
    for point, i in half_points:
        running += inst.demands[i]
        if running >= HALF:
            x = point
            break
    assert x is not None  # running reaches total >= 1/2

    at_x = [m.cdf(x) for m in inst.measures]
    strict = [i for i, v in enumerate(at_x) if v > HALF]
    level = [i for i, v in enumerate(at_x) if v == HALF]
    strict_sum = sum((inst.demands[i] for i in strict), ZERO)
    assert strict_sum < HALF, "a smaller sweep point would already qualify"

    running, t = strict_sum, None
    for i in level:
        running += inst.demands[i]
        if running >= HALF:
            t = i
            break
    assert t is not None, "the crossed demand reaches 1/2 at x"

    s_set = tuple(sorted(strict + [i for i in level if i <= t]))
    p_set = tuple(i for i in s_set if i != t)
    q_set = tuple(i for i in range(inst.n) if i not in s_set)
    assert sum((inst.demands[i] for i in p_set), ZERO) < HALF
    assert sum((inst.demands[i] for i in q_set), ZERO) <= HALF
    return SweepResult(x=x, t=t, s_set=s_set, p_set=p_set, q_set=q_set)


@dataclass
class ChildSpec:
    """A subproblem as posed inside its parent: the local subinterval,
    the original agent ids sent there, and their unnormalised demands
    measured in the parent's chart."""

    a: Fraction
    b: Fraction
    agents: tuple[int, ...]
    demands: tuple[Fraction, ...]


@dataclass
class CaseStep:
    """One recursion level: which case fired, with all witnesses.

    Witness coordinates live in the node's chart (``lo``, ``hi``,
    ``flipped``); for mirrored nodes the chart already includes the
    reflection.  Agent references are original instance ids.
    """

    case: str
    agents: tuple[int, ...]
    demands: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction
    flipped: bool
    stripped: tuple[int, ...] = ()
    demand_scale: Fraction = ONE
    mirrored: bool = False
    cut_count: int = 0
    x: Fraction | None = None
    t: int | None = None
    p_set: tuple[int, ...] | None = None
    q_set: tuple[int, ...] | None = None
    alpha_left: Fraction | None = None
    alpha_right: Fraction | None = None
    y: Fraction | None = None
    u_set: tuple[int, ...] | None = None
    v_set: tuple[int, ...] | None = None
    z: Fraction | None = None
    s: int | None = None
    beta: Fraction | None = None
    child_specs: list[ChildSpec] = field(default_factory=list)
    children: list["CaseStep"] = field(default_factory=list)

    def to_obj(self) -> dict:
        from .serialize import format_rational as fr

        def opt(v):
            return None if v is None else fr(v)

        return {
            "case": self.case,
            "agents": list(self.agents),
            "demands": [fr(d) for d in self.demands],
            "frame": {"lo": fr(self.lo), "hi": fr(self.hi), "flipped": self.flipped},
            "stripped": list(self.stripped),
            "demand_scale": fr(self.demand_scale),
            "mirrored": self.mirrored,
            "cut_count": self.cut_count,
            "witnesses": {
                "x": opt(self.x),
                "t": self.t,
                "p_set": list(self.p_set) if self.p_set is not None else None,
                "q_set": list(self.q_set) if self.q_set is not None else None,
                "alpha_left": opt(self.alpha_left),
                "alpha_right": opt(self.alpha_right),
                "y": opt(self.y),
                "u_set": list(self.u_set) if self.u_set is not None else None,
                "v_set": list(self.v_set) if self.v_set is not None else None,
                "z": opt(self.z),
                "s": self.s,
                "beta": opt(self.beta),
            },
            "child_specs": [
                {
                    "interval": [fr(c.a), fr(c.b)],
                    "agents": list(c.agents),
                    "demands": [fr(d) for d in c.demands],
                }
                for c in self.child_specs
            ],
            "children": [c.to_obj() for c in self.children],
        }


@dataclass
class Trace:
    """Tree of CaseStep records, one per recursion level."""

    root: CaseStep

    @property
    def cut_count(self) -> int:
        return self.root.cut_count

    def max_depth(self) -> int:
        def depth(node):
            return 1 + max((depth(c) for c in node.children), default=0)

        return depth(self.root)

    def to_obj(self) -> dict:
        return {"trace": self.root.to_obj()}


def solve(inst: Instance) -> tuple[Division, Trace]:
    """Disproportionate division with at most ``cut_count_bound(n)`` cuts.

    Exact, deterministic, and self-checking: the returned division is
    re-verified against the instance before returning.
    """
    division, root = _solve(inst, Frame(ZERO, ONE, False), tuple(range(inst.n)))
    division = division.canonical()
    report = verify(inst, division)
    assert report.valid, "internal error: produced an invalid division"
    assert division.cut_count <= cut_count_bound(inst.n)
    return division, Trace(root)


def _solve(inst: Instance, frame: Frame, ids: tuple[int, ...]) -> tuple[Division, CaseStep]:
    # (0) zero-demand agents own nothing and drop out immediately
    active = [k for k in range(inst.n) if inst.demands[k] > ZERO]
    stripped = tuple(ids[k] for k in range(inst.n) if inst.demands[k] == ZERO)
    if len(active) < inst.n:
        if not active:
            node = CaseStep(
                case=CASE_BASE_SINGLE,
                agents=(ids[0],),
                demands=(ZERO,),
                lo=frame.lo,
                hi=frame.hi,
                flipped=frame.flipped,
                stripped=tuple(i for i in ids if i != ids[0]),
            )
            return Division((), (ids[0],)), node
        inst = Instance([inst.measures[k] for k in active], [inst.demands[k] for k in active])
        ids = tuple(ids[k] for k in active)

    # demand slack below 1/2 would starve the sweep; rescale to sum 1
    scale = ONE
    total = inst.demand_sum
    if total < HALF:
        scale = ONE / total
        inst = Instance(inst.measures, [d * scale for d in inst.demands])

    node = CaseStep(
        case="",
        agents=ids,
        demands=inst.demands,
        lo=frame.lo,
        hi=frame.hi,
        flipped=frame.flipped,
        stripped=stripped,
        demand_scale=scale,
    )

    if inst.n == 1:
        node.case = CASE_BASE_SINGLE
        return Division((), (ids[0],)), node

    if inst.n == 2:
        node.case = CASE_BASE_PAIR
        local = solve_pair(inst)
        division = Division(local.cuts, tuple(ids[o] for o in local.owners)).canonical()
        node.cut_count = division.cut_count
        return division, node

    sweep = find_sweep(inst)
    node.x = sweep.x
    node.t = ids[sweep.t]
    node.p_set = tuple(ids[k] for k in sweep.p_set)
    node.q_set = tuple(ids[k] for k in sweep.q_set)

    if sweep.p_set and sweep.q_set:
        division = _split_pq(inst, frame, ids, sweep, node)
    else:
        # one side empty; reflect so that the empty side is always P
        if sweep.q_set:
            work_inst, work_frame, x = inst, frame, sweep.x
        else:
            node.mirrored = True
            work_inst = Instance([m.reflected() for m in inst.measures], inst.demands)
            work_frame = frame.mirror()
            x = ONE - sweep.x
            node.x = x
            node.lo, node.hi, node.flipped = work_frame.lo, work_frame.hi, work_frame.flipped
            node.p_set, node.q_set = node.q_set, node.p_set  # roles swap in the reflected chart
        division = _split_heavy(work_inst, work_frame, ids, x, sweep.t, node)
        if node.mirrored:
            division = _reflect_division(division)
    division = division.canonical()
    node.cut_count = division.cut_count
    return division, node


def _split_pq(inst, frame, ids, sweep, node) -> Division:
    """Cut at x; t participates on both sides."""
    node.case = CASE_PQ_SPLIT
    x, t = sweep.x, sweep.t
    sum_p = sum((inst.demands[k] for k in sweep.p_set), ZERO)
    sum_q = sum((inst.demands[k] for k in sweep.q_set), ZERO)
    alpha_left = HALF - sum_p
    alpha_right = HALF - sum_q
    assert alpha_left >= ZERO and alpha_right >= ZERO
    # with demand slack, t ends up oversupplied by exactly the slack
    assert alpha_left + alpha_right == inst.demands[t] + (ONE - inst.demand_sum)
    node.alpha_left, node.alpha_right = alpha_left, alpha_right

    left_members = tuple(sorted(sweep.p_set + (t,)))
    right_members = tuple(sorted(sweep.q_set + (t,)))
    left_dem = tuple(alpha_left if k == t else inst.demands[k] for k in left_members)
    right_dem = tuple(alpha_right if k == t else inst.demands[k] for k in right_members)

    left_div, left_node = _child(inst, frame, ids, ZERO, x, left_members, left_dem, node)
    right_div, right_node = _child(inst, frame, ids, x, ONE, right_members, right_dem, node)
    node.children = [left_node, right_node]
    return _join(left_div, x, right_div)


def _split_heavy(inst, frame, ids, x, t, node) -> Division:
    """Cases with all agents except t at or below half mass at x."""
    alpha_t = inst.demands[t]
    m_t = inst.measures[t]
    assert m_t.cdf(x) == HALF
    others = [k for k in range(inst.n) if k != t]
    assert all(inst.measures[k].cdf(x) <= HALF for k in others)

    if alpha_t <= HALF:
        # [0,x] has t-mass exactly 1/2 >= its demand; strictly below 1/2
        # happens only for slack demand sums, where Q was empty
        node.case = CASE_HALF_ASSIGN
        members = tuple(others)
        dems = tuple(inst.demands[k] for k in members)
        rest_div, rest_node = _child(inst, frame, ids, x, ONE, members, dems, node)
        node.children = [rest_node]
        return _join(Division((), (ids[t],)), x, rest_div)

    y = m_t.quantile(alpha_t)
    assert x < y < ONE
    node.y = y
    u_set = tuple(k for k in others if inst.measures[k].cdf(y) >= alpha_t)
    v_set = tuple(k for k in others if inst.measures[k].cdf(y) < alpha_t)
    node.u_set = tuple(ids[k] for k in u_set)
    node.v_set = tuple(ids[k] for k in v_set)

    if not u_set:
        node.case = CASE_T_ASSIGN_AT_Y
        dems = tuple(inst.demands[k] for k in v_set)
        rest_div, rest_node = _child(inst, frame, ids, y, ONE, v_set, dems, node)
        node.children = [rest_node]
        return _join(Division((), (ids[t],)), y, rest_div)

    if v_set:
        node.case = CASE_UV_SPLIT
        sum_u = sum((inst.demands[k] for k in u_set), ZERO)
        sum_v = sum((inst.demands[k] for k in v_set), ZERO)
        t_left = alpha_t - sum_u
        t_right = ONE - alpha_t - sum_v
        assert t_left >= ZERO and t_right >= ZERO
        node.alpha_left, node.alpha_right = t_left, t_right
        left_members = tuple(sorted(u_set + (t,)))
        right_members = tuple(sorted(v_set + (t,)))
        left_dem = tuple(t_left if k == t else inst.demands[k] for k in left_members)
        right_dem = tuple(t_right if k == t else inst.demands[k] for k in right_members)
        left_div, left_node = _child(inst, frame, ids, ZERO, y, left_members, left_dem, node)
        right_div, right_node = _child(inst, frame, ids, y, ONE, right_members, right_dem, node)
        node.children = [left_node, right_node]
        return _join(left_div, y, right_div)

    # V empty: every other agent overtakes t somewhere in [x,y]
    node.case = CASE_Z_SPLIT
    z, s = None, None
    for k in u_set:
        hit = crossings(inst.measures[k], m_t, x, y).rightmost()
        assert hit is not None, "each U member meets t's CDF within [x,y]"
        if z is None or hit > z or (hit == z and k < s):
            z, s = hit, k
    beta = m_t.cdf(z)
    assert inst.measures[s].cdf(z) == beta
    assert beta >= HALF
    assert all(inst.measures[k].cdf(z) >= beta for k in u_set)
    node.z, node.s, node.beta = z, ids[s], beta

    u_rest = tuple(k for k in u_set if k != s)
    t_left = beta - sum((inst.demands[k] for k in u_rest), ZERO)
    t_right = ONE - inst.demands[s] - beta
    assert t_left >= ZERO and t_right >= ZERO
    node.alpha_left, node.alpha_right = t_left, t_right

    left_members = tuple(sorted(u_rest + (t,)))
    left_dem = tuple(t_left if k == t else inst.demands[k] for k in left_members)
    right_members = tuple(sorted((s, t)))
    right_dem = tuple(t_right if k == t else inst.demands[k] for k in right_members)
    left_div, left_node = _child(inst, frame, ids, ZERO, z, left_members, left_dem, node)
    right_div, right_node = _child(inst, frame, ids, z, ONE, right_members, right_dem, node)
    node.children = [left_node, right_node]
    return _join(left_div, z, right_div)


def _child(inst, frame, ids, a, b, members, demands, parent_node) -> tuple[Division, CaseStep]:
    """Pose and solve one subproblem; returns its division embedded into
    the parent's chart."""
    parent_node.child_specs.append(
        ChildSpec(a=a, b=b, agents=tuple(ids[k] for k in members), demands=tuple(demands))
    )
    measures, norm = [], []
    for k, d in zip(members, demands):
        mass = inst.measures[k].interval_mass(a, b)
        assert mass > ZERO, "case invariants guarantee positive mass on the child interval"
        assert d <= mass, "case invariants guarantee individually feasible demands"
        measures.append(inst.measures[k].restricted(a, b))
        norm.append(d / mass)
    child = Instance(measures, norm)
    div, child_node = _solve(child, frame.sub(a, b), tuple(ids[k] for k in members))
    width = b - a
    embedded = Division(tuple(a + c * width for c in div.cuts), div.owners)
    return embedded, child_node


def _join(left: Division, cut: Fraction, right: Division) -> Division:
    """Concatenate two divisions of [0,cut] and [cut,1]."""
    cuts = left.cuts + (cut,) + tuple(right.cuts)
    return Division(cuts, left.owners + right.owners)


def _reflect_division(div: Division) -> Division:
    cuts = tuple(ONE - c for c in reversed(div.cuts))
    return Division(cuts, tuple(reversed(div.owners)))


# ---------------------------------------------------------------------------
# trace replay


@dataclass(frozen=True)
class TraceCheck:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_trace(inst: Instance, trace: Trace) -> TraceCheck:
    """Replay a trace against the instance it claims to solve.

    Every node's invariants are recomputed exactly from the original
    measures (half-mass conditions, membership of P, Q, U, V, demand
    formulas and nonnegativity, beta at least 1/2, maximality of z,
    child demand sums within capacity) together with the recursive cut
    accounting c(m) <= 1 + c(k) + c(m+1-k) <= 3m-4.  Returns the path
    to the first violated node, root = ().
    """
    try:
        covered = set(trace.root.agents) | set(trace.root.stripped)
        if covered != set(range(inst.n)):
            _fail((), f"root covers agents {sorted(covered)}, expected 0..{inst.n - 1}")
        _check_node(inst, trace.root, (), Frame(ZERO, ONE, False))
    except _TraceViolation as v:
        return TraceCheck(False, v.path, v.reason)
    return TraceCheck(True)


class _TraceViolation(Exception):
    def __init__(self, path, reason):
        self.path, self.reason = path, reason
        super().__init__(f"{reason} at node {'/'.join(map(str, path)) or 'root'}")


def _fail(path, reason):
    raise _TraceViolation(path, reason)


class _NodeView:
    """Exact CDF queries for one trace node's chart."""

    def __init__(self, inst: Instance, node: CaseStep, path):
        self.node = node
        self.frame = Frame(node.lo, node.hi, node.flipped)
        if not node.agents:
            _fail(path, "node lists no agents")
        if node.lo >= node.hi:
            _fail(path, "empty chart interval")
        self.measures = {}
        self.mass = {}
        for a in node.agents:
            if not 0 <= a < inst.n:
                _fail(path, f"unknown agent id {a}")
            m = inst.measures[a]
            lo_mass, hi_mass = m.cdf(node.lo), m.cdf(node.hi)
            if hi_mass == lo_mass:
                _fail(path, f"agent {a} has zero mass on the node interval")
            self.mass[a] = hi_mass - lo_mass
            self.measures[a] = m
        self.demands = dict(zip(node.agents, node.demands))

    def cdf(self, agent: int, u: Fraction) -> Fraction:
        m = self.measures[agent]
        theta = self.frame.to_original(u)
        if self.node.flipped:
            return (m.cdf(self.node.hi) - m.cdf(theta)) / self.mass[agent]
        return (m.cdf(theta) - m.cdf(self.node.lo)) / self.mass[agent]

    def local_measure(self, agent: int) -> Measure:
        m = self.measures[agent].restricted(self.node.lo, self.node.hi)
        return m.reflected() if self.node.flipped else m

    def span_mass(self, agent: int, a: Fraction, b: Fraction) -> Fraction:
        return self.cdf(agent, b) - self.cdf(agent, a)


def _check_node(inst: Instance, node: CaseStep, path, expected_frame: Frame):
    frame = Frame(node.lo, node.hi, node.flipped)
    allowed = (expected_frame, expected_frame.mirror()) if node.mirrored else (expected_frame,)
    if frame not in allowed:
        _fail(path, f"chart {frame} does not match parent placement {expected_frame}")
    if node.mirrored and frame == expected_frame:
        _fail(path, "mirrored flag set but chart is not reflected")

    view = _NodeView(inst, node, path)
    demands = view.demands
    total = sum(node.demands, ZERO)
    if any(d < ZERO for d in node.demands):
        _fail(path, "negative demand")
    if total > ONE:
        _fail(path, f"demand sum {total} exceeds capacity")
    if node.demand_scale != ONE:
        if node.demand_scale < ONE or total != ONE:
            _fail(path, "demand rescaling must raise the sum to exactly 1")
        if ONE / node.demand_scale >= HALF:
            _fail(path, "demand rescaling applied although the sweep threshold was reachable")

    n_active = len(node.agents)
    bound = cut_count_bound(max(n_active, 1))
    if node.cut_count > bound:
        _fail(path, f"cut count {node.cut_count} exceeds bound {bound} for {n_active} agents")

    checker = _CASE_CHECKS.get(node.case)
    if checker is None:
        _fail(path, f"unknown case {node.case!r}")
    checker(view, node, path)

    _check_children(inst, view, node, path)


def _check_children(inst, view, node, path):
    if len(node.children) != len(node.child_specs):
        _fail(path, "children and child descriptors disagree")
    child_cuts = 0
    frame = view.frame
    for idx, (spec, child) in enumerate(zip(node.child_specs, node.children)):
        if not (ZERO <= spec.a < spec.b <= ONE):
            _fail(path, f"child {idx} interval [{spec.a},{spec.b}] is not a subinterval")
        if tuple(sorted(spec.agents)) != tuple(sorted(child.agents + child.stripped)):
            _fail(path, f"child {idx} agents do not match its descriptor")
        spec_demand = dict(zip(spec.agents, spec.demands))
        child_sum = ZERO
        for a in spec.agents:
            if a not in view.demands:
                _fail(path, f"child {idx} references agent {a} absent from this node")
            d = spec_demand[a]
            if d < ZERO:
                _fail(path, f"child {idx} demand for agent {a} is negative")
            w = view.span_mass(a, spec.a, spec.b)
            if w <= ZERO:
                if d > ZERO:
                    _fail(path, f"child {idx} gives agent {a} demand {d} but zero mass")
                continue
            if d > w:
                _fail(path, f"child {idx} demand {d} for agent {a} exceeds its mass {w}")
            child_sum += d / w
        if child_sum > ONE:
            _fail(path, f"child {idx} normalised demand sum {child_sum} exceeds 1")
        for a in child.stripped:
            if spec_demand.get(a, ZERO) != ZERO:
                _fail(path, f"child {idx} stripped agent {a} had nonzero demand")
        for a in child.agents:
            d = spec_demand[a]
            w = view.span_mass(a, spec.a, spec.b)
            expected = (d / w) * child.demand_scale
            got = dict(zip(child.agents, child.demands))[a]
            if got != expected:
                _fail(path, f"child {idx} demand for agent {a} is {got}, expected {expected}")
        _check_node(inst, child, path + (idx,), frame.sub(spec.a, spec.b))
        child_cuts += child.cut_count

    if node.case in (CASE_PQ_SPLIT, CASE_UV_SPLIT, CASE_Z_SPLIT, CASE_HALF_ASSIGN, CASE_T_ASSIGN_AT_Y):
        if node.cut_count > 1 + child_cuts:
            _fail(path, f"cut count {node.cut_count} exceeds 1 + children {child_cuts}")
        sizes = [max(len(c.agents) + len(c.stripped), 1) for c in node.children]
        m = len(node.agents)
        if node.case in (CASE_PQ_SPLIT, CASE_UV_SPLIT, CASE_Z_SPLIT):
            k, other = sizes
            if k + other != m + 1:
                _fail(path, f"split children sizes {sizes} do not sum to {m + 1}")
            if 1 + cut_count_bound(max(k, 1)) + cut_count_bound(max(other, 1)) > cut_count_bound(m):
                _fail(path, "recursive cut budget exceeds the bound")
        else:
            if sizes[0] != m - 1:
                _fail(path, f"assignment child has {sizes[0]} agents, expected {m - 1}")


def _require(cond, path, reason):
    if not cond:
        _fail(path, reason)


def _check_base_single(view, node, path):
    _require(len(node.agents) == 1, path, "single base case must hold one agent")
    _require(not node.children, path, "base case cannot have children")
    _require(node.cut_count == 0, path, "single base case uses no cuts")


def _check_base_pair(view, node, path):
    _require(len(node.agents) == 2, path, "pair base case must hold two agents")
    _require(not node.children, path, "base case cannot have children")
    _require(node.cut_count <= 2, path, "pair base case uses at most 2 cuts")


def _sweep_conditions(view, node, path):
    _require(node.x is not None and node.t is not None, path, "missing sweep witnesses")
    _require(ZERO < node.x < ONE, path, "sweep point must be interior")
    _require(node.t in view.demands, path, "witness agent is not at this node")
    _require(view.cdf(node.t, node.x) == HALF, path, "witness agent mass at x is not exactly 1/2")


def _check_pq(view, node, path):
    _sweep_conditions(view, node, path)
    p_set, q_set = node.p_set or (), node.q_set or ()
    _require(p_set and q_set, path, "PQ split needs both sides nonempty")
    members = tuple(sorted(p_set + q_set + (node.t,)))
    _require(members == node.agents, path, "P, Q, t must partition the node agents")
    for a in p_set:
        _require(view.cdf(a, node.x) >= HALF, path, f"agent {a} in P is below 1/2 at x")
    for a in q_set:
        _require(view.cdf(a, node.x) <= HALF, path, f"agent {a} in Q is above 1/2 at x")
    sum_p = sum((view.demands[a] for a in p_set), ZERO)
    sum_q = sum((view.demands[a] for a in q_set), ZERO)
    _require(sum_p <= HALF and sum_q <= HALF, path, "P or Q demand sum exceeds 1/2")
    _require(sum_p + view.demands[node.t] >= HALF, path, "crossed set demand below 1/2")
    _require(node.alpha_left == HALF - sum_p, path, "left split demand is not 1/2 - sum(P)")
    _require(node.alpha_right == HALF - sum_q, path, "right split demand is not 1/2 - sum(Q)")
    total = sum(node.demands, ZERO)
    _require(
        node.alpha_left + node.alpha_right == view.demands[node.t] + (ONE - total),
        path,
        "split demands do not reassemble t's demand plus slack",
    )
    specs = node.child_specs
    _require(len(specs) == 2, path, "PQ split must pose two children")
    _require((specs[0].a, specs[0].b) == (ZERO, node.x), path, "left child interval must be [0,x]")
    _require((specs[1].a, specs[1].b) == (node.x, ONE), path, "right child interval must be (x,1]")
    _require(specs[0].agents == tuple(sorted(p_set + (node.t,))), path, "left child agents")
    _require(specs[1].agents == tuple(sorted(q_set + (node.t,))), path, "right child agents")
    left_dem = dict(zip(specs[0].agents, specs[0].demands))
    right_dem = dict(zip(specs[1].agents, specs[1].demands))
    _require(left_dem[node.t] == node.alpha_left, path, "left child t-demand mismatch")
    _require(right_dem[node.t] == node.alpha_right, path, "right child t-demand mismatch")
    for a in p_set:
        _require(left_dem[a] == view.demands[a], path, f"agent {a} demand altered in left child")
    for a in q_set:
        _require(right_dem[a] == view.demands[a], path, f"agent {a} demand altered in right child")


def _heavy_conditions(view, node, path):
    _sweep_conditions(view, node, path)
    others = tuple(a for a in node.agents if a != node.t)
    _require(not node.p_set, path, "heavy cases require the crossed side empty in the node chart")
    _require(tuple(node.q_set or ()) == others, path, "Q must hold all agents except t")
    for a in others:
        _require(view.cdf(a, node.x) <= HALF, path, f"agent {a} is above 1/2 at x")


def _check_half_assign(view, node, path):
    _heavy_conditions(view, node, path)
    _require(view.demands[node.t] <= HALF, path, "half assignment needs t-demand at most 1/2")
    specs = node.child_specs
    _require(len(specs) == 1, path, "half assignment poses one child")
    _require((specs[0].a, specs[0].b) == (node.x, ONE), path, "child interval must be (x,1]")
    rest = tuple(a for a in node.agents if a != node.t)
    _require(specs[0].agents == rest, path, "child must hold all agents except t")
    for a, d in zip(specs[0].agents, specs[0].demands):
        _require(d == view.demands[a], path, f"agent {a} demand altered")


def _uv_conditions(view, node, path):
    _heavy_conditions(view, node, path)
    alpha_t = view.demands[node.t]
    _require(alpha_t > HALF, path, "this case needs t-demand above 1/2")
    _require(node.y is not None and node.x < node.y <= ONE, path, "y must lie in (x,1]")
    _require(view.cdf(node.t, node.y) == alpha_t, path, "t's mass at y is not exactly its demand")
    _require(view.local_measure(node.t).quantile(alpha_t) == node.y, path, "y is not minimal")
    u_set, v_set = node.u_set or (), node.v_set or ()
    _require(
        tuple(sorted(u_set + v_set + (node.t,))) == node.agents,
        path,
        "U, V, t must partition the node agents",
    )
    for a in u_set:
        _require(view.cdf(a, node.y) >= alpha_t, path, f"agent {a} in U below t's demand at y")
    for a in v_set:
        _require(view.cdf(a, node.y) < alpha_t, path, f"agent {a} in V not below t's demand at y")
    return alpha_t, u_set, v_set


def _check_t_assign(view, node, path):
    alpha_t, u_set, v_set = _uv_conditions(view, node, path)
    _require(not u_set, path, "t-assignment requires U empty")
    specs = node.child_specs
    _require(len(specs) == 1, path, "t-assignment poses one child")
    _require((specs[0].a, specs[0].b) == (node.y, ONE), path, "child interval must be (y,1]")
    _require(specs[0].agents == v_set, path, "child must hold exactly V")
    for a, d in zip(specs[0].agents, specs[0].demands):
        _require(d == view.demands[a], path, f"agent {a} demand altered")


def _check_uv(view, node, path):
    alpha_t, u_set, v_set = _uv_conditions(view, node, path)
    _require(bool(u_set) and bool(v_set), path, "UV split needs both sides nonempty")
    sum_u = sum((view.demands[a] for a in u_set), ZERO)
    sum_v = sum((view.demands[a] for a in v_set), ZERO)
    _require(node.alpha_left == alpha_t - sum_u, path, "left t-demand is not alpha_t - sum(U)")
    _require(node.alpha_right == ONE - alpha_t - sum_v, path, "right t-demand is not 1 - alpha_t - sum(V)")
    _require(node.alpha_left >= ZERO and node.alpha_right >= ZERO, path, "negative split demand")
    specs = node.child_specs
    _require(len(specs) == 2, path, "UV split must pose two children")
    _require((specs[0].a, specs[0].b) == (ZERO, node.y), path, "left child interval must be [0,y]")
    _require((specs[1].a, specs[1].b) == (node.y, ONE), path, "right child interval must be (y,1]")
    _require(specs[0].agents == tuple(sorted(u_set + (node.t,))), path, "left child agents")
    _require(specs[1].agents == tuple(sorted(v_set + (node.t,))), path, "right child agents")
    left_dem = dict(zip(specs[0].agents, specs[0].demands))
    right_dem = dict(zip(specs[1].agents, specs[1].demands))
    _require(left_dem[node.t] == node.alpha_left, path, "left child t-demand mismatch")
    _require(right_dem[node.t] == node.alpha_right, path, "right child t-demand mismatch")


def _check_z(view, node, path):
    alpha_t, u_set, v_set = _uv_conditions(view, node, path)
    _require(bool(u_set) and not v_set, path, "Z split requires V empty and U nonempty")
    _require(node.z is not None and node.s is not None and node.beta is not None, path, "missing z witnesses")
    _require(node.x <= node.z <= node.y, path, "z must lie in [x,y]")
    _require(node.s in u_set, path, "partner agent s must belong to U")
    beta = view.cdf(node.t, node.z)
    _require(node.beta == beta, path, "recorded beta is not t's mass at z")
    _require(view.cdf(node.s, node.z) == beta, path, "s does not tie t at z")
    _require(beta >= HALF, path, "beta must be at least 1/2")
    for a in u_set:
        _require(view.cdf(a, node.z) >= beta, path, f"agent {a} below beta at z")
    # maximality: no later tie with t inside (z, y]
    m_t = view.local_measure(node.t)
    for a in u_set:
        hit = crossings(view.local_measure(a), m_t, node.z, node.y).rightmost()
        _require(hit is None or hit <= node.z, path, f"agent {a} ties t again after z")
    _require(node.alpha_left == beta - sum((view.demands[a] for a in u_set if a != node.s), ZERO),
             path, "left t-demand is not beta - sum(U')")
    _require(node.alpha_right == ONE - view.demands[node.s] - beta, path,
             "right t-demand is not 1 - alpha_s - beta")
    _require(node.alpha_left >= ZERO and node.alpha_right >= ZERO, path, "negative split demand")
    specs = node.child_specs
    _require(len(specs) == 2, path, "Z split must pose two children")
    _require((specs[0].a, specs[0].b) == (ZERO, node.z), path, "left child interval must be [0,z]")
    _require((specs[1].a, specs[1].b) == (node.z, ONE), path, "right child interval must be (z,1]")
    u_rest = tuple(a for a in u_set if a != node.s)
    _require(specs[0].agents == tuple(sorted(u_rest + (node.t,))), path, "left child agents")
    _require(specs[1].agents == tuple(sorted((node.s, node.t))), path, "right child agents")
    left_dem = dict(zip(specs[0].agents, specs[0].demands))
    right_dem = dict(zip(specs[1].agents, specs[1].demands))
    _require(left_dem[node.t] == node.alpha_left, path, "left child t-demand mismatch")
    _require(right_dem[node.t] == node.alpha_right, path, "right child t-demand mismatch")
    _require(right_dem[node.s] == view.demands[node.s], path, "s demand altered in right child")


_CASE_CHECKS = {
    CASE_BASE_SINGLE: _check_base_single,
    CASE_BASE_PAIR: _check_base_pair,
    CASE_PQ_SPLIT: _check_pq,
    CASE_HALF_ASSIGN: _check_half_assign,
    CASE_T_ASSIGN_AT_Y: _check_t_assign,
    CASE_UV_SPLIT: _check_uv,
    CASE_Z_SPLIT: _check_z,
}
