#!/usr/bin/env python3
"""The recursive solver: any demands, at most 3n-4 cuts, full audit trail.

Each recursion level fires one of seven cases (sweep split, half
assignment, late-tie split, ...) and logs its witnesses.  The trace can
be replayed against the original instance, re-verifying every exact
condition and the recursive cut accounting, independently of the
solver's own bookkeeping.
"""

from fractions import Fraction as F

from cakecut import Instance, Measure, check_trace, cut_count_bound, random_instance, solve, verify


def show(tag, inst):
    division, trace = solve(inst)
    report = verify(inst, division)
    replay = check_trace(inst, trace)
    print(f"{tag}: n={inst.n} cuts={division.cut_count} (bound {cut_count_bound(inst.n)})")
    print("  cuts:", [str(c) for c in division.cuts])
    print("  owners:", list(division.owners))
    print("  surpluses:", [str(s) for s in report.surpluses])
    print("  valid:", report.valid, "| trace replay:", bool(replay))
    assert report.valid and replay
    return trace


# Three identical agents resolve into exact thirds through a sweep split.
trace = show("identical thirds", Instance([Measure.uniform()] * 3, [F("1/3")] * 3))
print("  root case:", trace.root.case, "at x =", trace.root.x)

# A heavy agent (demand 3/4) with two light agents whose mass climbs
# late: the recursion cuts at the last point where a light agent's
# running mass ties the heavy one's.
light = Measure([0, F("1/2"), F("3/4"), 1], [0, 4, 0])
trace = show(
    "late-tie split",
    Instance([Measure.uniform(), light, light], [F("3/4"), F("1/8"), F("1/8")]),
)
print("  root case:", trace.root.case, "z =", trace.root.z, "beta =", trace.root.beta)

# Random stress: every instance verifies within the bound.
print("\nrandom instances:")
for seed in range(5):
    inst = random_instance(2 + seed, 5, seed=1234 + seed)
    division, trace = solve(inst)
    ok = verify(inst, division).valid and check_trace(inst, trace)
    print(
        f"  seed {1234 + seed}: n={inst.n} cuts={division.cut_count} <= {cut_count_bound(inst.n)}"
        f" valid={bool(ok)} depth={trace.max_depth()}"
    )
    assert ok
