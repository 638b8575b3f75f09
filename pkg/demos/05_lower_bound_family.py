#!/usr/bin/env python3
"""A family of instances that forces 2n-2 cuts.

Agent 0 is uniform on [0,1] and demands 1 - delta; each other agent is
uniform on a tiny support around i/n and demands an equal share of
delta.  Serving agent 0 leaves total length at most delta for everyone
else, so each tiny agent's piece is a short interval poking into its
support, putting two cut positions inside every support neighbourhood:
2(n-1) cuts in total.  The solver's guarantee of 3n-4 leaves a gap to
this necessity bound; which of the two is the truth is open, and the
grid oracle below probes small cases independently.
"""

from fractions import Fraction as F

from cakecut import (
    LowerBoundParams,
    count_support_cuts,
    lower_bound_instance,
    oracle_min_cuts,
    solve,
    verify,
)

# Desk-scale parameters keep every number readable; the construction
# also accepts astronomically small widths (exact rationals don't care).
params = LowerBoundParams(2, F("1/100"), F(1, 10**6))
inst = lower_bound_instance(params)
print("n=2: tiny support", params.supports()[0], "demands", [str(d) for d in inst.demands])

res = oracle_min_cuts(inst, max_cuts=1)
print("oracle, 1 cut allowed:", "feasible" if res.feasible else "infeasible on its grid (evidence)")
res = oracle_min_cuts(inst, max_cuts=2)
print("oracle, 2 cuts allowed: best =", res.best_cuts)
print("  witness cuts:", [str(c) for c in res.witness.cuts], "(both inside the support)")
assert res.best_cuts == 2

# n=3: the solver must use at least 2n-2 = 4 cuts and may use 3n-4 = 5.
params = LowerBoundParams.practical(3)
inst = lower_bound_instance(params)
division, _ = solve(inst)
assert verify(inst, division).valid
counts = count_support_cuts(params, division)
print(f"\nn=3: solver used {division.cut_count} cuts (necessity 4, guarantee 5)")
print("  cut positions inside each tiny support's neighbourhood:", counts)
assert all(c >= 2 for c in counts)

# The extreme parameterisation stays exact, just unprintable.
extreme = LowerBoundParams.extreme(3)
inst = lower_bound_instance(extreme)
print("\nextreme scale: epsilon denominator has", len(str(extreme.epsilon.denominator)), "digits;")
print("  instance still validates with total mass exactly 1 per measure")
