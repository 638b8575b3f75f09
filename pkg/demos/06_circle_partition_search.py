#!/usr/bin/env python3
"""Balanced two-arc partitions of the circle: an exact per-instance decision.

Sought: a split of the agents into nonempty P and Q and of the circle
into an arc X and its complement with

    min over P of mu_i(X)   = sum of P's demands,
    min over Q of mu_j(X^c) = sum of Q's demands.

If every instance admitted such a partition, an induction would push the
solver's guarantee down to the 2n-2 cuts that demo 05 shows necessary.
Existence is known for two agents and open from three agents on.  For
step densities the search here is complete: arc masses are affine in the
arc endpoints on each breakpoint cell, so finitely many exact 2x2
systems decide the instance.  An empty search is a certificate of
absence, and any instance producing one would settle the open question
in the negative.
"""

from fractions import Fraction as F

from cakecut import Instance, Measure, random_instance, search_witness, stress_campaign, verify_witness

# Two identical agents: the first subset tried already works.
inst = Instance([Measure.uniform()] * 2, [F("1/2"), F("1/2")])
w = search_witness(inst)
print("two uniform agents: P =", list(w.p_set), " arc = [", w.arc.start, ", +", w.arc.length, ")")
assert w.residuals == (F(0), F(0))

# An uneven pair: the witness still hits both equalities exactly.
inst = Instance(
    [Measure.uniform(), Measure([0, F("1/2"), 1], [0, 2])],
    [F("1/4"), F("3/4")],
)
w = search_witness(inst)
print("uneven pair: P =", list(w.p_set), " arc start", w.arc.start, "length", w.arc.length)
print("  residuals:", [str(r) for r in w.residuals], " degenerate:", w.degenerate)
assert verify_witness(inst, w)

# Three agents: per-instance decisions, witnesses so far on every
# random instance tried.
print("\nthree-agent random instances:")
for seed in (1, 2, 3):
    inst = random_instance(3, 4, seed=seed)
    w = search_witness(inst)
    outcome = "witness" if w is not None else "CERTIFIED NONE (counterexample!)"
    print(f"  seed {seed}: {outcome}")
    if w is not None:
        assert verify_witness(inst, w)

# Campaigns scale this up; the work metric is deterministic (systems
# examined, not wall time), so reports are byte-stable.
records = stress_campaign(n=3, count=5, seed=2024)
tally = {}
for r in records:
    tally[r["outcome"]] = tally.get(r["outcome"], 0) + 1
print("\ncampaign over 5 random 3-agent instances:", tally)
