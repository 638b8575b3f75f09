#!/usr/bin/env python3
"""Two agents never need more than two cuts.

The key fact lives on the circle: for any two measures and any share
alpha = p/q there is an arc X with first-measure mass exactly alpha and
second-measure mass at least alpha.  Proof by counting: the q arcs
spanning p consecutive blocks of the first measure's q-quantile grid
cover every point of the circle exactly p times, so their second-measure
masses sum to exactly p, and the best one reaches the average p/q.

Cutting the circle at 0 turns the arc into at most two cuts of [0,1].
"""

from fractions import Fraction as F

from cakecut import Instance, Measure, circle_lemma_certified, sliding_arc, solve_pair, verify

m_eq = Measure([0, F("1/2"), 1], [0, 2])   # all mass in the second half
m_ge = Measure.uniform()
alpha = F("1/2")

arc, cert = circle_lemma_certified(m_eq, m_ge, alpha)
print(f"share alpha = {alpha} = p/q with p={cert.p}, q={cert.q}")
print("candidate arc masses under the second measure:", [str(m) for m in cert.masses])
print("coverage: the masses sum to", sum(cert.masses), "= p exactly")
print(f"chosen arc: start {arc.start}, length {arc.length}")
assert m_eq.arc_mass(arc) == alpha and m_ge.arc_mass(arc) >= alpha

# The same guarantee, computed by a sweep whose cost ignores q: this is
# what the recursive solver uses when rescaled demands develop huge
# denominators.
big_share = F(10**12 + 1, 2 * 10**12)
arc2 = sliding_arc(m_eq, m_ge, big_share)
print(f"\nsliding search, share with denominator {big_share.denominator}:")
print(f"  arc start {arc2.start}, mass check {m_eq.arc_mass(arc2) == big_share}")

# End to end: a two-agent instance, at most two cuts.
inst = Instance(
    [Measure.uniform(), Measure([0, F("2/5"), F("3/5"), 1], [0, 5, 0])],
    [F("1/2"), F("1/2")],
)
div = solve_pair(inst)
rep = verify(inst, div)
print("\ntwo agents, one concentrated in the middle:")
print("  cuts:", [str(c) for c in div.cuts], "owners:", list(div.owners))
print("  received masses:", [str(m) for m in rep.masses], "valid:", rep.valid)
assert div.cut_count <= 2
