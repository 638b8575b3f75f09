#!/usr/bin/env python3
"""The classical procedures, and why unequal demands break them.

Equal demands are easy: a knife sweep gives n-1 cuts, which is optimal.
Rational unequal demands reduce to the equal case over a common
denominator D at the price of up to D-1 cuts.  Running the sweep's
stopping rule directly with unequal demands, however, is unsound, and
the hard family below shows it failing: that failure is the reason the
bounded-cut solver in demo 04 exists.
"""

from fractions import Fraction as F

from cakecut import Instance, Measure, common_denominator, sliding_knife_equal, verify
from cakecut.baseline import _sliding_knife_any_demands
from cakecut.instances import LowerBoundParams, lower_bound_instance

# --- equal demands: n-1 cuts ------------------------------------------
inst = Instance([Measure.uniform()] * 4, [F("1/4")] * 4)
div = sliding_knife_equal(inst)
print("four equal agents:", [str(c) for c in div.cuts], "->", verify(inst, div).valid)
assert div.cut_count == 3

# --- rational unequal demands via a common denominator ----------------
inst = Instance([Measure.uniform(), Measure.uniform()], [F("1/3"), F("2/3")])
div = common_denominator(inst)
print("demands 1/3, 2/3 (D=3):", [str(c) for c in div.cuts], "owners", list(div.owners))
assert div.cuts == (F("1/3"),)

# A division with many virtual pieces can merge back down:
inst = Instance([Measure.uniform()] * 2, [F("2/5"), F("3/5")])
div = common_denominator(inst)
print("demands 2/5, 3/5 (D=5): cuts", [str(c) for c in div.cuts], "(merging ate the rest)")

# --- the sweep is unsound for unequal demands --------------------------
# One agent wants nearly everything; tiny agents sit on tiny supports.
params = LowerBoundParams.practical(3)
hard = lower_bound_instance(params)
print("\nhard family, n=3: demands", [str(d) for d in hard.demands])

broken = _sliding_knife_any_demands(hard)
report = verify(hard, broken)
print("unequal sweep verdict:", "valid" if report.valid else "INVALID")
print("  big agent's surplus:", report.surpluses[0])
assert not report.valid
# The tiny agents stop the knife inside their supports long before the
# big agent accumulates its demand; the leftover cannot cover it.
