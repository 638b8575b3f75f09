#!/usr/bin/env python3
"""Measures with step densities: exact CDFs, quantiles and crossings.

Every value printed here is an exact rational; there is no floating
point anywhere in the library.
"""

from fractions import Fraction as F

from cakecut import Measure, crossings

# A measure is a step density on [0,1] with total mass 1.  This one
# packs everything into the first half.
front = Measure([0, F("1/2"), 1], [2, 0])
print("front-loaded measure:", front)

# The CDF is continuous piecewise linear; queries are exact.
for theta in (F("1/4"), F("1/2"), F("3/4")):
    print(f"  mass of [0,{theta}] = {front.cdf(theta)}")

# Quantiles invert the CDF and return the minimal preimage, so a
# plateau (a stretch of zero density) resolves to its left end.
plateau = Measure([0, F("1/4"), F("3/4"), 1], [2, 0, 2])
print("\nplateau measure:", plateau)
print("  median sits at the plateau's left end:", plateau.quantile(F("1/2")))

# Consecutive quantiles carve the interval into pieces of exactly equal
# mass; this grid drives the two-agent arc construction in demo 03.
ts = [plateau.quantile(F(j, 5)) for j in range(6)]
print("  fifth-quantile grid:", [str(t) for t in ts])
for a, b in zip(ts, ts[1:]):
    assert plateau.interval_mass(a, b) == F("1/5")
print("  each consecutive block has mass exactly 1/5")

# Where do two CDFs agree?  The difference is piecewise linear, so the
# agreement set is finitely many points and closed intervals.
uniform = Measure.uniform()
middle = Measure([0, F("1/2"), F("3/4"), 1], [0, 4, 0])
cr = crossings(uniform, middle, 0, 1)
print("\nuniform vs middle-heavy measure agree at:")
print("  points:", [str(p) for p in cr.points])
print("  intervals:", [(str(a), str(b)) for a, b in cr.intervals])
# besides the forced agreements at 0 and 1, the only tie solves
# 4(theta - 1/2) = theta, i.e. theta = 2/3
assert cr.points == (F(0), F("2/3"), F(1))
