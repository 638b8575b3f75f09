"""Shared builders for the test suite."""

from fractions import Fraction
from math import lcm

import pytest

from cakecut.measure import Measure


def F(x) -> Fraction:
    return Fraction(x)


def step(*segments) -> Measure:
    """Measure from (breakpoint, density) run-length pairs.

    step((0, 2), (1/2, 0)) is density 2 on [0,1/2] and 0 on [1/2,1].
    """
    bps = [Fraction(b) for b, _ in segments] + [Fraction(1)]
    dens = [Fraction(d) for _, d in segments]
    return Measure(bps, dens)


def riemann_mass(m: Measure, a, b, refine: int = 4) -> Fraction:
    """Independent interval-mass oracle: exact midpoint Riemann sum.

    Splits [a,b] at every multiple of 1/(refine * lcm of breakpoint
    denominators), so each subcell lies inside one density segment and
    the midpoint sum is exact.  Computed without touching the CDF.
    """
    a, b = Fraction(a), Fraction(b)
    if a == b:
        return Fraction(0)
    denom = refine * lcm(*[x.denominator for x in m.breakpoints])
    ticks = sorted({a, b} | {Fraction(k, denom) for k in range(denom + 1) if a < Fraction(k, denom) < b})
    total = Fraction(0)
    for u, v in zip(ticks, ticks[1:]):
        mid = (u + v) / 2
        j = 0
        while m.breakpoints[j + 1] < mid:
            j += 1
        total += m.densities[j] * (v - u)
    return total


def plateau_measure(rng, max_segments: int = 6) -> Measure:
    """Random measure biased towards zero-density stretches, to stress
    plateau handling in quantiles, crossings and arc sweeps."""
    denom = rng.choice([4, 6, 8, 12])
    k = rng.randint(1, max_segments - 1)
    inner = sorted(rng.sample(range(1, denom), min(k, denom - 1)))
    bps = [Fraction(0)] + [Fraction(j, denom) for j in inner] + [Fraction(1)]
    while True:
        dens = [Fraction(rng.choice([0, 0, 0, 1, 2, 5])) for _ in range(len(bps) - 1)]
        if any(dens):
            break
    total = sum(d * (bps[i + 1] - bps[i]) for i, d in enumerate(dens))
    return Measure(bps, [d / total for d in dens])


@pytest.fixture
def uniform():
    return Measure.uniform()
