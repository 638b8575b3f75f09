"""Exactness and invariants of the measure layer."""

import random
from fractions import Fraction

import pytest

from cakecut.errors import PreconditionError, ValidationError
from cakecut.measure import CircleArc, Measure, crossings

from conftest import F, riemann_mass, step


def random_measure(rng: random.Random, max_segments: int = 5) -> Measure:
    k = rng.randint(1, max_segments)
    denom = rng.choice([6, 8, 12, 16, 24])
    inner = sorted(rng.sample(range(1, denom), min(k - 1, denom - 1)))
    bps = [F(0)] + [Fraction(j, denom) for j in inner] + [F(1)]
    while True:
        dens = [Fraction(rng.randint(0, 6)) for _ in range(len(bps) - 1)]
        if any(dens):
            break
    total = sum(d * (bps[i + 1] - bps[i]) for i, d in enumerate(dens))
    return Measure(bps, [d / total for d in dens])


class TestConstruction:
    def test_adjacent_equal_densities_merge(self):
        m = Measure([0, F("1/2"), 1], [1, 1])
        assert m == Measure.uniform()
        assert m.breakpoints == (F(0), F(1))

    def test_rejects_unsorted_breakpoints(self):
        with pytest.raises(ValidationError, match="breakpoints"):
            Measure([0, F("2/3"), F("1/3"), 1], [1, 1, 1])

    def test_rejects_wrong_mass(self):
        with pytest.raises(ValidationError, match="total mass"):
            Measure([0, 1], [2])

    def test_rejects_negative_density(self):
        with pytest.raises(ValidationError, match="nonnegative"):
            Measure([0, F("1/2"), 1], [3, -1])

    def test_rejects_float(self):
        with pytest.raises(ValidationError, match="floating point"):
            Measure([0, 0.5, 1], [1, 1])

    def test_immutable(self):
        m = Measure.uniform()
        with pytest.raises(AttributeError):
            m.densities = (F(2),)

    def test_endpoint_and_shape_validation(self):
        with pytest.raises(ValidationError, match=r"breakpoints\[0\]"):
            Measure([F("1/4"), 1], [F("4/3")])
        with pytest.raises(ValidationError, match="must be 1"):
            Measure([0, F("1/2")], [2])
        with pytest.raises(ValidationError, match="expected 2 entries"):
            Measure([0, F("1/2"), 1], [1])
        with pytest.raises(ValidationError, match="at least"):
            Measure([0], [])

    def test_repr_and_equality(self):
        m = step((0, 2), (F("1/2"), 0))
        assert "2 on [0,1/2]" in repr(m)
        assert m == step((0, 2), (F("1/2"), 0))
        assert m != Measure.uniform()
        assert len({m, step((0, 2), (F("1/2"), 0))}) == 1


class TestCdf:
    def test_uniform_identity(self, uniform):
        assert uniform.cdf(F("1/3")) == F("1/3")

    def test_front_loaded(self):
        m = step((0, 2), (F("1/2"), 0))
        assert m.cdf(F("1/4")) == F("1/2")
        assert m.cdf(F("3/4")) == 1

    def test_domain_error(self, uniform):
        with pytest.raises(PreconditionError):
            uniform.cdf(F("3/2"))

    def test_monotone_random(self):
        rng = random.Random(11)
        for _ in range(40):
            m = random_measure(rng)
            thetas = sorted(Fraction(rng.randint(0, 48), 48) for _ in range(6))
            values = [m.cdf(t) for t in thetas]
            assert values == sorted(values)
            assert m.cdf(0) == 0 and m.cdf(1) == 1


class TestQuantile:
    def test_uniform_half(self, uniform):
        assert uniform.quantile(F("1/2")) == F("1/2")

    def test_plateau_returns_left_end(self):
        m = step((0, 2), (F("1/4"), 0), (F("3/4"), 2))
        assert m.quantile(F("1/2")) == F("1/4")

    def test_zero_maps_to_zero(self):
        m = step((0, 0), (F("1/2"), 2))
        assert m.quantile(0) == 0

    def test_domain_error(self, uniform):
        with pytest.raises(PreconditionError):
            uniform.quantile(-1)

    def test_roundtrip_random(self):
        # cdf(quantile(p)) == p exactly, and quantile(cdf(t)) <= t
        rng = random.Random(23)
        for _ in range(60):
            m = random_measure(rng)
            p = Fraction(rng.randint(0, 60), 60)
            q = m.quantile(p)
            assert m.cdf(q) == p
            t = Fraction(rng.randint(0, 60), 60)
            assert m.quantile(m.cdf(t)) <= t

    def test_equal_quantile_blocks(self):
        # consecutive quantiles at levels j/q pin off mass exactly 1/q
        rng = random.Random(37)
        for _ in range(25):
            m = random_measure(rng)
            q = rng.randint(1, 9)
            ts = [m.quantile(Fraction(j, q)) for j in range(q + 1)]
            assert ts[0] == 0 and ts[-1] == 1
            for j in range(q):
                assert m.interval_mass(ts[j], ts[j + 1]) == Fraction(1, q)


class TestIntervalMass:
    def test_uniform(self, uniform):
        assert uniform.interval_mass(F("1/4"), F("1/2")) == F("1/4")

    def test_empty(self):
        m = step((0, 0), (F("1/2"), 2))
        assert m.interval_mass(F("1/3"), F("1/3")) == 0

    def test_back_loaded(self):
        m = step((0, 0), (F("1/2"), 2))
        assert m.interval_mass(0, F("3/4")) == F("1/2")

    def test_order_error(self, uniform):
        with pytest.raises(PreconditionError):
            uniform.interval_mass(F("1/2"), F("1/4"))

    def test_matches_riemann_oracle(self):
        rng = random.Random(41)
        for _ in range(20):
            m = random_measure(rng, max_segments=4)
            a = Fraction(rng.randint(0, 24), 24)
            b = a + Fraction(rng.randint(0, 24 - int(a * 24)), 24)
            assert m.interval_mass(a, b) == riemann_mass(m, a, b)


class TestArcMass:
    def test_uniform_wraparound(self, uniform):
        assert uniform.arc_mass(CircleArc(F("3/4"), F("1/2"))) == F("1/2")

    def test_full_circle(self):
        m = step((0, 2), (F("1/2"), 0))
        assert m.arc_mass(CircleArc(F("1/3"), 1)) == 1

    def test_front_loaded_arc(self):
        # frozen from the midpoint Riemann oracle below
        m = step((0, 2), (F("1/2"), 0))
        arc = CircleArc(F("1/4"), F("1/2"))
        expected = riemann_mass(m, F("1/4"), F("3/4"))
        assert expected == F("1/2")
        assert m.arc_mass(arc) == expected

    def test_complement_sums_to_one(self):
        rng = random.Random(53)
        for _ in range(40):
            m = random_measure(rng)
            start = Fraction(rng.randint(0, 23), 24)
            length = Fraction(rng.randint(0, 24), 24)
            arc = CircleArc(start, length)
            assert m.arc_mass(arc) + m.arc_mass(arc.complement()) == 1

    def test_wrapping_equals_split_intervals(self):
        rng = random.Random(59)
        for _ in range(25):
            m = random_measure(rng)
            arc = CircleArc(F("5/6"), F("1/3"))
            split = m.interval_mass(F("5/6"), 1) + m.interval_mass(0, F("1/6"))
            assert m.arc_mass(arc) == split


class TestCircleArc:
    def test_contains_wrapping(self):
        arc = CircleArc(F("3/4"), F("1/2"))
        assert arc.contains(F("9/10"))
        assert arc.contains(F("1/8"))
        assert not arc.contains(F("1/2"))

    def test_degenerate(self):
        assert CircleArc(F("1/3"), 0).contains(F("1/3"))
        assert CircleArc(F("1/3"), 1).contains(F("9/10"))

    def test_invalid(self):
        with pytest.raises(ValidationError):
            CircleArc(F("3/2"), F("1/2"))
        with pytest.raises(ValidationError, match="length"):
            CircleArc(F("1/2"), F("-1/4"))

    def test_end_and_wraps(self):
        assert CircleArc(F("3/4"), F("1/2")).wraps
        assert CircleArc(F("3/4"), F("1/2")).end == F("1/4")
        assert not CircleArc(F("1/4"), F("1/2")).wraps
        assert CircleArc(F("1/4"), F("3/4")).end == F(0)


class TestCrossings:
    def test_identical_measures_coincide_everywhere(self, uniform):
        c = crossings(uniform, Measure.uniform(), 0, 1)
        assert c.points == ()
        assert c.intervals == ((F(0), F(1)),)

    def test_single_interior_crossing(self, uniform):
        # 4(t - 1/2) = t  =>  t = 2/3, verified by substitution
        m2 = step((0, 0), (F("1/2"), 4), (F("3/4"), 0))
        c = crossings(uniform, m2, F("1/2"), F("3/4"))
        assert c.intervals == ()
        assert c.points == (F("2/3"),)
        assert uniform.cdf(F("2/3")) == m2.cdf(F("2/3"))

    def test_meet_again_only_at_one(self, uniform):
        m2 = step((0, 2), (F("1/2"), 0))
        c = crossings(uniform, m2, F("1/4"), 1)
        assert c.points == (F(1),)
        assert c.intervals == ()

    def test_every_point_is_exact_and_gaps_are_clean(self):
        # per-segment sign analysis: between consecutive reported
        # elements the CDF difference never vanishes
        rng = random.Random(61)
        for _ in range(40):
            m1, m2 = random_measure(rng), random_measure(rng)
            c = crossings(m1, m2, 0, 1)
            for p in c.points:
                assert m1.cdf(p) == m2.cdf(p)
            for lo, hi in c.intervals:
                mid = (lo + hi) / 2
                assert m1.cdf(mid) == m2.cdf(mid)
            elems = c.elements()
            for a, b in zip(elems, elems[1:]):
                mid = (a + b) / 2
                inside = any(lo <= mid <= hi for lo, hi in c.intervals)
                if not inside:
                    assert m1.cdf(mid) != m2.cdf(mid)

    def test_point_interval_mix(self):
        # equal on [0,1/4] by shared zero density, crossing later
        m1 = step((0, 0), (F("1/4"), F("4/3")))
        m2 = step((0, 0), (F("1/4"), 2), (F("3/4"), 0))
        c = crossings(m1, m2, 0, 1)
        assert c.intervals[0] == (F(0), F("1/4"))
        assert F(1) in c.points


class TestDerivedMeasures:
    def test_reflected(self):
        m = step((0, 2), (F("1/2"), 0))
        r = m.reflected()
        assert r.cdf(F("1/4")) == 0
        assert r.cdf(F("3/4")) == F("1/2")
        assert r.reflected() == m

    def test_rotated_mass_is_shifted(self):
        m = step((0, 2), (F("1/2"), 0))
        r = m.rotated(F("1/4"))
        # mass of [1/4, 3/4] under r equals mass of [0, 1/2] under m
        assert r.interval_mass(F("1/4"), F("3/4")) == 1
        assert m.rotated(0) is m

    def test_rotation_composes_to_identity(self):
        rng = random.Random(67)
        for _ in range(20):
            m = random_measure(rng)
            off = Fraction(rng.randint(1, 23), 24)
            assert m.rotated(off).rotated(1 - off) == m

    def test_restricted_renormalises(self):
        m = Measure.uniform()
        r = m.restricted(F("1/4"), F("3/4"))
        assert r == Measure.uniform()
        m2 = step((0, 2), (F("1/2"), 0))
        r2 = m2.restricted(0, F("1/2"))
        assert r2 == Measure.uniform()

    def test_restricted_zero_mass_rejected(self):
        m = step((0, 2), (F("1/2"), 0))
        with pytest.raises(PreconditionError):
            m.restricted(F("3/4"), 1)

    def test_uniform_on_support(self):
        m = Measure.uniform_on(F("49/100"), F("51/100"))
        assert m.densities == (F(0), F(50), F(0))
        assert m.support_segments() == ((F("49/100"), F("51/100")),)
