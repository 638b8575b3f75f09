"""Non-atomic measures on [0,1] with exact rational arithmetic.

A measure is a step density: rational breakpoints 0 = b_0 < ... < b_m = 1
and a nonnegative rational density on each segment, normalised to total
mass 1.  Its CDF is continuous and piecewise linear, so every query below
(mass of an interval, quantile, equality points of two CDFs) has an exact
rational answer.  Nothing in this module touches floating point: the
division procedures built on top branch on exact equalities such as
"mass of [0,x] equals 1/2", which no rounding scheme can decide.

Measures are immutable after construction and all operations are pure,
so values can be shared freely between threads and recursive subproblems.
Construction canonicalises: adjacent segments with equal density are
merged, which makes structural equality meaningful.

The same data also serves as a measure on the circle obtained by gluing
1 to 0; ``arc_mass`` evaluates mass of a (possibly wrapping) arc.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import PreconditionError, ValidationError

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def _frac(value: RationalLike, field: str = "value") -> Fraction:
    """Coerce to Fraction, rejecting floats to preserve exactness."""
    if isinstance(value, float):
        raise ValidationError(field, "floating point input is not accepted; pass a Fraction, int or 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(field, f"not a rational: {value!r} ({exc})") from None


@dataclass(frozen=True)
class CircleArc:
    """Closed arc {start + u mod 1 : 0 <= u <= length} on the circle.

    ``length`` 0 is the degenerate empty arc, 1 the full circle.
    """

    start: Fraction
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "start", _frac(self.start, "arc.start"))
        object.__setattr__(self, "length", _frac(self.length, "arc.length"))
        if not (ZERO <= self.start < ONE):
            raise ValidationError("arc.start", f"must lie in [0,1), got {self.start}")
        if not (ZERO <= self.length <= ONE):
            raise ValidationError("arc.length", f"must lie in [0,1], got {self.length}")

    @property
    def end(self) -> Fraction:
        """Endpoint start+length reduced mod 1."""
        return (self.start + self.length) % ONE

    @property
    def wraps(self) -> bool:
        return self.start + self.length > ONE

    def complement(self) -> "CircleArc":
        s = self.start + self.length
        if s >= ONE:
            s -= ONE
        return CircleArc(s, ONE - self.length)

    def contains(self, point: RationalLike) -> bool:
        """Exact membership for a circle point (taken mod 1)."""
        p = _frac(point, "point") % ONE
        if self.length == ONE:
            return True
        if self.length == ZERO:
            return p == self.start
        e = self.start + self.length
        if e <= ONE:
            return self.start <= p <= e
        return p >= self.start or p <= e - ONE


class Measure:
    """Probability measure on [0,1] given by a rational step density."""

    __slots__ = ("breakpoints", "densities", "_cum")

    def __init__(self, breakpoints: Sequence[RationalLike], densities: Sequence[RationalLike]):
        bps = tuple(_frac(b, f"breakpoints[{i}]") for i, b in enumerate(breakpoints))
        dens = tuple(_frac(d, f"densities[{i}]") for i, d in enumerate(densities))
        if len(bps) < 2:
            raise ValidationError("breakpoints", "need at least the two endpoints 0 and 1")
        if bps[0] != ZERO:
            raise ValidationError("breakpoints[0]", f"must be 0, got {bps[0]}")
        if bps[-1] != ONE:
            raise ValidationError(f"breakpoints[{len(bps) - 1}]", f"must be 1, got {bps[-1]}")
        for i in range(len(bps) - 1):
            if bps[i] >= bps[i + 1]:
                raise ValidationError(f"breakpoints[{i + 1}]", "breakpoints must be strictly increasing")
        if len(dens) != len(bps) - 1:
            raise ValidationError("densities", f"expected {len(bps) - 1} entries, got {len(dens)}")
        for i, d in enumerate(dens):
            if d < ZERO:
                raise ValidationError(f"densities[{i}]", f"density must be nonnegative, got {d}")

        # Canonical form: merge adjacent segments of equal density.
        merged_b = [bps[0]]
        merged_d = []
        for i, d in enumerate(dens):
            if merged_d and merged_d[-1] == d:
                merged_b[-1] = bps[i + 1]
            else:
                merged_b.append(bps[i + 1])
                merged_d.append(d)
        bps, dens = tuple(merged_b), tuple(merged_d)

        cum = [ZERO]
        for i, d in enumerate(dens):
            cum.append(cum[-1] + d * (bps[i + 1] - bps[i]))
        if cum[-1] != ONE:
            raise ValidationError("densities", f"total mass must be 1, got {cum[-1]}")

        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "densities", dens)
        object.__setattr__(self, "_cum", tuple(cum))

    def __setattr__(self, name, value):
        raise AttributeError("Measure is immutable")

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.densities == other.densities

    def __hash__(self):
        return hash((self.breakpoints, self.densities))

    def __repr__(self):
        segs = ", ".join(
            f"{d} on [{self.breakpoints[i]},{self.breakpoints[i + 1]}]" for i, d in enumerate(self.densities)
        )
        return f"Measure({segs})"

    @classmethod
    def uniform(cls) -> "Measure":
        return cls((ZERO, ONE), (ONE,))

    @classmethod
    def uniform_on(cls, a: RationalLike, b: RationalLike) -> "Measure":
        """Uniform measure supported on [a,b] inside [0,1]."""
        a, b = _frac(a, "a"), _frac(b, "b")
        if not (ZERO <= a < b <= ONE):
            raise ValidationError("support", f"need 0 <= a < b <= 1, got [{a},{b}]")
        d = ONE / (b - a)
        bps = [x for x in (ZERO, a, b, ONE)]
        bps = sorted(set(bps))
        dens = [d if a <= lo < b else ZERO for lo in bps[:-1]]
        return cls(bps, dens)

    # -- point queries ----------------------------------------------------

    def cdf(self, theta: RationalLike) -> Fraction:
        """Mass of [0, theta], exactly."""
        t = _frac(theta, "theta")
        if not (ZERO <= t <= ONE):
            raise PreconditionError(f"cdf argument must lie in [0,1], got {t}")
        j = bisect_right(self.breakpoints, t) - 1
        if j >= len(self.densities):
            j = len(self.densities) - 1
        return self._cum[j] + self.densities[j] * (t - self.breakpoints[j])

    def quantile(self, p: RationalLike) -> Fraction:
        """Minimal theta with cdf(theta) = p.

        On plateaus (zero-density stretches) this is the left end of the
        preimage, so every inversion in the package standardises on
        minimal witnesses.
        """
        p = _frac(p, "p")
        if not (ZERO <= p <= ONE):
            raise PreconditionError(f"quantile argument must lie in [0,1], got {p}")
        j = bisect_left(self._cum, p)
        if j == 0:
            return ZERO
        d = self.densities[j - 1]
        return self.breakpoints[j - 1] + (p - self._cum[j - 1]) / d

    def interval_mass(self, a: RationalLike, b: RationalLike) -> Fraction:
        """Mass of the interval from a to b; endpoint openness is immaterial."""
        a, b = _frac(a, "a"), _frac(b, "b")
        if a > b:
            raise PreconditionError(f"interval endpoints out of order: {a} > {b}")
        return self.cdf(b) - self.cdf(a)

    def arc_mass(self, arc: CircleArc) -> Fraction:
        """Mass of a circle arc, splitting at the gluing point when it wraps."""
        e = arc.start + arc.length
        if e <= ONE:
            return self.interval_mass(arc.start, e)
        return self.interval_mass(arc.start, ONE) + self.interval_mass(ZERO, e - ONE)

    # -- derived measures --------------------------------------------------

    def reflected(self) -> "Measure":
        """Image under theta -> 1 - theta."""
        bps = tuple(ONE - b for b in reversed(self.breakpoints))
        return Measure(bps, tuple(reversed(self.densities)))

    def rotated(self, offset: RationalLike) -> "Measure":
        """Image under theta -> theta + offset mod 1 (circle rotation)."""
        off = _frac(offset, "offset") % ONE
        if off == ZERO:
            return self
        pieces = []
        for i, d in enumerate(self.densities):
            lo = self.breakpoints[i] + off
            hi = self.breakpoints[i + 1] + off
            if hi <= ONE:
                pieces.append((lo, hi, d))
            elif lo >= ONE:
                pieces.append((lo - ONE, hi - ONE, d))
            else:
                pieces.append((lo, ONE, d))
                pieces.append((ZERO, hi - ONE, d))
        pieces.sort()
        bps = [ZERO] + [hi for _, hi, _ in pieces]
        dens = [d for _, _, d in pieces]
        return Measure(bps, dens)

    def restricted(self, a: RationalLike, b: RationalLike) -> "Measure":
        """Renormalised restriction to [a,b], mapped affinely onto [0,1].

        The restriction must carry positive mass.
        """
        a, b = _frac(a, "a"), _frac(b, "b")
        if not (ZERO <= a < b <= ONE):
            raise PreconditionError(f"need 0 <= a < b <= 1, got [{a},{b}]")
        total = self.interval_mass(a, b)
        if total == ZERO:
            raise PreconditionError(f"restriction to [{a},{b}] has zero mass")
        width = b - a
        bps = [ZERO]
        dens = []
        inner = [x for x in self.breakpoints if a < x < b]
        for lo, hi in zip([a] + inner, inner + [b]):
            j = bisect_right(self.breakpoints, lo) - 1
            bps.append((hi - a) / width)
            dens.append(self.densities[j] * width / total)
        return Measure(bps, dens)

    def support_segments(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Maximal intervals of positive density."""
        out = []
        for i, d in enumerate(self.densities):
            if d > ZERO:
                lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
                if out and out[-1][1] == lo:
                    out[-1] = (out[-1][0], hi)
                else:
                    out.append((lo, hi))
        return tuple(out)


@dataclass(frozen=True)
class Crossings:
    """Solution set of cdf_1(theta) = cdf_2(theta) on an interval.

    The difference of two piecewise-linear CDFs is piecewise linear, so
    the equality set is a finite union of isolated ``points`` and closed
    coincidence ``intervals``, both sorted ascending.
    """

    points: tuple[Fraction, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]

    @property
    def empty(self) -> bool:
        return not self.points and not self.intervals

    def rightmost(self) -> Fraction | None:
        """Largest element of the solution set, or None if empty."""
        best = None
        if self.points:
            best = self.points[-1]
        if self.intervals:
            hi = self.intervals[-1][1]
            best = hi if best is None or hi > best else best
        return best

    def elements(self) -> tuple[Fraction, ...]:
        """Points and interval endpoints merged in ascending order."""
        out = list(self.points)
        for lo, hi in self.intervals:
            out.extend((lo, hi))
        return tuple(sorted(set(out)))


def crossings(m1: Measure, m2: Measure, a: RationalLike, b: RationalLike) -> Crossings:
    """All theta in [a,b] where the two CDFs agree, exactly.

    Works cell by cell on the union of both breakpoint grids: on each
    cell the CDF difference is affine, so it either vanishes identically
    (a coincidence interval), at a single root, or nowhere.
    """
    a, b = _frac(a, "a"), _frac(b, "b")
    if a > b:
        raise PreconditionError(f"interval endpoints out of order: {a} > {b}")
    grid = sorted({a, b} | {x for x in m1.breakpoints + m2.breakpoints if a < x < b})
    points: list[Fraction] = []
    spans: list[list[Fraction]] = []

    def add_point(p: Fraction):
        if spans and spans[-1][0] <= p <= spans[-1][1]:
            return
        if not points or points[-1] != p:
            points.append(p)

    def add_span(lo: Fraction, hi: Fraction):
        if spans and spans[-1][1] == lo:
            spans[-1][1] = hi
        else:
            spans.append([lo, hi])

    if a == b:
        if m1.cdf(a) == m2.cdf(a):
            points.append(a)
        return Crossings(tuple(points), ())

    for u, v in zip(grid, grid[1:]):
        fu = m1.cdf(u) - m2.cdf(u)
        fv = m1.cdf(v) - m2.cdf(v)
        if fu == ZERO and fv == ZERO:
            add_span(u, v)
        elif fu == ZERO:
            add_point(u)
        elif fv == ZERO:
            add_point(v)
        elif (fu < ZERO) != (fv < ZERO):
            slope = (fv - fu) / (v - u)
            add_point(u - fu / slope)

    pts = tuple(p for p in points if not any(lo <= p <= hi for lo, hi in spans))
    return Crossings(tuple(sorted(pts)), tuple((lo, hi) for lo, hi in spans))


def merge_breakpoints(measures: Iterable[Measure]) -> tuple[Fraction, ...]:
    """Sorted union of the breakpoint grids of several measures."""
    grid: set[Fraction] = set()
    for m in measures:
        grid.update(m.breakpoints)
    return tuple(sorted(grid))
