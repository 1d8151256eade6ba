"""Probability measures as atoms plus uniform-density segments.

This is the concrete measure family everything else is built on, and the
geometric (length-counting) evaluation of mu on the interval algebra is
the brute-force side of most oracles: it never touches the cdf code.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import ConstructionError
from .intervals import (
    Interval, IntervalUnion, as_union, canonicalize_interval, interval_length,
)
from .spaces import LESS, LexSpace, OrderedSpace, RealIntervalSpace

#: Construction tolerance for the total mass; a violation is an error.
MASS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Atom:
    """A point with positive mass."""

    at: object
    mass: float


@dataclass(frozen=True)
class DensitySegment:
    """Uniform mass over a real-interval region (or one lex fiber)."""

    interval: Interval
    mass: float
    density: float


class MeasureSpec:
    """Validated, immutable description of a probability measure.

    Atoms may sit inside segments (mixed measures); segments must be
    pairwise disjoint and carry positive length.
    """

    def __init__(self, space: OrderedSpace, atoms: Sequence[Tuple[object, float]] = (),
                 segments: Sequence[Tuple[Interval, float]] = ()):
        self.space = space
        seen = []
        atom_list = []
        for at, mass in atoms:
            if not space.contains(at):
                raise ConstructionError(f"atom at {at!r} lies outside the space")
            if not mass > 0:
                raise ConstructionError(f"atom at {at!r} must have positive mass")
            if any(space._cmp(at, other) == 0 for other in seen):
                raise ConstructionError(f"duplicate atom at {at!r}")
            seen.append(at)
            atom_list.append(Atom(at, float(mass)))
        atom_list.sort(key=lambda a: _sort_key(space, a.at))

        if segments and not isinstance(space, (RealIntervalSpace, LexSpace)):
            raise ConstructionError("density segments need a real-interval region")
        seg_list = []
        for interval, mass in segments:
            canon = canonicalize_interval(space, interval)
            if canon is None:
                raise ConstructionError(f"segment {interval} is empty")
            if not mass > 0:
                raise ConstructionError(f"segment {canon} must have positive mass")
            length = interval_length(space, canon)
            if not length > 0:
                raise ConstructionError(f"segment {canon} has zero length")
            seg_list.append(DensitySegment(canon, float(mass), float(mass) / length))
        for i, a in enumerate(seg_list):
            for b in seg_list[i + 1:]:
                ua = IntervalUnion(space, (a.interval,))
                ub = IntervalUnion(space, (b.interval,))
                inter = ua.intersect(ub)
                if any(interval_length(space, iv) > 0 for iv in inter.intervals):
                    raise ConstructionError(f"segments {a.interval} and {b.interval} overlap")
        seg_list.sort(key=lambda s: _sort_key(space, s.interval.lo))

        total = sum(a.mass for a in atom_list) + sum(s.mass for s in seg_list)
        if not atom_list and not seg_list:
            raise ConstructionError("measure.total_mass: empty measure specification")
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ConstructionError(f"measure.total_mass: masses sum to {total!r}, not 1")
        self.atoms: Tuple[Atom, ...] = tuple(atom_list)
        self.segments: Tuple[DensitySegment, ...] = tuple(seg_list)

    def atom_mass_at(self, x) -> float:
        for a in self.atoms:
            if self.space._cmp(a.at, x) == 0:
                return a.mass
        return 0.0

    @property
    def max_density(self) -> float:
        return max((s.density for s in self.segments), default=0.0)


def _sort_key(space, endpoint):
    # endpoints here are always finite points or quasi-points
    if isinstance(space, LexSpace):
        o, t = endpoint
        return (space.outer._index[o], t)
    if isinstance(space, RealIntervalSpace):
        return (float(endpoint),)
    if hasattr(space, "_index"):
        return (space._index[endpoint],)
    return (endpoint,)


def measure_of(spec: MeasureSpec, subset) -> float:
    """mu of a set in the algebra, evaluated geometrically."""
    u = as_union(spec.space, subset)
    total = 0.0
    for a in spec.atoms:
        if u.member(a.at):
            total += a.mass
    for s in spec.segments:
        seg_union = IntervalUnion(spec.space, (s.interval,))
        overlap = seg_union.intersect(u)
        for piece in overlap.intervals:
            total += s.density * interval_length(spec.space, piece)
    return total


def atom_set(spec: MeasureSpec) -> List[Tuple[object, float]]:
    """The atoms of the measure, sorted along the order."""
    return [(a.at, a.mass) for a in spec.atoms]
