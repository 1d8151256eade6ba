"""Inverse-transform sampling and quantile-side integration.

Sampling draws uniform levels in ]0,1] and maps them through G; it is
refused on incomplete spaces, where G can be undefined on a null set of
levels and the pushforward argument needs every draw to land in X.
Integration uses the identity  integral of g d(mu) = integral of g(G(t)) dt
over ]0,1[, evaluated piecewise: atom plateaus contribute exactly and
affine pieces get a composite midpoint rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .cdf import Cdf
from .errors import DomainError, IntegrandError, UnsupportedSpaceError
from .intervals import IntervalUnion, as_union
from .measure import measure_of
from .quantile import PseudoInverse

#: Identifier of the generator family recorded in sample metadata.
RNG_ID = "numpy:pcg64"


class Sampler:
    """Deterministic inverse-transform sampler bound to one pseudo-inverse."""

    def __init__(self, gi: PseudoInverse, seed: int):
        if not gi.space.complete:
            raise UnsupportedSpaceError(
                f"sampling needs a complete space; {gi.space.describe()} "
                "is missing suprema, so G is undefined at some levels")
        self.gi = gi
        self.seed = int(seed)
        self._rng = np.random.Generator(np.random.PCG64(self.seed))
        self.draws = 0

    def draw(self, n: int) -> List[object]:
        """n independent points with law mu, as points of the space."""
        if n < 0:
            raise DomainError("sample size must be nonnegative")
        levels = self._rng.random(n)
        self.draws += n
        out = []
        for r in levels:
            if r == 0.0:
                # levels live in ]0,1]: nudge the measure-zero draw inside
                r = np.nextafter(0.0, 1.0)
            out.append(self.gi.eval(float(r)))
        return out


def dkw_epsilon(n: int, alpha: float = 0.01) -> float:
    """Two-sided DKW band half-width at confidence 1 - alpha."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


def empirical_F(space, samples: Sequence[object], x) -> float:
    """Fraction of the sample at or below x."""
    from .spaces import GREATER
    space.require(x)
    if not samples:
        raise DomainError("empirical cdf of an empty sample")
    hits = sum(1 for s in samples if space._cmp(s, x) != GREATER)
    return hits / len(samples)


def atom_frequencies(space, samples: Sequence[object], atoms) -> List[Tuple[object, float]]:
    """Observed relative frequency of each atom point in the sample."""
    from .spaces import EQUAL
    n = len(samples)
    out = []
    for at, _ in atoms:
        hits = sum(1 for s in samples if space._cmp(s, at) == EQUAL)
        out.append((at, hits / n if n else 0.0))
    return out


def ks_statistic(cdf: Cdf, samples: Sequence[object], grid: Sequence[object]) -> float:
    """Max |F_hat - F| over the given evaluation grid."""
    return max(abs(empirical_F(cdf.space, samples, x) - cdf.eval_F(x)) for x in grid)


# ---------------------------------------------------------------------------
# pushforward identity


def pushforward_check(gi: PseudoInverse, subset) -> Tuple[float, float]:
    """(mu(A) geometrically, length of G^{-1}(A) via the cdf formulas).

    The quantile-side length of the preimage of one interval |a,b| is
    F*(b) - F*(a) with the star picked by the closure flag; summed over
    the canonical pieces of the union.
    """
    u = as_union(gi.space, subset)
    geometric = measure_of(gi.cdf.spec, u)
    quantile_side = 0.0
    for iv in u.intervals:
        lo_term = gi.cdf._mass_strictly_below(iv.lo) if iv.lo_closed \
            else gi.cdf._F(iv.lo)
        hi_term = gi.cdf._F(iv.hi) if iv.hi_closed \
            else gi.cdf._mass_strictly_below(iv.hi)
        quantile_side += max(hi_term - lo_term, 0.0)
    return geometric, quantile_side


# ---------------------------------------------------------------------------
# integration


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite midpoint settings for the affine pieces of G.

    ``split_at`` lists quantile levels where the integrand is known to be
    discontinuous (e.g. the F-value of an indicator's boundary); cells
    are aligned with them so the midpoint rule stays exact there.
    """

    subdivisions: int = 1024
    split_at: Tuple[float, ...] = ()


def integrate(gi: PseudoInverse, g: Callable[[object], float],
              quad: QuadratureSpec = QuadratureSpec()) -> float:
    """integral of g d(mu) computed as integral of g(G(t)) dt on ]0,1[."""
    total = 0.0
    for piece in gi.pieces:
        if piece.kind == "atom":
            try:
                value = g(piece.point)
            except Exception as exc:
                raise IntegrandError(piece.point, exc) from exc
            total += value * (piece.r_hi - piece.r_lo)
            continue
        cuts = sorted({piece.r_lo, piece.r_hi,
                       *(r for r in quad.split_at if piece.r_lo < r < piece.r_hi)})
        for lo, hi in zip(cuts, cuts[1:]):
            width = hi - lo
            if width <= 0.0:
                continue
            cells = max(1, round(quad.subdivisions * width / (piece.r_hi - piece.r_lo)))
            step = width / cells
            for i in range(cells):
                r = lo + (i + 0.5) * step
                point = piece.point_at(gi.space, r)
                try:
                    value = g(point)
                except Exception as exc:
                    raise IntegrandError(point, exc) from exc
                total += value * step
    return total


def indicator(space, subset) -> Callable[[object], float]:
    """Indicator integrand of a set in the algebra."""
    u = as_union(space, subset)
    return lambda x: 1.0 if u.member(x) else 0.0


def indicator_split_levels(gi: PseudoInverse, subset) -> Tuple[float, ...]:
    """Quantile levels where the indicator of the set jumps along G."""
    u = as_union(gi.space, subset)
    levels = []
    for iv in u.intervals:
        for endpoint, closed_side in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)):
            levels.append(gi.cdf._mass_strictly_below(endpoint))
            levels.append(gi.cdf._F(endpoint))
    return tuple(sorted(set(levels)))
