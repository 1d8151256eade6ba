"""The pseudo-inverse G(r) = inf of the super-level set of F at r.

G is assembled as a closed-form piece table: a constant piece per atom
(its plateau of quantile levels) and an affine piece per uniform segment
run, split wherever an atom sits inside a segment.  The definitional
grid scan lives in the oracle module and is kept independent so the
closed form is genuinely tested.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .cdf import Cdf
from .errors import DomainError, PropositionViolation, UndefinedPointError
from .intervals import Interval, IntervalUnion, interval_length, singleton
from .measure import _sort_key, atom_set
from .spaces import EQUAL, GREATER, LESS, LexSpace, OrderedSpace, RealIntervalSpace


@dataclass(frozen=True)
class UnitInterval:
    """A sub-interval of [0,1], used for plateaus and G-preimages."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    @property
    def is_empty(self) -> bool:
        if self.hi < self.lo:
            return True
        return self.hi == self.lo and not (self.lo_closed and self.hi_closed)

    @property
    def length(self) -> float:
        return max(self.hi - self.lo, 0.0)

    def contains(self, r: float) -> bool:
        if r < self.lo or (r == self.lo and not self.lo_closed):
            return False
        if r > self.hi or (r == self.hi and not self.hi_closed):
            return False
        return True


EMPTY_UNIT_INTERVAL = UnitInterval(0.0, 0.0, False, False)


@dataclass(frozen=True)
class GPiece:
    """One closed-form piece of G over the quantile range ]r_lo, r_hi]."""

    kind: str               # "atom" | "affine"
    r_lo: float
    r_hi: float
    point: object = None    # atom pieces
    region: object = None   # affine pieces: outer label for lex, else None
    u: float = 0.0          # affine: inner coordinates of the run
    v: float = 0.0
    density: float = 0.0

    def point_at(self, space, r):
        if self.kind == "atom":
            return self.point
        coord = self.u + (r - self.r_lo) / self.density
        coord = min(max(coord, self.u), self.v)
        return coord if self.region is None else (self.region, coord)


def _segment_region(space, seg):
    """(region, u, v) inner coordinates of a density segment."""
    if isinstance(space, LexSpace):
        (o, u), (_, v) = seg.interval.lo, seg.interval.hi
        return o, float(u), float(v)
    return None, float(seg.interval.lo), float(seg.interval.hi)


def _build_pieces(space, spec) -> List[GPiece]:
    items = []  # (sort_key, tiebreak, payload)
    consumed = set()
    for seg in spec.segments:
        region, u, v = _segment_region(space, seg)
        cuts = []
        for idx, a in enumerate(spec.atoms):
            if isinstance(space, LexSpace):
                o, t = a.at
                if o != region:
                    continue
            else:
                t = float(a.at)
            if u <= t <= v:
                cuts.append(t)
                consumed.add(idx)
        coords = sorted({u, v, *cuts})
        for lo_c, hi_c in zip(coords, coords[1:]):
            start = lo_c if region is None else (region, lo_c)
            items.append((_sort_key(space, start), 1,
                          ("affine", region, lo_c, hi_c, seg.density)))
    for idx, a in enumerate(spec.atoms):
        items.append((_sort_key(space, a.at), 0, ("atom", a.at, a.mass)))
    items.sort(key=lambda it: (it[0], it[1]))

    pieces: List[GPiece] = []
    c = 0.0
    for _, _, payload in items:
        if payload[0] == "atom":
            _, at, mass = payload
            pieces.append(GPiece("atom", c, c + mass, point=at))
            c += mass
        else:
            _, region, lo_c, hi_c, density = payload
            mass = density * (hi_c - lo_c)
            pieces.append(GPiece("affine", c, c + mass, region=region,
                                 u=lo_c, v=hi_c, density=density))
            c += mass
    return pieces


class PseudoInverse:
    """Partial map G from [0,1] into the space, with explicit verdicts."""

    def __init__(self, cdf: Cdf):
        self.cdf = cdf
        self.space = cdf.space
        self.pieces = _build_pieces(cdf.space, cdf.spec)
        self._r_his = [p.r_hi for p in self.pieces]

    # -- evaluation ----------------------------------------------------
    def try_eval(self, r: float) -> Optional[object]:
        """G(r) as a point of X, or None when the infimum is not in X."""
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"quantile level {r!r} outside [0, 1]")
        if r == 0.0:
            # the super-level set at 0 is all of X
            return self.space.minimum()
        idx = bisect.bisect_left(self._r_his, r)
        if idx >= len(self.pieces):
            idx = len(self.pieces) - 1
        point = self.pieces[idx].point_at(self.space, r)
        return point if self.space.contains(point) else None

    def eval(self, r: float):
        point = self.try_eval(r)
        if point is None:
            raise UndefinedPointError(self.undefined_reason(r))
        return point

    def is_defined(self, r: float) -> bool:
        return self.try_eval(r) is not None

    def undefined_reason(self, r: float) -> str:
        if r == 0.0:
            return ("G(0) is the infimum of all of X, and the space "
                    f"{self.space.describe()} has no minimum")
        return (f"the super-level set at level {r!r} has an infimum at an "
                f"excluded boundary of {self.space.describe()}")

    def domain_description(self) -> str:
        if self.space.complete:
            return "[0,1]"
        missing = [r for r in (0.0, 1.0) if not self.is_defined(r)]
        if not missing:
            return "[0,1]"
        return "[0,1] minus " + ", ".join(repr(r) for r in missing)

    # -- order-theoretic diagnostics ----------------------------------
    def galois_check(self, r: float, x) -> Optional[bool]:
        """(G(r) <= x) with the adjunction (r <= F(x)) cross-asserted.

        Returns None (inapplicable) when G is undefined at r.
        """
        self.space.require(x)
        point = self.try_eval(r)
        if point is None:
            return None
        left = self.space._cmp(point, x) != GREATER
        right = r <= self.cdf.eval_F(x)
        if left != right:
            raise PropositionViolation(
                f"Galois adjunction broken at r={r!r}, x={x!r}: "
                f"G(r)={point!r}, F(x)={self.cdf.eval_F(x)!r}")
        return left

    def sandwich_check(self, r: float) -> Tuple[float, float]:
        """(F_minus(G(r)), F(G(r))) with F_minus <= r <= F asserted."""
        point = self.eval(r)
        lo = self.cdf.eval_F_minus(point)
        hi = self.cdf.eval_F(point)
        if not (lo <= r + 1e-12 and r <= hi + 1e-12):
            raise PropositionViolation(
                f"sandwich broken at r={r!r}: ({lo}, {hi}) around G(r)={point!r}")
        if hi > r + 1e-9 and self.cdf.spec.atom_mass_at(point) <= 0.0:
            raise PropositionViolation(
                f"F(G(r)) > r at r={r!r} without an atom at G(r)={point!r}")
        return lo, hi

    def plateau_of(self, x) -> UnitInterval:
        """Quantile levels all mapping to x: ]F_minus(x), F(x)]."""
        self.space.require(x)
        return UnitInterval(self.cdf.eval_F_minus(x), self.cdf.eval_F(x), False, True)

    def preimage_open_interval(self, a, b) -> UnitInterval:
        """G^{-1}(]a,b[) = ]F(a), F_minus(b)| with the bar decided per query.

        The right endpoint is included exactly when G(F_minus(b)) lands
        inside ]a,b[; that membership test resolves the wildcard.
        """
        self.space.require(a)
        self.space.require(b)
        if self.space._cmp(a, b) != LESS:
            raise DomainError("preimage needs a < b")
        lo = self.cdf.eval_F(a)
        hi = self.cdf.eval_F_minus(b)
        if hi <= lo:
            return UnitInterval(lo, lo, False, False)
        point = self.try_eval(hi)
        hi_closed = point is not None and \
            self.space._cmp(a, point) == LESS and self.space._cmp(point, b) == LESS
        return UnitInterval(lo, hi, False, hi_closed)


# ---------------------------------------------------------------------------
# injectivity / bijectivity diagnostics


def is_G_injective(gi: PseudoInverse) -> Tuple[bool, Optional[UnitInterval]]:
    """G is injective exactly when the measure has no atoms."""
    atoms = atom_set(gi.cdf.spec)
    if not atoms:
        return True, None
    return False, gi.plateau_of(atoms[0][0])


def _piece_has_two_points(space, piece: Interval) -> bool:
    if isinstance(space, RealIntervalSpace):
        return float(piece.hi) - float(piece.lo) > 0.0
    if isinstance(space, LexSpace):
        if piece.lo[0] != piece.hi[0]:
            return True
        return float(piece.hi[1]) - float(piece.lo[1]) > 0.0
    return space._cmp(piece.lo, piece.hi) == LESS


def _witness_top(space, piece: Interval, spec):
    """A point b inside/at the top of a null piece with mu(]lo, b]) = 0."""
    hi = piece.hi
    if space.contains(hi) and spec.atom_mass_at(hi) == 0.0:
        return hi
    if isinstance(space, RealIntervalSpace):
        return (float(piece.lo) + float(hi)) / 2.0
    if isinstance(space, LexSpace):
        o2, t2 = hi
        fib = space.fiber(o2)
        if isinstance(piece.lo, tuple) and piece.lo[0] == o2:
            return (o2, (piece.lo[1] + t2) / 2.0)
        return (o2, (fib.lo + t2) / 2.0)
    return space.predecessor(hi)


def is_F_injective(cdf: Cdf) -> Tuple[bool, Optional[Interval]]:
    """F is injective iff every half-open ]a,b] carries mass.

    The witness on failure is a maximal null half-open interval.
    """
    space, spec = cdf.space, cdf.spec
    support = IntervalUnion(
        space,
        [s.interval for s in spec.segments] + [singleton(a.at) for a in spec.atoms],
    )
    for piece in support.complement().intervals:
        if _piece_has_two_points(space, piece):
            b = _witness_top(space, piece, spec)
            return False, Interval(piece.lo, b, False, True)
    # a point with a predecessor and no atom is a one-step null interval
    for x in space.predecessor_points():
        if spec.atom_mass_at(x) == 0.0:
            return False, Interval(space.predecessor(x), x, False, True)
    return True, None


def _points_equal(space, p, q, tol=1e-9) -> bool:
    if isinstance(space, RealIntervalSpace):
        return abs(float(p) - float(q)) <= tol
    if isinstance(space, LexSpace):
        return p[0] == q[0] and abs(p[1] - q[1]) <= tol
    return space._cmp(p, q) == EQUAL


@dataclass(frozen=True)
class BijectivityReport:
    """The four equivalent conditions, evaluated independently."""

    identities_hold: bool        # F∘G = id on A and G∘F = id on X
    f_injective_onto: bool       # F injective and F(X) = A
    g_bijective: bool            # sampled collision + coverage testing
    support_atom_condition: bool # every ]a,b] charged and no atoms
    details: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return (self.identities_hold == self.f_injective_onto
                == self.g_bijective == self.support_atom_condition)

    @property
    def bijective(self) -> bool:
        return self.g_bijective


def bijectivity_report(gi: PseudoInverse, n_probes: int = 200,
                       seed: int = 7, tol: float = 1e-9) -> BijectivityReport:
    import itertools
    import random as _random
    from .oracle import random_point

    cdf, space = gi.cdf, gi.space
    rng = _random.Random(seed)
    xs = list(itertools.islice(space.dense_points(), 64))
    xs += [random_point(space, rng) for _ in range(n_probes)]
    rs = [rng.random() for _ in range(n_probes)] + [0.25, 0.5, 0.75, 1.0]

    def fg_identity(r):
        point = gi.try_eval(r)
        return point is not None and abs(cdf.eval_F(point) - r) <= tol

    def gf_identity(x):
        point = gi.try_eval(cdf.eval_F(x))
        return point is not None and _points_equal(space, point, x, tol)

    fog = all(fg_identity(r) for r in rs)
    gof = all(gf_identity(x) for x in xs)
    identities = fog and gof

    f_inj, f_witness = is_F_injective(cdf)
    f_onto = f_inj and fog and all(gi.is_defined(cdf.eval_F(x)) for x in xs)

    # G injectivity: random pairs plus deterministic probes inside plateaus
    pairs = []
    for _ in range(n_probes):
        r, s = sorted((rng.random(), rng.random()))
        if s - r > 1e-7:
            pairs.append((r, s))
    for at, _ in atom_set(cdf.spec):
        plat = gi.plateau_of(at)
        if plat.length > 0:
            mid = (plat.lo + plat.hi) / 2
            pairs.append((mid - plat.length / 4, mid + plat.length / 4))
    injective = True
    for r, s in pairs:
        p, q = gi.try_eval(r), gi.try_eval(s)
        if p is not None and q is not None and space._cmp(p, q) == EQUAL:
            injective = False
            break
    surjective = gof
    g_bij = injective and surjective

    no_atoms = not atom_set(cdf.spec)
    cond4 = f_inj and no_atoms

    report = BijectivityReport(
        identities_hold=identities,
        f_injective_onto=f_onto,
        g_bijective=g_bij,
        support_atom_condition=cond4,
        details={
            "F_injective": f_inj,
            "F_injectivity_witness": f_witness,
            "G_injective_sampled": injective,
            "G_surjective_sampled": surjective,
            "atom_free": no_atoms,
        },
    )
    if not report.consistent:
        raise PropositionViolation(
            f"bijectivity conditions disagree: {report}")
    return report
