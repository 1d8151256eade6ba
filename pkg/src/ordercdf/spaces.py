"""Pluggable linearly ordered universes.

Four kinds of space are supported: finite label chains, inclusive integer
ranges, real intervals (with either boundary optionally excluded) and
lexicographic products of a finite chain with one real-interval fiber per
outer label.  Points are plain Python values: ``str`` for finite chains,
``int`` for integer ranges, ``float`` for real intervals and an
``(outer, inner)`` tuple for lex products.

Space descriptions are immutable and every operation is a pure function,
so instances can be shared freely across threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numbers

from .errors import ConfigError, DomainError

#: Ordering verdicts returned by :meth:`OrderedSpace.compare`.
LESS, EQUAL, GREATER = -1, 0, 1

#: Marker used as an isolation witness when the point is an extreme of X.
MIN_MARKER = "min"
MAX_MARKER = "max"


@dataclass(frozen=True)
class IsolationReport:
    """Left/right isolation verdict for one point.

    ``left_witness`` is the predecessor (the ``z`` with an empty open gap
    ``]z, x[``), the string ``"min"`` when the point is the minimum, or
    ``None`` when the point is not left-isolated; symmetrically on the
    right.
    """

    point: object
    left_isolated: bool
    right_isolated: bool
    left_witness: object = None
    right_witness: object = None

    @property
    def isolated(self) -> bool:
        return self.left_isolated and self.right_isolated


class OrderedSpace:
    """Abstract total order with optional extremes and a dense witness."""

    kind: str = "abstract"

    # -- universe -----------------------------------------------------
    def contains(self, x) -> bool:
        raise NotImplementedError

    def require(self, x):
        if not self.contains(x):
            raise DomainError(f"point {x!r} is not in the {self.kind} space {self.describe()}")
        return x

    def describe(self) -> str:
        raise NotImplementedError

    # -- order --------------------------------------------------------
    def compare(self, x, y) -> int:
        """Total-order comparison; raises DomainError off the universe."""
        self.require(x)
        self.require(y)
        return self._cmp(x, y)

    def _cmp(self, x, y) -> int:
        """Comparison without the universe check.

        Also accepts "quasi points" (excluded boundary values) that the
        interval algebra uses as canonical endpoints.
        """
        raise NotImplementedError

    def minimum(self):
        return None

    def maximum(self):
        return None

    @property
    def complete(self) -> bool:
        """Every nonempty representable subset has an inf and a sup in X."""
        raise NotImplementedError

    def successor(self, x) -> Optional[object]:
        """Immediate next point when ``]x, succ[`` is empty, else None."""
        return None

    def predecessor(self, x) -> Optional[object]:
        return None

    # -- separability -------------------------------------------------
    def dense_points(self) -> Iterator[object]:
        """Deterministic enumeration of a dense (here: countable) subset.

        Finite kinds enumerate the whole universe; real segments use the
        dyadic rationals level by level, smallest numerator first, so the
        enumeration probes both ends of every segment early.
        """
        raise NotImplementedError

    def predecessor_points(self) -> Iterator[object]:
        """Every point that has a predecessor (an empty gap below it)."""
        return iter(())

    # -- text syntax ---------------------------------------------------
    def parse_point(self, text: str):
        raise NotImplementedError

    def format_point(self, x) -> str:
        raise NotImplementedError


def _dyadics(lo: float, hi: float, include_lo: bool, include_hi: bool) -> Iterator[float]:
    if include_lo:
        yield lo
    if include_hi and hi != lo:
        yield hi
    width = hi - lo
    level = 1
    while True:
        denom = 1 << level
        step = width / denom
        for k in range(1, denom, 2):
            yield lo + k * step
        level += 1


class FiniteSpace(OrderedSpace):
    """A finite chain given by an ordered list of distinct labels."""

    kind = "finite"

    def __init__(self, labels):
        labels = tuple(labels)
        if not labels:
            raise ConfigError("finite space needs at least one label")
        if len(set(labels)) != len(labels):
            raise ConfigError("finite space labels must be distinct")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    def describe(self):
        return "{" + "<".join(self.labels) + "}"

    def contains(self, x):
        return x in self._index

    def _cmp(self, x, y):
        ix, iy = self._index[x], self._index[y]
        return LESS if ix < iy else (EQUAL if ix == iy else GREATER)

    def minimum(self):
        return self.labels[0]

    def maximum(self):
        return self.labels[-1]

    @property
    def complete(self):
        return True

    def successor(self, x):
        i = self._index[self.require(x)]
        return self.labels[i + 1] if i + 1 < len(self.labels) else None

    def predecessor(self, x):
        i = self._index[self.require(x)]
        return self.labels[i - 1] if i > 0 else None

    def dense_points(self):
        return iter(self.labels)

    def predecessor_points(self):
        return iter(self.labels[1:])

    def parse_point(self, text):
        text = text.strip()
        if text not in self._index:
            raise DomainError(f"unknown label {text!r}")
        return text

    def format_point(self, x):
        return str(x)


class IntRangeSpace(OrderedSpace):
    """Integers from lo to hi, both inclusive."""

    kind = "int_range"

    def __init__(self, lo: int, hi: int):
        if lo > hi:
            raise ConfigError(f"empty integer range {lo}..{hi}")
        self.lo = int(lo)
        self.hi = int(hi)

    def describe(self):
        return f"{self.lo}..{self.hi}"

    def contains(self, x):
        return isinstance(x, numbers.Integral) and not isinstance(x, bool) and self.lo <= x <= self.hi

    def _cmp(self, x, y):
        return LESS if x < y else (EQUAL if x == y else GREATER)

    def minimum(self):
        return self.lo

    def maximum(self):
        return self.hi

    @property
    def complete(self):
        return True

    def successor(self, x):
        self.require(x)
        return x + 1 if x < self.hi else None

    def predecessor(self, x):
        self.require(x)
        return x - 1 if x > self.lo else None

    def dense_points(self):
        return iter(range(self.lo, self.hi + 1))

    def predecessor_points(self):
        return iter(range(self.lo + 1, self.hi + 1))

    def parse_point(self, text):
        try:
            value = int(text.strip())
        except ValueError as exc:
            raise DomainError(f"not an integer: {text!r}") from exc
        return self.require(value)

    def format_point(self, x):
        return str(x)


class RealIntervalSpace(OrderedSpace):
    """A real interval [lo, hi] with either boundary optionally excluded.

    Comparisons are exact binary64 comparisons; no epsilon enters the
    order itself.
    """

    kind = "real_interval"

    def __init__(self, lo: float, hi: float, include_lo: bool = True, include_hi: bool = True):
        lo, hi = float(lo), float(hi)
        if not lo < hi:
            raise ConfigError(f"real interval needs lo < hi, got [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.include_lo = bool(include_lo)
        self.include_hi = bool(include_hi)

    def describe(self):
        left = "[" if self.include_lo else "]"
        right = "]" if self.include_hi else "["
        return f"{left}{self.lo}, {self.hi}{right}"

    def contains(self, x):
        if not isinstance(x, numbers.Real) or isinstance(x, bool):
            return False
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.include_lo:
            return False
        if x == self.hi and not self.include_hi:
            return False
        return True

    def _cmp(self, x, y):
        return LESS if x < y else (EQUAL if x == y else GREATER)

    def minimum(self):
        return self.lo if self.include_lo else None

    def maximum(self):
        return self.hi if self.include_hi else None

    @property
    def complete(self):
        return self.include_lo and self.include_hi

    def dense_points(self):
        return _dyadics(self.lo, self.hi, self.include_lo, self.include_hi)

    def parse_point(self, text):
        try:
            value = float(text.strip())
        except ValueError as exc:
            raise DomainError(f"not a number: {text!r}") from exc
        return self.require(value)

    def format_point(self, x):
        return repr(float(x))


class LexSpace(OrderedSpace):
    """Lexicographic product: finite outer chain, real-interval fibers.

    A point is an ``(outer_label, inner_value)`` tuple.  This covers the
    non-real separable examples while keeping every inf/sup computable in
    closed form.
    """

    kind = "lex"

    def __init__(self, outer_labels, fibers):
        self.outer = FiniteSpace(outer_labels)
        fibers = dict(fibers)
        missing = [o for o in self.outer.labels if o not in fibers]
        if missing:
            raise ConfigError(f"missing fiber spec for outer labels {missing}")
        self.fibers = {o: fibers[o] for o in self.outer.labels}
        for o, fib in self.fibers.items():
            if not isinstance(fib, RealIntervalSpace):
                raise ConfigError(f"fiber for {o!r} must be a real interval")

    def describe(self):
        parts = ", ".join(f"{o}:{self.fibers[o].describe()}" for o in self.outer.labels)
        return "lex(" + parts + ")"

    def fiber(self, outer) -> RealIntervalSpace:
        try:
            return self.fibers[outer]
        except KeyError as exc:
            raise DomainError(f"unknown outer label {outer!r}") from exc

    def contains(self, x):
        if not (isinstance(x, tuple) and len(x) == 2):
            return False
        o, t = x
        return o in self.fibers and self.fibers[o].contains(t)

    def _cmp(self, x, y):
        co = self.outer._cmp(x[0], y[0])
        if co != EQUAL:
            return co
        t, s = x[1], y[1]
        return LESS if t < s else (EQUAL if t == s else GREATER)

    def minimum(self):
        first = self.outer.labels[0]
        m = self.fibers[first].minimum()
        return (first, m) if m is not None else None

    def maximum(self):
        last = self.outer.labels[-1]
        m = self.fibers[last].maximum()
        return (last, m) if m is not None else None

    @property
    def complete(self):
        return all(f.complete for f in self.fibers.values())

    def successor(self, x):
        self.require(x)
        o, t = x
        fib = self.fibers[o]
        if t != fib.hi or not fib.include_hi:
            return None
        nxt = self.outer.successor(o)
        if nxt is None:
            return None
        nfib = self.fibers[nxt]
        # ](o, hi), (nxt, lo)[ is empty; the successor must itself be in X.
        return (nxt, nfib.lo) if nfib.include_lo else None

    def predecessor(self, x):
        self.require(x)
        o, t = x
        fib = self.fibers[o]
        if t != fib.lo or not fib.include_lo:
            return None
        prv = self.outer.predecessor(o)
        if prv is None:
            return None
        pfib = self.fibers[prv]
        return (prv, pfib.hi) if pfib.include_hi else None

    def dense_points(self):
        gens = [(o, self.fibers[o].dense_points()) for o in self.outer.labels]
        while True:
            for o, gen in gens:
                yield (o, next(gen))

    def predecessor_points(self):
        for o in self.outer.labels[1:]:
            fib = self.fibers[o]
            if fib.include_lo:
                x = (o, fib.lo)
                if self.predecessor(x) is not None:
                    yield x

    def parse_point(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise DomainError(f"lex point must look like '(outer,inner)': {text!r}")
        body = text[1:-1]
        if "," not in body:
            raise DomainError(f"lex point must look like '(outer,inner)': {text!r}")
        o, t = body.split(",", 1)
        o = o.strip()
        point = (o, self.fiber(o).parse_point(t))
        return self.require(point)

    def format_point(self, x):
        o, t = x
        return f"({o},{repr(float(t))})"


def classify_isolation(space: OrderedSpace, x) -> IsolationReport:
    """Left/right isolation of ``x``: an extreme point or an empty gap."""
    space.require(x)
    mn, mx = space.minimum(), space.maximum()
    left = right = False
    lw = rw = None
    if mn is not None and space._cmp(x, mn) == EQUAL:
        left, lw = True, MIN_MARKER
    else:
        pred = space.predecessor(x)
        if pred is not None:
            left, lw = True, pred
    if mx is not None and space._cmp(x, mx) == EQUAL:
        right, rw = True, MAX_MARKER
    else:
        succ = space.successor(x)
        if succ is not None:
            right, rw = True, succ
    return IsolationReport(x, left, right, lw, rw)


def space_from_config(block: dict) -> OrderedSpace:
    """Build a space from its config-file block (see the cli module)."""
    if not isinstance(block, dict) or "kind" not in block:
        raise ConfigError("space block must be an object with a 'kind' field")
    kind = block["kind"]
    try:
        if kind == "finite":
            return FiniteSpace(block["labels"])
        if kind == "int_range":
            return IntRangeSpace(block["lo"], block["hi"])
        if kind == "real_interval":
            return RealIntervalSpace(
                block["lo"], block["hi"],
                block.get("include_lo", True), block.get("include_hi", True),
            )
        if kind == "lex":
            fibers = {
                o: RealIntervalSpace(
                    spec["lo"], spec["hi"],
                    spec.get("include_lo", True), spec.get("include_hi", True),
                )
                for o, spec in block["fibers"].items()
            }
            return LexSpace(block["outer"], fibers)
    except KeyError as exc:
        raise ConfigError(f"space.{exc.args[0]}: missing field for kind {kind!r}") from exc
    raise ConfigError(f"space.kind: unknown kind {kind!r}")


def space_to_config(space: OrderedSpace) -> dict:
    if isinstance(space, FiniteSpace):
        return {"kind": "finite", "labels": list(space.labels)}
    if isinstance(space, IntRangeSpace):
        return {"kind": "int_range", "lo": space.lo, "hi": space.hi}
    if isinstance(space, RealIntervalSpace):
        return {
            "kind": "real_interval", "lo": space.lo, "hi": space.hi,
            "include_lo": space.include_lo, "include_hi": space.include_hi,
        }
    if isinstance(space, LexSpace):
        return {
            "kind": "lex",
            "outer": list(space.outer.labels),
            "fibers": {
                o: {
                    "lo": f.lo, "hi": f.hi,
                    "include_lo": f.include_lo, "include_hi": f.include_hi,
                }
                for o, f in space.fibers.items()
            },
        }
    raise ConfigError(f"cannot serialize space of kind {space.kind!r}")
