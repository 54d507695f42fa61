"""Core value types: Betti diagrams with periodic tails, degree sequences,
pure diagrams, and the partial orders on degree sequences.

A diagram stores a finite explicit window of columns plus a symbolic tail
rule, so functionals with infinite support and equality checks stay exact.
Entries are rationals and may be negative; nonnegativity is a cone
membership question, not a constructor constraint.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import (
    BettiConeError,
    IncompatibleTails,
    InvalidDegreeSequence,
    RingMismatch,
    TailError,
)
from .rings import EmbDim1, Quadric, RingSpec

INF = None  # sentinel for an absent homological step


# ---------------------------------------------------------------------------
# degree sequences

KIND_PD0 = "pd0"  # (d0, inf, inf, ...)
KIND_PD1 = "pd1"  # (d0, d1, inf, ...)          quadric only
KIND_INF = "inf"  # infinite projective dimension


@dataclass(frozen=True)
class DegreeSequence:
    """A degree sequence stored by its free parameters.

    kind "pd0": (d0, inf, ...); "pd1": (d0, d1, inf, ...);
    "inf": (d0, d1, d1+1, d1+2, ...) over a quadric and
    (d0, d1, d0+n, d1+n, ...) in embedding dimension 1.
    """

    kind: str
    d0: int
    d1: int | None = None

    def __post_init__(self):
        if self.kind not in (KIND_PD0, KIND_PD1, KIND_INF):
            raise InvalidDegreeSequence(f"unknown kind {self.kind!r}")
        if self.kind == KIND_PD0:
            if self.d1 is not None:
                raise InvalidDegreeSequence("pd0 takes no d1")
        elif self.d1 is None:
            raise InvalidDegreeSequence(f"{self.kind} requires d1")

    def validate(self, ring: RingSpec) -> "DegreeSequence":
        if self.kind == KIND_PD1 and isinstance(ring, EmbDim1):
            raise InvalidDegreeSequence("pd1 sequences exist only over the quadric")
        if self.kind != KIND_PD0:
            if not self.d0 < self.d1:
                raise InvalidDegreeSequence(f"need d0 < d1, got ({self.d0}, {self.d1})")
            if self.kind == KIND_INF and isinstance(ring, EmbDim1) and not self.d1 < self.d0 + ring.n:
                # otherwise the sequence (d0, d1, d0+n, ...) is not increasing
                raise InvalidDegreeSequence(
                    f"need d1 < d0 + n = {self.d0 + ring.n}, got d1 = {self.d1}"
                )
        return self

    def degree(self, ring: RingSpec, i: int) -> int | None:
        """d_i, or None for an absent step."""
        if i == 0:
            return self.d0
        if self.kind == KIND_PD0:
            return INF
        if i == 1:
            return self.d1
        if self.kind == KIND_PD1:
            return INF
        if isinstance(ring, Quadric):
            return self.d1 + i - 1
        half, odd = divmod(i, 2)
        return (self.d1 + (half - 1) * ring.n + ring.n) if odd else (self.d0 + half * ring.n)

    def is_finite_pd(self) -> bool:
        return self.kind != KIND_INF

    def pretty(self, ring: RingSpec) -> str:
        if self.kind == KIND_PD0:
            return f"({self.d0},inf,...)"
        if self.kind == KIND_PD1:
            return f"({self.d0},{self.d1},inf,...)"
        d2, d3 = self.degree(ring, 2), self.degree(ring, 3)
        return f"({self.d0},{self.d1},{d2},{d3},...)"


def pd0(d0: int) -> DegreeSequence:
    return DegreeSequence(KIND_PD0, d0)


def pd1(d0: int, d1: int) -> DegreeSequence:
    return DegreeSequence(KIND_PD1, d0, d1)


def inf_seq(d0: int, d1: int) -> DegreeSequence:
    return DegreeSequence(KIND_INF, d0, d1)


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def _quadric_key2(d: DegreeSequence) -> tuple:
    # rank sequences by (d1, tail kind); (d0, inf, ...) sits above every
    # finite d1, and at equal d1 the infinite-pd tail sits below the pd-1 tail
    if d.kind == KIND_PD0:
        return (1, 0, 0)
    return (0, d.d1, 0 if d.kind == KIND_INF else 1)


def compare(ring: RingSpec, d: DegreeSequence, dp: DegreeSequence) -> Comparison:
    """Partial order on degree sequences of one ring.

    Quadric: product order of d0 and the lexicographic rank (d1, tail kind);
    this is the order realized by the chains of pure diagrams (termwise on
    (d0, d1), except that a pd-1 sequence sits below an infinite one only
    when its d1 is strictly smaller).  Embedding dimension 1: infinite-pd
    sequences below all finite-pd ones, termwise within each class.
    """
    d.validate(ring)
    dp.validate(ring)
    if d == dp:
        return Comparison.EQUAL

    def leq(a: DegreeSequence, b: DegreeSequence) -> bool:
        if isinstance(ring, Quadric):
            return a.d0 <= b.d0 and _quadric_key2(a) <= _quadric_key2(b)
        if a.kind == KIND_PD0:
            return b.kind == KIND_PD0 and a.d0 <= b.d0
        if b.kind == KIND_PD0:
            return True
        return a.d0 <= b.d0 and a.d1 <= b.d1

    if leq(d, dp):
        return Comparison.LESS
    if leq(dp, d):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def is_strictly_less(ring: RingSpec, d: DegreeSequence, dp: DegreeSequence) -> bool:
    return compare(ring, d, dp) is Comparison.LESS


# ---------------------------------------------------------------------------
# Betti diagrams


@dataclass(frozen=True)
class ShiftPeriodic:
    """entry(i + p, j + s) = entry(i, j) for all i >= anchor."""

    col_period: int
    degree_shift: int
    anchor: int

    def __post_init__(self):
        if self.col_period < 1 or self.degree_shift < 1 or self.anchor < 0:
            raise BettiConeError(f"bad tail signature {self}")


Tail = ShiftPeriodic | None


def _clean_col(col: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out = {}
    for j, v in col.items():
        v = Fraction(v)
        if v != 0:
            out[int(j)] = v
    return out


class BettiDiagram:
    """Column-finite rational matrix with an optional certified periodic tail.

    Immutable after construction.  The explicit window is normalized to the
    minimum length that still witnesses the tail rule; an all-zero repeating
    block is canonicalized to the zero tail.
    """

    __slots__ = ("ring", "cols", "tail")

    def __init__(self, ring: RingSpec, cols: Sequence[Mapping[int, Fraction]], tail: Tail = None):
        cleaned = [_clean_col(c) for c in cols]
        if tail is not None:
            p, s, anchor = tail.col_period, tail.degree_shift, tail.anchor
            expected = ring.tail_signature()
            if (p, s, anchor) != expected:
                raise TailError((0, 0), f"tail {tail} does not match the ring signature {expected}")
            if len(cleaned) - 1 < anchor + p - 1:
                raise TailError((len(cleaned), 0), "window too short to witness the tail rule")
            for i in range(anchor, len(cleaned) - p):
                shifted = {j + s: v for j, v in cleaned[i].items()}
                if shifted != cleaned[i + p]:
                    bad = sorted(set(shifted) | set(cleaned[i + p]))
                    j = next(jj - s for jj in bad if shifted.get(jj, 0) != cleaned[i + p].get(jj, 0))
                    raise TailError((i, j))
            # trim columns that the tail already implies
            while len(cleaned) - 1 > anchor + p - 1:
                i = len(cleaned) - 1
                implied = {j + s: v for j, v in cleaned[i - p].items()}
                if implied != cleaned[i]:
                    break
                cleaned.pop()
            if all(not cleaned[i] for i in range(anchor, len(cleaned))):
                tail = None
        if tail is None:
            while cleaned and not cleaned[-1]:
                cleaned.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "cols", tuple(cleaned))
        object.__setattr__(self, "tail", tail)

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("BettiDiagram is immutable")

    # -- basic queries ------------------------------------------------------

    @property
    def window(self) -> int:
        """Index of the last explicit column (-1 for the zero diagram)."""
        return len(self.cols) - 1

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def entry(self, i: int, j: int) -> Fraction:
        """Tail-aware lookup; columns beyond the window are extrapolated."""
        if i < 0:
            raise BettiConeError("column index must be >= 0")
        if i <= self.window:
            return self.cols[i].get(j, Fraction(0))
        if self.tail is None:
            return Fraction(0)
        p, s = self.tail.col_period, self.tail.degree_shift
        t = -((self.window - i) // p)  # ceil((i - window) / p)
        return self.cols[i - p * t].get(j - s * t, Fraction(0))

    def support(self) -> Iterator[tuple[int, int, Fraction]]:
        """Nonzero explicit entries (i, j, value)."""
        for i, col in enumerate(self.cols):
            for j in sorted(col):
                yield i, j, col[j]

    def degree_range(self) -> tuple[int, int]:
        """(min, max) degree over the explicit nonzero entries; (0, 0) if zero."""
        degs = [j for col in self.cols for j in col]
        if not degs:
            return (0, 0)
        return (min(degs), max(degs))

    def column_sum(self, i: int) -> Fraction:
        if i > self.window:
            if self.tail is None:
                return Fraction(0)
            p = self.tail.col_period
            i -= p * -((self.window - i) // p)  # shift preserves the sum
        return sum(self.cols[i].values(), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def scaled(self, c) -> "BettiDiagram":
        c = Fraction(c)
        return BettiDiagram(self.ring, [{j: c * v for j, v in col.items()} for col in self.cols], self.tail)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiDiagram):
            return NotImplemented
        return self.ring == other.ring and self.cols == other.cols and self.tail == other.tail

    def __hash__(self):
        return hash((self.ring, tuple(tuple(sorted(c.items())) for c in self.cols), self.tail))

    def __repr__(self):
        entries = ", ".join(f"({i},{j})={v}" for i, j, v in self.support())
        return f"BettiDiagram<{self.ring.family}; {entries or '0'}; tail={self.tail}>"


def zero_diagram(ring: RingSpec) -> BettiDiagram:
    return BettiDiagram(ring, [], None)


def diagram_from_entries(ring: RingSpec, entries: Mapping[tuple[int, int], Fraction],
                         tail: Tail = None) -> BettiDiagram:
    width = max((i for i, _ in entries), default=-1) + 1
    if tail is not None:
        width = max(width, tail.anchor + tail.col_period)
    cols: list[dict[int, Fraction]] = [{} for _ in range(width)]
    for (i, j), v in entries.items():
        cols[i][j] = cols[i].get(j, Fraction(0)) + Fraction(v)
    return BettiDiagram(ring, cols, tail)


def pure_diagram(ring: RingSpec, d: DegreeSequence) -> BettiDiagram:
    """The normalized diagram of a pure resolution with degree sequence d."""
    d.validate(ring)
    cols: list[dict[int, Fraction]] = [{d.d0: Fraction(1)}]
    if d.kind == KIND_PD0:
        return BettiDiagram(ring, cols, None)
    if d.kind == KIND_PD1:
        cols.append({d.d1: Fraction(1)})
        return BettiDiagram(ring, cols, None)
    p, s, anchor = ring.tail_signature()
    value = Fraction(2) if isinstance(ring, Quadric) else Fraction(1)
    for i in range(1, anchor + p):
        cols.append({d.degree(ring, i): value})
    return BettiDiagram(ring, cols, ShiftPeriodic(p, s, anchor))


def _common_tail(ring: RingSpec, diagrams: Sequence[BettiDiagram]) -> Tail:
    tails = {v.tail for v in diagrams if v.tail is not None}
    if len(tails) > 1:
        raise IncompatibleTails(f"cannot combine tails {sorted(map(str, tails))}")
    return tails.pop() if tails else None


def linear_combine(terms: Sequence[tuple[Fraction, BettiDiagram]]) -> BettiDiagram:
    """Pointwise rational linear combination; tail rules merged exactly."""
    terms = [(Fraction(c), v) for c, v in terms]
    if not terms:
        raise BettiConeError("linear_combine of no terms has no ring")
    ring = terms[0][1].ring
    if any(v.ring != ring for _, v in terms):
        raise RingMismatch("all diagrams must share one ring")
    tail = _common_tail(ring, [v for _, v in terms])
    width = max((v.window for _, v in terms), default=-1) + 1
    if tail is not None:
        width = max(width, tail.anchor + tail.col_period)
    cols: list[dict[int, Fraction]] = [{} for _ in range(width)]
    for c, v in terms:
        if c == 0:
            continue
        for i in range(width):
            col = cols[i]
            if i <= v.window:
                items = v.cols[i].items()
            else:
                items = [(j, val) for j, val in _extrapolated(v, i)]
            for j, val in items:
                col[j] = col.get(j, Fraction(0)) + c * val
    return BettiDiagram(ring, cols, tail)


def _extrapolated(v: BettiDiagram, i: int):
    if v.tail is None:
        return []
    p, s = v.tail.col_period, v.tail.degree_shift
    t = -((v.window - i) // p)
    return [(j + s * t, val) for j, val in v.cols[i - p * t].items()]


def add(u: BettiDiagram, v: BettiDiagram) -> BettiDiagram:
    return linear_combine([(Fraction(1), u), (Fraction(1), v)])


def subtract(u: BettiDiagram, v: BettiDiagram) -> BettiDiagram:
    return linear_combine([(Fraction(1), u), (Fraction(-1), v)])
