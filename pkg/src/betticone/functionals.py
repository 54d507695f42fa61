"""Facet functionals of the cone of Betti diagrams and the membership test.

Quadric family: eps (entry values), alpha (column-1 minus shifted column-2
entries), gamma (truncated alternating column sums), shift (the exact
equalities entry(i,j) = entry(i+1,j+1) for i >= 2).

Embedding dimension 1: eps, alpha with a column index (alpha(0,.) are
halfspaces, alpha(i,.) for i >= 1 are equalities), theta and eta (truncated
column sums), and eta_inf (column-1 total minus column-2 total, an equality).

Although each family is infinite, only finitely many members can be nonzero
on a given diagram: everything outside the explicit window repeats by the
tail rule, so membership reduces to a finite sweep plus the tail check the
diagram constructor already performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagrams import BettiDiagram
from .errors import BettiConeError, RingMismatch
from .rings import EmbDim1, Quadric, RingSpec


@dataclass(frozen=True)
class Eps:
    i: int
    j: int


@dataclass(frozen=True)
class AlphaQ:
    k: int


@dataclass(frozen=True)
class Gamma:
    k: int


@dataclass(frozen=True)
class Shift:
    """Equality entry(i, j) - entry(i+1, j+1) = 0, i >= 2 (quadric)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 2:
            raise BettiConeError("shift equalities start at column 2")


@dataclass(frozen=True)
class AlphaA:
    """entry(i, k) - entry(i+2, k+n); an equality when i >= 1."""

    i: int
    k: int


@dataclass(frozen=True)
class Theta:
    k: int


@dataclass(frozen=True)
class Eta:
    k: int


@dataclass(frozen=True)
class EtaInf:
    pass


FunctionalId = Eps | AlphaQ | Gamma | Shift | AlphaA | Theta | Eta | EtaInf

_QUADRIC_ONLY = (AlphaQ, Gamma, Shift)
_EMBDIM1_ONLY = (AlphaA, Theta, Eta, EtaInf)


def is_equality(f: FunctionalId) -> bool:
    if isinstance(f, Shift) or isinstance(f, EtaInf):
        return True
    return isinstance(f, AlphaA) and f.i >= 1


def family(f: FunctionalId) -> str:
    return {Eps: "eps", AlphaQ: "alpha", Gamma: "gamma", Shift: "shift",
            AlphaA: "alpha", Theta: "theta", Eta: "eta", EtaInf: "eta_inf"}[type(f)]


def evaluate(f: FunctionalId, v: BettiDiagram) -> Fraction:
    """Exact value of the functional on a diagram."""
    ring = v.ring
    if isinstance(ring, Quadric) and isinstance(f, _EMBDIM1_ONLY):
        raise RingMismatch(f"{f} is not defined over the quadric")
    if isinstance(ring, EmbDim1) and isinstance(f, _QUADRIC_ONLY):
        raise RingMismatch(f"{f} is not defined in embedding dimension 1")
    lo, hi = v.degree_range()
    if isinstance(f, Eps):
        return v.entry(f.i, f.j)
    if isinstance(f, AlphaQ):
        return v.entry(1, f.k) - v.entry(2, f.k + 1)
    if isinstance(f, Gamma):
        total = Fraction(0)
        for j in range(lo - 2, f.k + 1):
            total += 2 * v.entry(0, j) - 2 * v.entry(1, j + 1) + v.entry(2, j + 2)
        return total
    if isinstance(f, Shift):
        return v.entry(f.i, f.j) - v.entry(f.i + 1, f.j + 1)
    n = ring.n
    if isinstance(f, AlphaA):
        return v.entry(f.i, f.k) - v.entry(f.i + 2, f.k + n)
    if isinstance(f, Theta):
        total = sum((v.entry(2, j) for j in range(lo, f.k + 1)), Fraction(0))
        return total - sum((v.entry(1, j) for j in range(lo, f.k - n + 2)), Fraction(0))
    if isinstance(f, Eta):
        return sum((v.entry(1, j) - v.entry(2, j + 1) for j in range(lo - 1, f.k + 1)), Fraction(0))
    if isinstance(f, EtaInf):
        return v.column_sum(1) - v.column_sum(2)
    raise BettiConeError(f"unknown functional {f!r}")  # pragma: no cover


@dataclass(frozen=True)
class Violation:
    """First functional found negative (or nonzero, for an equality)."""

    functional: FunctionalId
    value: Fraction

    def __str__(self):
        rel = "!= 0" if is_equality(self.functional) else "< 0"
        return f"{self.functional} = {self.value} {rel}"


def sweep_range(ring: RingSpec, v: BettiDiagram) -> range:
    """Index range outside which every sum-type functional is constant on v."""
    lo, hi = v.degree_range()
    pad = (ring.n if isinstance(ring, EmbDim1) else 2) + 2
    return range(lo - pad, hi + pad + 1)


def _equality_sweep(ring: RingSpec, v: BettiDiagram):
    """Equality constraints that are not already implied by the stored tail."""
    lo, hi = v.degree_range()
    if isinstance(ring, Quadric):
        top = v.window if v.tail is None else v.window - 1
        for i in range(2, top + 1):
            for j in range(lo - 1, hi + 1):
                yield Shift(i, j)
    else:
        top = v.window if v.tail is None else v.window - 2
        for i in range(1, top + 1):
            for j in range(lo - ring.n, hi + 1):
                yield AlphaA(i, j)
        yield EtaInf()


def _inequality_sweep(ring: RingSpec, v: BettiDiagram):
    """Sum-type halfspaces over the finite active range (entry halfspaces
    are swept directly over the window by membership)."""
    ks = sweep_range(ring, v)
    if isinstance(ring, Quadric):
        for k in ks:
            yield AlphaQ(k)
        for k in ks:
            yield Gamma(k)
    else:
        for k in ks:
            yield AlphaA(0, k)
        for k in ks:
            yield Theta(k)
        for k in ks:
            yield Eta(k)


def membership(ring: RingSpec, v: BettiDiagram) -> Violation | None:
    """Exact cone membership; None means the diagram lies in the cone.

    Checks entry nonnegativity over the window, then the equality
    constraints, then the halfspace families over the finite active range.
    The first violated functional is reported.
    """
    if v.ring != ring:
        raise RingMismatch("diagram belongs to a different ring")
    for i, col in enumerate(v.cols):
        for j in sorted(col):
            if col[j] < 0:
                return Violation(Eps(i, j), col[j])
    for f in _equality_sweep(ring, v):
        value = evaluate(f, v)
        if value != 0:
            return Violation(f, value)
    for f in _inequality_sweep(ring, v):
        value = evaluate(f, v)
        if value < 0:
            return Violation(f, value)
    return None


def in_cone(ring: RingSpec, v: BettiDiagram) -> bool:
    return membership(ring, v) is None
