"""Greedy decomposition into pure diagrams, Hilbert functions read off a
diagram, multiplicity, and the compatible-degree-sequence multiplicity
bounds.

The decomposition repeatedly picks the least compatible degree sequence,
subtracts the largest multiple of its pure diagram that keeps every facet
functional nonnegative, and stops at the zero diagram.  Because the cone is
simplicial the resulting chain and coefficients are unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import functionals as fn
from .diagrams import (
    KIND_INF,
    BettiDiagram,
    Comparison,
    DegreeSequence,
    compare,
    inf_seq,
    linear_combine,
    pd0,
    pd1,
    pure_diagram,
    subtract,
)
from .errors import BettiConeError, NotInCone, RingMismatch
from .functionals import evaluate, membership, sweep_range
from .rings import EmbDim1, Quadric, RingSpec


@dataclass(frozen=True)
class Decomposition:
    """Ordered chain of (positive coefficient, degree sequence) terms."""

    ring: RingSpec
    terms: tuple[tuple[Fraction, DegreeSequence], ...]

    def reassemble(self) -> BettiDiagram:
        if not self.terms:
            return zero_diagram(self.ring)
        return linear_combine([(c, pure_diagram(self.ring, d)) for c, d in self.terms])

    def chain(self) -> tuple[DegreeSequence, ...]:
        return tuple(d for _, d in self.terms)


def compatible_sequences(ring: RingSpec, v: BettiDiagram) -> list[DegreeSequence]:
    """All degree sequences d with support(pi_d) inside support(v)."""
    gens = sorted(v.cols[0]) if v.window >= 0 else []
    firsts = sorted(v.cols[1]) if v.window >= 1 else []
    out: list[DegreeSequence] = []
    for g in gens:
        out.append(pd0(g))
        for b in firsts:
            if b <= g:
                continue
            if isinstance(ring, Quadric):
                out.append(pd1(g, b))
                cand = inf_seq(g, b)
            else:
                if b >= g + ring.n:
                    continue
                cand = inf_seq(g, b)
            probe = range(1, v.window + ring.tail_signature()[0] + 1)
            if all(v.entry(i, cand.degree(ring, i)) != 0 for i in probe):
                out.append(cand)
    return out


def _tie_break_key(d: DegreeSequence):
    # smaller d0, then smaller d1 (absent step last), then infinite-pd first
    rank = {KIND_INF: 0, "pd1": 1, "pd0": 2}[d.kind]
    return (d.d0, d.d1 if d.d1 is not None else float("inf"), rank)


def minimal_compatible(ring: RingSpec, v: BettiDiagram) -> DegreeSequence:
    """Least compatible degree sequence; ties among minimal elements broken
    by (smaller d0, smaller d1, infinite-pd before finite)."""
    cands = compatible_sequences(ring, v)
    if not cands:
        raise NotInCone(membership(ring, v))
    minimal = [d for d in cands
               if not any(compare(ring, e, d) is Comparison.LESS for e in cands)]
    return min(minimal, key=_tie_break_key)


def _step_functionals(ring: RingSpec, v: BettiDiagram, pure: BettiDiagram):
    for i, col in enumerate(pure.cols):
        for j in col:
            yield fn.Eps(i, j)
    lo_v, hi_v = v.degree_range()
    lo_p, hi_p = pure.degree_range()
    pad = (ring.n if isinstance(ring, EmbDim1) else 2) + 2
    ks = range(min(lo_v, lo_p) - pad, max(hi_v, hi_p) + pad + 1)
    if isinstance(ring, Quadric):
        for k in ks:
            yield fn.AlphaQ(k)
        for k in ks:
            yield fn.Gamma(k)
    else:
        for k in ks:
            yield fn.AlphaA(0, k)
        for k in ks:
            yield fn.Theta(k)
        for k in ks:
            yield fn.Eta(k)


def max_step(ring: RingSpec, v: BettiDiagram, d: DegreeSequence) -> Fraction:
    """max{c >= 0 : v - c*pi_d still satisfies every halfspace}.

    Minimum of L(v)/L(pi_d) over the active halfspaces L positive on pi_d;
    the equality constraints hold on pi_d, so they are preserved for free.
    """
    pure = pure_diagram(ring, d)
    best: Fraction | None = None
    for f in _step_functionals(ring, v, pure):
        on_pure = evaluate(f, pure)
        if on_pure <= 0:
            continue
        ratio = evaluate(f, v) / on_pure
        if best is None or ratio < best:
            best = ratio
    if best is None:
        raise BettiConeError("no halfspace bounds the step; input cannot be in the cone")
    return best


def decompose(ring: RingSpec, v: BettiDiagram) -> Decomposition:
    """Greedy decomposition of a cone member into pure diagrams.

    Raises NotInCone (with the violated functional) otherwise.  The output
    chain is strictly increasing and reassembles the input exactly; both are
    asserted before returning.
    """
    if v.ring != ring:
        raise RingMismatch("diagram belongs to a different ring")
    violation = membership(ring, v)
    if violation is not None:
        raise NotInCone(violation)
    lo, hi = v.degree_range()
    cap = 4 * max(1, (v.window + 2) * (hi - lo + 1))  # bug guard, never binds
    remainder = v
    terms: list[tuple[Fraction, DegreeSequence]] = []
    for _ in range(cap):
        if remainder.is_zero():
            break
        skipped: set[DegreeSequence] = set()
        while True:
            cands = [d for d in compatible_sequences(ring, remainder) if d not in skipped]
            if not cands:
                raise NotInCone(membership(ring, remainder))
            minimal = [d for d in cands
                       if not any(compare(ring, e, d) is Comparison.LESS for e in cands)]
            d = min(minimal, key=_tie_break_key)
            step = max_step(ring, remainder, d)
            if step > 0:
                break
            skipped.add(d)
        terms.append((step, d))
        remainder = subtract(remainder, pure_diagram(ring, d).scaled(step))
    else:
        raise BettiConeError("iteration cap exceeded; internal decomposition bug")
    for (_, a), (_, b) in zip(terms, terms[1:]):
        if compare(ring, a, b) is not Comparison.LESS:
            raise BettiConeError(f"decomposition chain not increasing: {a} !< {b}")
    result = Decomposition(ring, tuple(terms))
    if result.reassemble() != v:
        raise BettiConeError("decomposition failed to reassemble exactly")
    return result


# ---------------------------------------------------------------------------
# Hilbert functions and multiplicity


def hilbert_function(ring: RingSpec, v: BettiDiagram, k: int) -> Fraction:
    """h_k of a module with Betti diagram v, resolved in closed form.

    The alternating sum over the periodic tail collapses: over the quadric
    the partial alternating sums of (1,2,2,...) telescope to 1, and in
    embedding dimension 1 each shifted copy of h(R) covers each degree once.
    """
    if v.ring != ring:
        raise RingMismatch("diagram belongs to a different ring")
    total = Fraction(0)
    if v.tail is None:
        for i, col in enumerate(v.cols):
            sign = -1 if i % 2 else 1
            for j, val in col.items():
                total += sign * val * ring.hilbert(k - j)
        return total
    if isinstance(ring, Quadric):
        # columns >= 2 are copies of column 2; sum_t (-1)^t h_{s-t}(R) = [s >= 0]
        for j, val in v.cols[0].items():
            total += val * ring.hilbert(k - j)
        for j, val in v.cols[1].items():
            total -= val * ring.hilbert(k - j)
        for j, val in v.cols[2].items():
            if j <= k:
                total += val
        return total
    # embdim1: odd columns copy column 1, even columns >= 2 copy column 2,
    # and sum_t h_{s-tn}(R) = [s >= 0]
    for j, val in v.cols[0].items():
        total += val * ring.hilbert(k - j)
    for j, val in v.cols[1].items():
        if j <= k:
            total -= val
    for j, val in v.cols[2].items():
        if j <= k:
            total += val
    return total


def _stable_value(ring: RingSpec, v: BettiDiagram) -> Fraction:
    if v.tail is None:
        if isinstance(ring, EmbDim1):
            return Fraction(0)  # h(R) itself has finite support
        return 2 * sum(((-1) ** i * v.column_sum(i) for i in range(v.window + 1)), Fraction(0))
    if isinstance(ring, EmbDim1):
        return v.column_sum(2) - v.column_sum(1)
    return 2 * v.column_sum(0) - 2 * v.column_sum(1) + v.column_sum(2)


def _stabilization_degree(ring: RingSpec, v: BettiDiagram) -> int:
    lo, hi = v.degree_range()
    return hi + (ring.n if isinstance(ring, EmbDim1) else 2) + 1


def multiplicity(ring: RingSpec, v: BettiDiagram) -> Fraction:
    """Length when the Hilbert function vanishes eventually, otherwise the
    stabilized Hilbert value."""
    stable = _stable_value(ring, v)
    if stable != 0:
        return stable
    lo, _ = v.degree_range()
    hi = _stabilization_degree(ring, v)
    return sum((hilbert_function(ring, v, k) for k in range(lo, hi + 1)), Fraction(0))


@dataclass(frozen=True)
class MultiplicityBounds:
    """Multiplicity, its compatible-chain bounds, and the equality flags."""

    e: Fraction
    lower: Fraction | None
    upper: Fraction
    d_min: DegreeSequence
    d_max: DegreeSequence
    lower_is_equality: bool | None
    upper_is_equality: bool
    bounds_tight: bool  # d_min == d_max


def multiplicity_bounds(ring: RingSpec, v: BettiDiagram) -> MultiplicityBounds:
    """Bounds beta_0 * e(pi_dmin) <= e <= beta_0 * e(pi_dmax) for a diagram
    generated in a single degree; dmin/dmax are the endpoints of the greedy
    decomposition chain.  The lower bound applies only when dmax has a
    finite first syzygy degree."""
    if v.window < 0 or len(v.cols[0]) != 1:
        raise BettiConeError("multiplicity bounds need a single generator degree")
    dec = decompose(ring, v)
    chain = dec.chain()
    d_min, d_max = chain[0], chain[-1]
    beta0 = v.column_sum(0)
    e = multiplicity(ring, v)
    upper = beta0 * multiplicity(ring, pure_diagram(ring, d_max))
    if d_max.kind == "pd0":
        lower = None
        lower_eq = None
    else:
        lower = beta0 * multiplicity(ring, pure_diagram(ring, d_min))
        lower_eq = lower == e
    return MultiplicityBounds(
        e=e,
        lower=lower,
        upper=upper,
        d_min=d_min,
        d_max=d_max,
        lower_is_equality=lower_eq,
        upper_is_equality=upper == e,
        bounds_tight=d_min == d_max,
    )
