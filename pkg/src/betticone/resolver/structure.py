"""Direct decomposition of graded modules over rationals[x]/<x^n> into
shifted cyclic summands, by graded diagonalization over rationals[x].

Homogeneous entries of a graded matrix over one variable are monomials, so
diagonalization is plain pivoting on the lowest x-power; no divisibility
chains are needed.  This is the independent oracle the resolver is checked
against in embedding dimension 1.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ..diagrams import BettiDiagram, inf_seq, linear_combine, pd0, pure_diagram, zero_diagram
from ..errors import BettiConeError
from ..rings import EmbDim1
from .poly import monomial
from .presentation import GradedPresentation


def _monomial_entry(p) -> tuple[int, Fraction] | None:
    """(exponent, coefficient) of a univariate monomial, None for zero."""
    if p.is_zero():
        return None
    if len(p.terms) != 1:
        raise BettiConeError("graded univariate entry should be a monomial")
    (e,), c = next(iter(p.terms.items()))
    return e, c


def cyclic_summands(spec: EmbDim1, pres: GradedPresentation) -> list[tuple[int, int]]:
    """[(shift, exponent)] with the module isomorphic to the direct sum of
    R(-shift)/<x^exponent>; exponent n means a free summand."""
    if pres.ring != spec:
        raise BettiConeError("presentation ring does not match")
    n = spec.n
    pres = pres.reduced()
    ngens = len(pres.gens)
    rows: list[list] = [[] for _ in range(ngens)]
    if pres.rels:
        for r in range(ngens):
            rows[r] = [_monomial_entry(p) for p in pres.rels[r]]
    for r in range(ngens):  # relations x^n * e_r present the module over rationals[x]
        for rr in range(ngens):
            rows[rr].append((n, Fraction(1)) if rr == r else None)
    degs = list(pres.gens)
    summands: list[tuple[int, int]] = []
    live_rows = list(range(ngens))
    live_cols = list(range(len(rows[0]))) if rows else []
    while True:
        pivot = None
        for r in live_rows:
            for c in live_cols:
                ent = rows[r][c]
                if ent is not None and (pivot is None or ent[0] < rows[pivot[0]][pivot[1]][0]):
                    pivot = (r, c)
        if pivot is None:
            break
        pr, pc = pivot
        pe, pcoef = rows[pr][pc]
        for c in live_cols:  # clear the pivot row
            if c == pc or rows[pr][c] is None:
                continue
            ee, cc = rows[pr][c]
            factor = (ee - pe, cc / pcoef)
            for r in live_rows:
                ent = rows[r][pc]
                if ent is None:
                    continue
                fe, fc = ent[0] + factor[0], ent[1] * factor[1]
                cur = rows[r][c]
                if cur is None:
                    rows[r][c] = (fe, -fc)
                elif cur[0] == fe:
                    newc = cur[1] - fc
                    rows[r][c] = (fe, newc) if newc else None
                else:
                    raise BettiConeError("entries stopped being monomials; input not graded")
        for r in live_rows:  # clear the pivot column
            if r == pr or rows[r][pc] is None:
                continue
            ee, cc = rows[r][pc]
            factor = (ee - pe, cc / pcoef)
            for c in live_cols:
                ent = rows[pr][c]
                if ent is None:
                    continue
                fe, fc = ent[0] + factor[0], ent[1] * factor[1]
                cur = rows[r][c]
                if cur is None:
                    rows[r][c] = (fe, -fc)
                elif cur[0] == fe:
                    newc = cur[1] - fc
                    rows[r][c] = (fe, newc) if newc else None
                else:
                    raise BettiConeError("entries stopped being monomials; input not graded")
        summands.append((degs[pr], min(pe, n)))
        live_rows.remove(pr)
        live_cols.remove(pc)
    for r in live_rows:  # untouched generators are free (cannot happen with x^n columns)
        summands.append((degs[r], n))
    return [(a, e) for a, e in summands if e > 0]


def structure_betti(spec: EmbDim1, pres: GradedPresentation) -> BettiDiagram:
    """Betti diagram assembled from the cyclic decomposition."""
    counts = Counter(cyclic_summands(spec, pres))
    terms = []
    for (a, e), mult in sorted(counts.items()):
        d = pd0(a) if e == spec.n else inf_seq(a, a + e)
        terms.append((Fraction(mult), pure_diagram(spec, d)))
    if not terms:
        return zero_diagram(spec)
    return linear_combine(terms)


def structure_monomial(spec: EmbDim1, exponent: int, coeff=1):
    """Convenience: the monomial coeff * x^exponent in one variable."""
    return monomial(1, (exponent,), coeff)
