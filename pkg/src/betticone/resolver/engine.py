"""Brute-force graded resolution engine.

Everything is exact linear algebra over the rationals, one degree at a
time: the kernel of a homogeneous map is computed degreewise, minimal
generators are the complement of the image of multiplication by the ring
variables from one degree lower, and unit entries are pruned by Gaussian
cancellation.  Degree bounds are certified by demanding an empty margin of
degrees with no new kernel generators below the bound.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from ..diagrams import BettiDiagram, ShiftPeriodic
from ..errors import (
    BettiConeError,
    DegreeBoundExceeded,
    PeriodicityNotObserved,
    TailError,
)
from ..linalg import extend_basis, nullspace, rank
from ..rings import EmbDim1, Quadric, RingSpec, shift_step
from .poly import (
    CoefficientRing,
    GradedRing,
    Poly,
    PolyRingX,
    PolyRingXY,
    defining_form,
    graded_ring,
    monomial,
    variables,
    zero,
)
from .presentation import GradedPresentation

Matrix = list[list[Poly]]


def module_basis(ring: GradedRing, degs, t: int) -> list[tuple[int, tuple]]:
    """Monomial basis of the degree-t piece of a twisted free module."""
    return [(r, e) for r, a in enumerate(degs) for e in ring.monomials(t - a)]


def map_matrix(ring: GradedRing, tgt_degs, matrix: Matrix, src_degs, t,
               src_basis=None, tgt_basis=None):
    """Rational matrix of a homogeneous map in degree t (rows = target)."""
    if src_basis is None:
        src_basis = module_basis(ring, src_degs, t)
    if tgt_basis is None:
        tgt_basis = module_basis(ring, tgt_degs, t)
    index = {be: k for k, be in enumerate(tgt_basis)}
    rows = [[Fraction(0)] * len(src_basis) for _ in tgt_basis]
    for col, (c, e) in enumerate(src_basis):
        mono = monomial(ring.nvars, e)
        for r in range(len(tgt_degs)):
            p = matrix[r][c]
            if p.is_zero():
                continue
            for ee, coef in ring.mul(p, mono).terms.items():
                rows[index[(r, ee)]][col] += coef
    return rows


def apply_matrix(ring: GradedRing, matrix: Matrix, vector: list[Poly]) -> list[Poly]:
    out = []
    for row in matrix:
        acc = zero(ring.nvars)
        for p, v in zip(row, vector):
            if not p.is_zero() and not v.is_zero():
                acc = acc + ring.mul(p, v)
        out.append(acc)
    return out


def compose(ring: GradedRing, a: Matrix, b: Matrix) -> Matrix:
    """Matrix product a*b (a: F1->F0, b: F2->F1 gives F2->F0)."""
    ncols = len(b[0]) if b else 0
    out = [[zero(ring.nvars) for _ in range(ncols)] for _ in a]
    for i, row in enumerate(a):
        for k, p in enumerate(row):
            if p.is_zero():
                continue
            for j in range(ncols):
                q = b[k][j]
                if not q.is_zero():
                    out[i][j] = out[i][j] + ring.mul(p, q)
    return out


def kernel_step(cring: CoefficientRing, tgt_degs, matrix: Matrix, src_degs,
                bound: int, margin: int):
    """Minimal homogeneous generators of ker(matrix) up to the bound.

    Returns (gen_degrees, new_matrix) where new_matrix has one polynomial
    column per kernel generator, expressed over the source generators.
    Raises DegreeBoundExceeded when a generator lands inside the top
    `margin` degrees, i.e. when completeness cannot be certified.
    """
    nvars = graded_ring(cring).nvars
    ring = graded_ring(cring)
    if not src_degs:
        return (), [[] for _ in range(0)]
    new_degs: list[int] = []
    new_cols: list[list[Poly]] = []
    prev_basis: list = []
    prev_kernel: list[list[Fraction]] = []
    for t in range(min(src_degs), bound + 1):
        src_b = module_basis(ring, src_degs, t)
        if not src_b:
            prev_basis, prev_kernel = [], []
            continue
        tgt_b = module_basis(ring, tgt_degs, t)
        if tgt_b:
            mat = map_matrix(ring, tgt_degs, matrix, src_degs, t, src_b, tgt_b)
            kern = nullspace(mat)
        else:
            kern = [[Fraction(1 if k == i else 0) for k in range(len(src_b))]
                    for i in range(len(src_b))]
        index = {be: k for k, be in enumerate(src_b)}
        lower: list[list[Fraction]] = []
        for v in prev_kernel:
            for var in variables(nvars):
                w = [Fraction(0)] * len(src_b)
                for k, (r, e) in enumerate(prev_basis):
                    if v[k] == 0:
                        continue
                    for ee, coef in ring.mul(monomial(nvars, e), var).terms.items():
                        w[index[(r, ee)]] += v[k] * coef
                lower.append(w)
        for ci in extend_basis(lower, kern):
            if t > bound - margin:
                raise DegreeBoundExceeded(
                    f"kernel generator in degree {t} too close to the bound {bound}"
                )
            comps = [zero(nvars) for _ in src_degs]
            for k, (r, e) in enumerate(src_b):
                if kern[ci][k]:
                    comps[r] = comps[r] + monomial(nvars, e, kern[ci][k])
            new_degs.append(t)
            new_cols.append(comps)
        prev_basis, prev_kernel = src_b, kern
    new_matrix = [[new_cols[c][r] for c in range(len(new_cols))]
                  for r in range(len(src_degs))]
    return tuple(new_degs), new_matrix


@dataclass
class ResolutionData:
    """A chain of free modules and differentials: maps[i] sends step i+1
    into step i.  `cancellations` counts pruned unit pairs per
    (step, degree) when the data came out of minimize_resolution."""

    ring: CoefficientRing
    gens: list[tuple[int, ...]]
    maps: list[Matrix]
    cancellations: dict[tuple[int, int], int] | None = None

    def betti_columns(self) -> list[Counter]:
        return [Counter(g) for g in self.gens]

    def is_minimal(self) -> bool:
        return all(
            p.is_zero() or p.constant_value() is None
            for m in self.maps for row in m for p in row
        )

    def differential(self, i: int) -> Matrix:
        """The map F_i -> F_{i-1} (i >= 1)."""
        return self.maps[i - 1]


def check_complex(res: ResolutionData) -> None:
    """dated twice is zero, exactly, in the coefficient ring."""
    ring = graded_ring(res.ring)
    for i in range(len(res.maps) - 1):
        prod = compose(ring, res.maps[i], res.maps[i + 1])
        for r, row in enumerate(prod):
            for c, p in enumerate(row):
                if not ring.reduce(p).is_zero():
                    raise BettiConeError(f"d o d != 0 at step {i + 2}, entry ({r},{c})")


def check_exactness(res: ResolutionData, upto: int) -> None:
    """Rank-count exactness at every interior step for all degrees <= upto."""
    ring = graded_ring(res.ring)
    for i in range(1, len(res.gens) - 1):
        degs_hi, degs_mid, degs_lo = res.gens[i + 1], res.gens[i], res.gens[i - 1]
        lo_t = min(degs_mid) if degs_mid else 0
        for t in range(lo_t, upto + 1):
            mid_b = module_basis(ring, degs_mid, t)
            if not mid_b:
                continue
            lo_b = module_basis(ring, degs_lo, t)
            din = map_matrix(ring, degs_lo, res.maps[i - 1], degs_mid, t, mid_b, lo_b)
            nullity = len(mid_b) - (rank(din) if lo_b else 0)
            hi_b = module_basis(ring, degs_hi, t)
            dout = map_matrix(ring, degs_mid, res.maps[i], degs_hi, t, hi_b, mid_b)
            image = rank(dout) if hi_b and mid_b else 0
            if nullity != image:
                raise BettiConeError(
                    f"homology at step {i}, degree {t}: nullity {nullity} != rank {image}"
                )


def minimize_resolution(res: ResolutionData) -> ResolutionData:
    """Cancel unit entries until every differential maps into the maximal
    ideal; records one cancellation per removed generator pair."""
    ring = graded_ring(res.ring)
    gens = [list(g) for g in res.gens]
    maps = [[[p for p in row] for row in m] for m in res.maps]
    cancel: dict[tuple[int, int], int] = {}

    def find_unit():
        for i, m in enumerate(maps):
            for r, row in enumerate(m):
                for c, p in enumerate(row):
                    u = p.constant_value()
                    if u:
                        return i, r, c, u
        return None

    while True:
        found = find_unit()
        if found is None:
            break
        i, r, c, u = found
        m = maps[i]
        for c2 in range(len(m[r])):
            if c2 == c or m[r][c2].is_zero():
                continue
            lam = m[r][c2].scaled(Fraction(1) / u)
            for r2 in range(len(m)):
                m[r2][c2] = ring.reduce(m[r2][c2] - lam * m[r2][c])
            if i + 1 < len(maps):
                up = maps[i + 1]
                up[c] = [ring.reduce(a + ring.mul(lam, b)) for a, b in zip(up[c], up[c2])]
        for r2 in range(len(m)):
            if r2 == r or m[r2][c].is_zero():
                continue
            mu = m[r2][c].scaled(Fraction(1) / u)
            for c2 in range(len(m[r2])):
                m[r2][c2] = ring.reduce(m[r2][c2] - mu * m[r][c2])
            if i >= 1:
                down = maps[i - 1]
                for rr in range(len(down)):
                    down[rr][r] = ring.reduce(down[rr][r] + ring.mul(mu, down[rr][r2]))
        if i + 1 < len(maps) and any(not p.is_zero() for p in maps[i + 1][c]):
            raise BettiConeError("pruned generator still hit by the next differential")
        if i >= 1 and any(not row[r].is_zero() for row in maps[i - 1]):
            raise BettiConeError("pruned generator still maps out")
        key = (i + 1, gens[i + 1][c])
        cancel[key] = cancel.get(key, 0) + 1
        del gens[i + 1][c]
        for row in m:
            del row[c]
        if i + 1 < len(maps):
            del maps[i + 1][c]
        del gens[i][r]
        del m[r]
        if i >= 1:
            for row in maps[i - 1]:
                del row[r]
    out = ResolutionData(res.ring, [tuple(g) for g in gens], maps, cancel)
    check_complex(out)
    return out


# ---------------------------------------------------------------------------
# resolution towers


def default_bound(spec: CoefficientRing, gens, col_degs, steps: int, slack: int) -> int:
    top_gen = max(gens, default=0)
    top_rel = max(col_degs, default=top_gen)
    growth = shift_step(spec) if isinstance(spec, (Quadric, EmbDim1)) else 2
    return top_gen + top_rel + steps * growth + slack


def build_tower(pres: GradedPresentation, steps: int, bound: int, margin: int) -> ResolutionData:
    """Minimize the presentation, then iterate kernel steps."""
    pres = pres.reduced()
    gens = [tuple(pres.gens)]
    maps: list[Matrix] = []
    if pres.rels and pres.rels[0]:
        gens.append(pres.column_degrees())
        maps.append([list(row) for row in pres.rels])
    seed = minimize_resolution(ResolutionData(pres.ring, gens, maps))
    gens = list(seed.gens)
    maps = list(seed.maps)
    while len(gens) - 1 < steps:
        if len(gens) == 1:
            break  # free module
        new_degs, new_matrix = kernel_step(
            pres.ring, gens[-2], maps[-1], gens[-1], bound, margin
        )
        if not new_degs:
            break  # finite resolution
        gens.append(new_degs)
        maps.append(new_matrix)
    res = minimize_resolution(ResolutionData(pres.ring, gens, maps))
    if not res.is_minimal():
        raise BettiConeError("resolution still has unit entries after pruning")
    return res


def betti_diagram(res: ResolutionData, steps_requested: int) -> BettiDiagram:
    """Diagram with a certified periodic tail (or zero tail for a finite
    resolution).  Raises PeriodicityNotObserved when the computed window
    does not satisfy the tail rule."""
    spec = res.ring
    if not isinstance(spec, (Quadric, EmbDim1)):
        raise BettiConeError("Betti diagrams with certified tails live over the quotient rings")
    counters = res.betti_columns()
    cols = [{j: Fraction(c) for j, c in counter.items()} for counter in counters]
    finite = len(res.gens) - 1 < steps_requested
    if finite:
        return BettiDiagram(spec, cols, None)
    p, s, anchor = spec.tail_signature()
    try:
        return BettiDiagram(spec, cols, ShiftPeriodic(p, s, anchor))
    except TailError as exc:
        raise PeriodicityNotObserved(
            f"no {p}-periodic tail on the computed window: {exc}"
        ) from exc


def minimal_resolution(spec: RingSpec, pres: GradedPresentation, steps: int = 5,
                       slack: int = 2) -> ResolutionData:
    """Minimal graded free resolution over the hypersurface ring, out to
    `steps` homological degrees, with automatic degree-bound raising."""
    if pres.ring != spec:
        raise BettiConeError("presentation ring does not match")
    min_steps = 4 if isinstance(spec, Quadric) else 3
    if steps < min_steps:
        raise BettiConeError(f"need steps >= {min_steps}")
    margin = shift_step(spec) + 2
    bound = default_bound(spec, pres.gens, pres.reduced().column_degrees(), steps, slack)
    last: Exception | None = None
    for attempt in range(3):
        try:
            res = build_tower(pres, steps, bound, margin)
            betti_diagram(res, steps)  # certification
            return res
        except (DegreeBoundExceeded, PeriodicityNotObserved) as exc:
            last = exc
            bound += 2 * margin + 2 * attempt
    raise last


def minimal_betti(spec: RingSpec, pres: GradedPresentation, steps: int = 5,
                  slack: int = 2) -> BettiDiagram:
    """Betti diagram of coker(pres) with a certified tail rule."""
    return betti_diagram(minimal_resolution(spec, pres, steps, slack), steps)


def ambient_presentation(spec: RingSpec, pres: GradedPresentation) -> GradedPresentation:
    """The same module presented over the ambient polynomial ring: the
    original relations plus the defining form times each generator."""
    if pres.ring != spec:
        raise BettiConeError("presentation ring does not match")
    from .poly import POLY_X, POLY_XY, ambient_of

    q = defining_form(spec)
    ngens = len(pres.gens)
    rows = [list(row) for row in pres.rels] if pres.rels else [[] for _ in range(ngens)]
    for r in range(ngens):
        for rr in range(ngens):
            rows[rr].append(q if rr == r else zero(q.nvars))
    return GradedPresentation(ambient_of(spec), pres.gens, tuple(tuple(r) for r in rows))


def free_resolution(pres: GradedPresentation, slack: int = 2) -> ResolutionData:
    """Minimal free resolution over the ambient polynomial ring; the length
    is at most the number of variables."""
    if not isinstance(pres.ring, (PolyRingXY, PolyRingX)):
        raise BettiConeError("free_resolution expects a polynomial-ring presentation")
    maxlen = 2 if isinstance(pres.ring, PolyRingXY) else 1
    margin = 3
    bound = default_bound(pres.ring, pres.gens, pres.column_degrees(), maxlen + 1, slack)
    for attempt in range(3):
        try:
            res = build_tower(pres, maxlen + 1, bound, margin)
            break
        except DegreeBoundExceeded as exc:
            last = exc
            bound += 2 * margin + 2 * attempt
    else:
        raise last
    if len(res.gens) - 1 > maxlen:
        raise BettiConeError(
            f"resolution longer than the global dimension {maxlen}: lengths {res.gens}"
        )
    check_complex(res)
    return res
