"""Nullhomotopies for multiplication by the defining form, the periodic
standard resolution they induce over the quotient ring, and the scalar
ranks that measure its nonminimality."""

from __future__ import annotations

from fractions import Fraction

from ..errors import BettiConeError
from ..linalg import rank, solve
from ..rings import RingSpec
from .engine import Matrix, ResolutionData, compose, map_matrix, module_basis
from .poly import Poly, defining_form, graded_ring, monomial, zero


def _solve_into(ring, tgt_degs, matrix, src_degs, target_vec: list[Poly], t: int):
    """One homogeneous preimage of target_vec (degree t) under the map, or
    None.  target_vec is a polynomial column over the target generators."""
    src_b = module_basis(ring, src_degs, t)
    tgt_b = module_basis(ring, tgt_degs, t)
    index = {be: k for k, be in enumerate(tgt_b)}
    rhs = [Fraction(0)] * len(tgt_b)
    for r, p in enumerate(target_vec):
        for e, c in ring.reduce(p).terms.items():
            rhs[index[(r, e)]] += c
    if not src_b:
        return [] if not any(rhs) else None
    mat = map_matrix(ring, tgt_degs, matrix, src_degs, t, src_b, tgt_b)
    x = solve(mat, rhs)
    if x is None:
        return None
    comps = [zero(ring.nvars) for _ in src_degs]
    for k, (r, e) in enumerate(src_b):
        if x[k]:
            comps[r] = comps[r] + monomial(ring.nvars, e, x[k])
    return comps


def _matvec(matrix: Matrix, vec: list[Poly], nvars: int) -> list[Poly]:
    out = []
    for row in matrix:
        acc = zero(nvars)
        for p, v in zip(row, vec):
            if not p.is_zero() and not v.is_zero():
                acc = acc + p * v
        out.append(acc)
    return out


def multiplication_homotopies(res: ResolutionData, spec: RingSpec) -> list[Matrix]:
    """Homotopies s_i: G_{i-1}(-deg q) -> G_i with q*id = ds + sd on a free
    resolution over the ambient polynomial ring, q the defining form.

    The systems are solved degree by degree; they are solvable exactly when
    q annihilates the resolved module, otherwise a structured error is
    raised (on the very first generator)."""
    q = defining_form(spec)
    e = q.degree()
    ring = graded_ring(res.ring)
    if ring.modulus is not None:
        raise BettiConeError("homotopies are computed on the ambient resolution")
    homotopies: list[Matrix] = []
    for i in range(1, len(res.gens)):
        src, tgt = res.gens[i], res.gens[i - 1]
        cols: list[list[Poly]] = []
        for g, a in enumerate(tgt):
            target = [q if r == g else zero(ring.nvars) for r in range(len(tgt))]
            if i >= 2:
                below = res.maps[i - 2]  # G_{i-1} -> G_{i-2}
                dg = [below[r][g] for r in range(len(res.gens[i - 2]))]
                correction = _matvec(homotopies[-1], dg, ring.nvars)
                target = [tp - cp for tp, cp in zip(target, correction)]
            sol = _solve_into(ring, tgt, res.maps[i - 1], src, target, a + e)
            if sol is None:
                raise BettiConeError(
                    "defining form does not annihilate the module: homotopy system infeasible"
                )
            cols.append(sol)
        homotopies.append([[cols[c][r] for c in range(len(cols))] for r in range(len(src))])
    verify_homotopies(res, homotopies, q)
    return homotopies


def verify_homotopies(res: ResolutionData, hs: list[Matrix], q: Poly) -> None:
    """q*id = ds + sd at every step, as exact polynomial identities."""
    ring = graded_ring(res.ring)
    for i in range(len(res.gens)):
        n = len(res.gens[i])
        total = [[zero(ring.nvars) for _ in range(n)] for _ in range(n)]
        if i < len(hs):
            prod = compose(ring, res.maps[i], hs[i])
            for r in range(n):
                for c in range(n):
                    total[r][c] = total[r][c] + prod[r][c]
        if i >= 1:
            prod = compose(ring, hs[i - 1], res.maps[i - 1])
            for r in range(n):
                for c in range(n):
                    total[r][c] = total[r][c] + prod[r][c]
        for r in range(n):
            for c in range(n):
                want = q if r == c else zero(ring.nvars)
                if total[r][c] != want:
                    raise BettiConeError(f"homotopy identity fails at step {i}, entry ({r},{c})")


def standard_resolution(res: ResolutionData, hs: list[Matrix], spec: RingSpec,
                        steps: int) -> ResolutionData:
    """The periodic free resolution over the quotient ring assembled from
    an ambient resolution and its homotopies; entries reduced modulo the
    defining form.  Steps alternate between blocks (d2, s1) and (s2; d1)
    twisted down by the form degree."""
    ring = graded_ring(spec)
    e = defining_form(spec).degree()
    if len(res.gens) > 3:
        raise BettiConeError("ambient resolutions here have length at most 2")
    g = [list(res.gens[i]) if i < len(res.gens) else [] for i in range(3)]
    m1 = res.maps[0] if len(res.maps) >= 1 else [[] for _ in g[0]]
    m2 = res.maps[1] if len(res.maps) >= 2 else [[] for _ in g[1]]
    s1 = hs[0] if len(hs) >= 1 else [[] for _ in g[1]]
    s2 = hs[1] if len(hs) >= 2 else [[] for _ in g[2]]

    def red(matrix: Matrix) -> Matrix:
        return [[ring.reduce(p) for p in row] for row in matrix]

    def twist(degs, k):
        return tuple(d + k * e for d in degs)

    gens: list[tuple[int, ...]] = [tuple(g[0])]
    maps: list[Matrix] = []
    for step in range(1, steps + 1):
        k = step // 2
        if step == 1:
            gens.append(tuple(g[1]))
            maps.append(red(m1))
        elif step % 2 == 0:
            # G_2(-(k-1)e) + G_0(-ke)  -->  G_1(-(k-1)e)  via (d2, s1)
            gens.append(twist(g[2], k - 1) + twist(g[0], k))
            maps.append(red([row2 + row1 for row2, row1 in zip(m2, s1)]))
        else:
            # G_1(-ke)  -->  G_2(-(k-1)e) + G_0(-ke)  via (s2; d1)
            gens.append(twist(g[1], k))
            stacked = [list(row) for row in s2] + [list(row) for row in m1]
            maps.append(red(stacked))
    return ResolutionData(spec, gens, maps)


def homotopy_scalar_rank(res: ResolutionData, hs: list[Matrix], step: int, k: int) -> int:
    """Rank of the degree-zero block of s_step from ambient generators of
    degree k - deg(q) to generators of degree k; this is the number of
    unit cancellations the periodic resolution admits there."""
    if res.ring.family != "poly_xy":
        raise BettiConeError("scalar ranks are used on two-variable ambient resolutions")
    if step < 1 or step > len(hs):
        return 0
    e = 2
    s = hs[step - 1]
    src = [c for c, a in enumerate(res.gens[step - 1]) if a == k - e]
    tgt = [r for r, b in enumerate(res.gens[step]) if b == k]
    if not src or not tgt:
        return 0
    block = [[s[r][c].constant_value() or Fraction(0) for c in src] for r in tgt]
    return rank(block)
