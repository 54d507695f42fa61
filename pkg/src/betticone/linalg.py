"""Dense exact linear algebra over the rationals, plus a small two-phase
simplex used by the fan face checks.

Matrices are lists of lists of Fraction; all routines copy their input.
Sizes here are tiny (tens of rows), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def _copy(m) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m) -> list[list[Fraction]]:
    """Basis of the right kernel (one vector per free column)."""
    if not m:
        return []
    a, pivots = rref(m)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(m, b) -> list[Fraction] | None:
    """One solution of m x = b, or None if inconsistent."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(m, b)]
    a, pivots = rref(aug)
    for row in a:
        if all(x == 0 for x in row[:cols]) and row[cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = a[r][cols]
    return x


def extend_basis(basis: list[list[Fraction]], candidates: list[list[Fraction]]) -> list[int]:
    """Indices of candidates that extend the span of `basis`, greedily.

    Gaussian elimination with the basis rows installed first; returns the
    selected candidate indices in input order.
    """
    pool: list[list[Fraction]] = []
    pivots: list[int] = []

    def insert(v) -> bool:
        v = [Fraction(x) for x in v]
        for row, pc in zip(pool, pivots):
            if v[pc] != 0:
                f = v[pc] / row[pc]
                v = [x - f * y for x, y in zip(v, row)]
        pc = next((c for c, x in enumerate(v) if x != 0), None)
        if pc is None:
            return False
        pool.append(v)
        pivots.append(pc)
        return True

    for row in basis:
        insert(row)
    return [idx for idx, cand in enumerate(candidates) if insert(cand)]


def simplex_max(a_eq: Matrix, b_eq: list[Fraction], objective: list[Fraction]):
    """Maximize objective . x subject to a_eq x = b_eq, x >= 0.

    Exact two-phase simplex with Bland's rule.  Returns (status, value)
    where status is "optimal", "infeasible" or "unbounded".
    """
    m = len(a_eq)
    n = len(a_eq[0]) if m else 0
    a = _copy(a_eq)
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]

    # phase I: artificial basis
    tab = [a[i] + [Fraction(1) if k == i else Fraction(0) for k in range(m)] + [b[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m

    def run(tab, basis, cost, width):
        while True:
            z = [Fraction(0)] * width
            for r, bi in enumerate(basis):
                if cost[bi] != 0:
                    for c in range(width):
                        z[c] += cost[bi] * tab[r][c]
            entering = None
            for c in range(width):
                if c not in basis and cost[c] - z[c] < 0:
                    entering = c
                    break
            if entering is None:
                return "optimal"
            ratios = [(tab[r][width] / tab[r][entering], basis[r], r)
                      for r in range(len(tab)) if tab[r][entering] > 0]
            if not ratios:
                return "unbounded"
            _, _, pr = min(ratios)
            piv = tab[pr][entering]
            tab[pr] = [x / piv for x in tab[pr]]
            for r in range(len(tab)):
                if r != pr and tab[r][entering] != 0:
                    f = tab[r][entering]
                    tab[r] = [x - f * y for x, y in zip(tab[r], tab[pr])]
            basis[pr] = entering

    run(tab, basis, cost, n + m)
    phase1 = sum((tab[r][n + m] for r in range(m) if basis[r] >= n), Fraction(0))
    if phase1 != 0:
        return "infeasible", None
    # drive artificials out of the basis where possible, else drop their rows
    keep = []
    for r in range(m):
        if basis[r] >= n:
            entering = next((c for c in range(n) if tab[r][c] != 0), None)
            if entering is None:
                continue  # redundant row
            piv = tab[r][entering]
            tab[r] = [x / piv for x in tab[r]]
            for rr in range(m):
                if rr != r and tab[rr][entering] != 0:
                    f = tab[rr][entering]
                    tab[rr] = [x - f * y for x, y in zip(tab[rr], tab[r])]
            basis[r] = entering
        keep.append(r)
    tab = [[tab[r][c] for c in range(n)] + [tab[r][n + m]] for r in keep]
    basis = [basis[r] for r in keep]

    cost2 = [-Fraction(c) for c in objective]  # maximize = minimize negation
    status = run(tab, basis, cost2, n)
    if status == "unbounded":
        return "unbounded", None
    value = Fraction(0)
    for r, bi in enumerate(basis):
        value += Fraction(objective[bi]) * tab[r][n]
    return "optimal", value
