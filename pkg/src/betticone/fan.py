"""Poset windows of degree sequences, chain enumeration, linear
independence, submaximal-chain classification, and fan verification.

A window P_m holds the degree sequences whose pure diagrams are supported
in rows [-m+i, m+i] of the first three columns.  Chains of the partial
order index simplicial cones; removing one element from a maximal chain
leaves a submaximal chain, and when that chain lies in a unique maximal
chain it determines a boundary halfspace which must appear in the defining
halfspace list of the cone restricted to the window.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import functionals as fn
from .diagrams import (
    KIND_INF,
    KIND_PD0,
    KIND_PD1,
    Comparison,
    DegreeSequence,
    compare,
    inf_seq,
    pd0,
    pd1,
    pure_diagram,
)
from .errors import BettiConeError, FanCheckFailed, NotAChain
from .functionals import FunctionalId, evaluate
from .linalg import rank, simplex_max
from .rings import EmbDim1, Quadric, RingSpec

Chain = tuple[DegreeSequence, ...]

DEFAULT_BOUNDS = {"quadric_m": 3, "embdim1_m": 4, "embdim1_n": 4}


@dataclass(frozen=True)
class PosetWindow:
    ring: RingSpec
    m: int
    elements: tuple[DegreeSequence, ...]


def enumerate_window(ring: RingSpec, m: int) -> PosetWindow:
    """All degree sequences whose (projected) pure diagram fits the window."""
    if m < 0:
        raise BettiConeError("window parameter must be >= 0")
    out: list[DegreeSequence] = []
    for a in range(-m, m + 1):
        out.append(pd0(a))
    if isinstance(ring, Quadric):
        for a in range(-m, m + 1):
            for b in range(max(a + 1, -m + 1), m + 2):
                out.append(inf_seq(a, b))
                out.append(pd1(a, b))
    else:
        n = ring.n
        for a in range(-m, min(m, m + 2 - n) + 1):
            for b in range(max(a + 1, -m + 1), min(a + n - 1, m + 1) + 1):
                out.append(inf_seq(a, b))
    for d in out:
        d.validate(ring)
    key = functools.cmp_to_key(lambda x, y: _order_cmp(ring, x, y))
    return PosetWindow(ring, m, tuple(sorted(out, key=key)))


def _order_cmp(ring: RingSpec, x: DegreeSequence, y: DegreeSequence) -> int:
    c = compare(ring, x, y)
    if c is Comparison.LESS:
        return -1
    if c is Comparison.GREATER:
        return 1
    if c is Comparison.EQUAL:
        return 0
    # incomparable: any consistent linearization will do for sorting
    kx = (x.d0, x.d1 if x.d1 is not None else float("inf"))
    ky = (y.d0, y.d1 if y.d1 is not None else float("inf"))
    return -1 if kx < ky else 1


def sort_chain(ring: RingSpec, elements) -> Chain:
    """Sort into ascending order, raising NotAChain on incomparable pairs."""
    elems = list(elements)
    if len(set(elems)) != len(elems):
        raise NotAChain("repeated element")
    for x, y in itertools.combinations(elems, 2):
        if compare(ring, x, y) is Comparison.INCOMPARABLE:
            raise NotAChain(f"{x} and {y} are incomparable")
    key = functools.cmp_to_key(lambda a, b: _order_cmp(ring, a, b))
    return tuple(sorted(elems, key=key))


def _covers(ring: RingSpec, elements: Chain) -> dict[DegreeSequence, list[DegreeSequence]]:
    less = {
        (x, y)
        for x, y in itertools.permutations(elements, 2)
        if compare(ring, x, y) is Comparison.LESS
    }
    covers: dict[DegreeSequence, list[DegreeSequence]] = {d: [] for d in elements}
    for x, y in less:
        if not any((x, z) in less and (z, y) in less for z in elements):
            covers[x].append(y)
    return covers


def maximal_chains(window: PosetWindow) -> list[Chain]:
    """All maximal chains, as cover paths from minimal to maximal elements."""
    ring = window.ring
    covers = _covers(ring, window.elements)
    covered = {y for ys in covers.values() for y in ys}
    minimal = [d for d in window.elements if d not in covered]
    out: list[Chain] = []

    def walk(path: list[DegreeSequence]):
        nxt = covers[path[-1]]
        if not nxt:
            out.append(tuple(path))
            return
        for y in nxt:
            path.append(y)
            walk(path)
            path.pop()

    for d in minimal:
        walk([d])
    return out


# ---------------------------------------------------------------------------
# projected coordinates and independence


def window_coordinates(m: int) -> list[tuple[int, int]]:
    """Coordinates of the projected window: columns 0..2, rows -m+i..m+i."""
    return [(i, j) for i in range(3) for j in range(-m + i, m + i + 1)]


def projected_vector(ring: RingSpec, d: DegreeSequence, coords) -> list[Fraction]:
    v = pure_diagram(ring, d)
    return [v.entry(i, j) for i, j in coords]


def check_chain_independence(ring: RingSpec, elements) -> bool:
    """Exact rank test on the first three columns, plus the staircase
    property: each member has a nonzero entry where all larger members of
    the chain vanish."""
    chain = sort_chain(ring, elements)
    if not chain:
        return True
    pures = [pure_diagram(ring, d) for d in chain]
    m = max(abs(j - i) for v in pures for i, j, _ in v.support() if i <= 2)
    coords = window_coordinates(m)
    vectors = [projected_vector(ring, d, coords) for d in chain]
    if rank(vectors) != len(chain):
        return False
    for idx, d in enumerate(chain):
        pure = pure_diagram(ring, d)
        uppers = [pure_diagram(ring, e) for e in chain[idx + 1:]]
        if not any(
            all(u.entry(i, j) == 0 for u in uppers)
            for i, j, _ in pure.support()
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# defining halfspaces of the window cone


def defining_halfspaces(ring: RingSpec, m: int) -> list[FunctionalId]:
    out: list[FunctionalId] = []
    for i in range(3):
        for j in range(-m + i, m + i + 1):
            out.append(fn.Eps(i, j))
    if isinstance(ring, Quadric):
        # alpha reaches m+1: that is the halfspace matched by the facets
        # where a row-top pd-1 sequence is removed
        out.extend(fn.AlphaQ(k) for k in range(-m, m + 2))
        out.extend(fn.Gamma(k) for k in range(-m, m + 1))
    else:
        n = ring.n
        out.extend(fn.AlphaA(0, k) for k in range(-m, m + 2 - n + 1))
        out.extend(fn.Theta(k) for k in range(n - m - 1, max(m + 2, m + n - 1) + 1))
        out.extend(fn.Eta(k) for k in range(-m + 1, m + 1 + 1))
    return out


# ---------------------------------------------------------------------------
# submaximal chain classification


@dataclass(frozen=True)
class BoundaryFacetReport:
    chain: Chain
    extension: DegreeSequence
    lower: DegreeSequence | None
    upper: DegreeSequence | None
    case: str
    functional: FunctionalId
    in_defining_list: bool


def _classify_quadric(m: int, dhat, dlo, dhi):
    if dlo is None:
        return ("h", fn.Eps(2, dhat.d1 + 1))
    if dhi is None:
        if dlo.kind == KIND_PD1:
            return ("f", fn.Gamma(dlo.d0))
        if dlo.kind == KIND_PD0:
            return ("g", fn.Eps(0, m))
        return None
    if dhat.kind == KIND_INF:
        if dlo.kind == KIND_PD1 and dhi.kind == KIND_PD1:
            return ("a", fn.Eps(2, dhat.d1 + 1))
        if dlo.kind == KIND_PD1 and dhi.kind == KIND_INF:
            return ("c", fn.Gamma(dlo.d0))
        if dlo.kind == KIND_INF and dhi.kind == KIND_INF:
            return ("d", fn.Eps(0, dhat.d0))
        return None
    if dhat.kind == KIND_PD1:
        if dlo.kind == KIND_INF and dhi.kind == KIND_INF:
            return ("b", fn.AlphaQ(dhat.d1))
        if dlo.kind == KIND_INF and dhi.kind == KIND_PD0:
            return ("e", fn.AlphaQ(dhat.d1))
        if dlo.kind == KIND_PD1 and dhi.kind == KIND_PD1:
            return ("d", fn.Eps(0, dhat.d0))
        return None
    if dlo.kind == KIND_PD0 and dhi.kind == KIND_PD0:
        return ("d", fn.Eps(0, dhat.d0))
    return None


def _classify_embdim1(n: int, m: int, dhat, dlo, dhi):
    if dlo is None:
        return ("h", fn.Eps(1, -m + 1))
    if dhi is None:
        return ("i", fn.Eps(0, m) if n > 2 else fn.AlphaA(0, m))
    if dhat.kind == KIND_PD0:
        if dlo.kind == KIND_PD0:
            # when no window sequence of infinite projective dimension starts
            # at dhat.d0, the bare entry functional already vanishes on the
            # chain and is the listed halfspace
            if dhat.d0 <= m + 2 - n:
                return ("g", fn.AlphaA(0, dhat.d0))
            return ("g", fn.Eps(0, dhat.d0))
        return ("f", fn.AlphaA(0, -m))
    if dhi.kind == KIND_PD0:
        return ("e", fn.Eps(1, m + 1))
    step_lo = (dhat.d0 - dlo.d0, dhat.d1 - dlo.d1)
    step_hi = (dhi.d0 - dhat.d0, dhi.d1 - dhat.d1)
    if step_lo == (1, 0) and step_hi == (1, 0):
        return ("a", fn.Eps(2, dhat.d0 + n))
    if step_lo == (0, 1) and step_hi == (0, 1):
        return ("b", fn.Eps(1, dhat.d1))
    if step_lo == (0, 1) and step_hi == (1, 0):
        return ("c", fn.Theta(dlo.d0 + n))
    if step_lo == (1, 0) and step_hi == (0, 1):
        return ("d", fn.Eta(dlo.d0 + n - 1))
    if step_lo == (1, 1) and step_hi == (1, 1):
        # n = 2 diagonal: the (a)/(b) patterns collapse; on the window span
        # the two entry functionals agree, report the column-1 one
        return ("b", fn.Eps(1, dhat.d1))
    return None


def _unique_extensions(window: PosetWindow, chain: Chain) -> list[DegreeSequence]:
    ring = window.ring
    chain_set = set(chain)
    exts = []
    for x in window.elements:
        if x in chain_set:
            continue
        try:
            extended = sort_chain(ring, chain + (x,))
        except NotAChain:
            continue
        remaining = [y for y in window.elements if y not in chain_set and y != x]
        if not any(_chain_accepts(ring, extended, y) for y in remaining):
            exts.append(x)
    return exts


def _chain_accepts(ring: RingSpec, chain: Chain, y: DegreeSequence) -> bool:
    return all(compare(ring, y, c) is not Comparison.INCOMPARABLE for c in chain)


def classify_submaximal(window: PosetWindow, elements) -> BoundaryFacetReport | None:
    """Classify a submaximal chain: its case tag and matched halfspace when
    it extends uniquely to a maximal chain, None when the extension is not
    unique (an interior facet).  Raises NotAChain / FanCheckFailed on bad
    input or a failed verification."""
    ring = window.ring
    chain = sort_chain(ring, elements)
    exts = _unique_extensions(window, chain)
    if not exts:
        raise BettiConeError("chain is not submaximal: no extension to a maximal chain")
    if len(exts) > 1:
        return None
    dhat = exts[0]
    full = sort_chain(ring, chain + (dhat,))
    pos = full.index(dhat)
    dlo = full[pos - 1] if pos > 0 else None
    dhi = full[pos + 1] if pos + 1 < len(full) else None
    if isinstance(ring, Quadric):
        tagged = _classify_quadric(window.m, dhat, dlo, dhi)
    else:
        tagged = _classify_embdim1(ring.n, window.m, dhat, dlo, dhi)
    if tagged is None:
        raise FanCheckFailed(f"no case pattern matches the removal of {dhat}", witness=full)
    tag, functional = tagged
    for c in chain:
        value = evaluate(functional, pure_diagram(ring, c))
        if value != 0:
            raise FanCheckFailed(
                f"case ({tag}) functional {functional} does not vanish on {c} (= {value})",
                witness=full,
            )
    positive = evaluate(functional, pure_diagram(ring, dhat))
    if positive <= 0:
        raise FanCheckFailed(
            f"case ({tag}) functional {functional} is not positive on {dhat} (= {positive})",
            witness=full,
        )
    return BoundaryFacetReport(
        chain=chain,
        extension=dhat,
        lower=dlo,
        upper=dhi,
        case=tag,
        functional=functional,
        in_defining_list=functional in defining_halfspaces(ring, window.m),
    )


# ---------------------------------------------------------------------------
# whole-fan verification


def lower_left_chain(window: PosetWindow) -> Chain:
    """The maximal chain hugging the lower-left boundary of the window
    poset: from the minimum, always take the cover with the largest d0."""
    ring = window.ring
    covers = _covers(ring, window.elements)
    covered = {y for ys in covers.values() for y in ys}
    minimal = [d for d in window.elements if d not in covered]
    if len(minimal) != 1:
        raise FanCheckFailed(f"window has {len(minimal)} minimal elements", witness=tuple(minimal))
    chain = [minimal[0]]
    while covers[chain[-1]]:
        chain.append(
            max(
                covers[chain[-1]],
                key=lambda d: (d.d0, -(d.d1 if d.d1 is not None else 10 ** 9)),
            )
        )
    return tuple(chain)


def _face_pair_ok(coords, vec, c1: Chain, c2: Chain) -> bool:
    """True iff pos(c1) and pos(c2) meet exactly along pos(c1 & c2):
    maximize the total weight on non-common generators among identities
    sum(lam_g g) = sum(mu_h h), normalized; the optimum must be zero."""
    common = set(c1) & set(c2)
    g1 = [vec[d] for d in c1]
    g2 = [vec[d] for d in c2]
    ncols = len(g1) + len(g2)
    a_eq = []
    for ci in range(len(coords)):
        a_eq.append([g[ci] for g in g1] + [-g[ci] for g in g2])
    a_eq.append([Fraction(1)] * ncols)
    b_eq = [Fraction(0)] * len(coords) + [Fraction(1)]
    objective = [Fraction(0 if d in common else 1) for d in c1]
    objective += [Fraction(0 if d in common else 1) for d in c2]
    status, value = simplex_max(a_eq, b_eq, objective)
    return status == "optimal" and value == 0


@dataclass(frozen=True)
class FanReport:
    ring: RingSpec
    m: int
    n_elements: int
    n_maximal_chains: int
    chain_length: int
    ambient_dimension: int
    facets: tuple[BoundaryFacetReport, ...]
    interior_removals: int
    face_pairs_checked: int
    lower_left_counts: tuple[int, ...] | None
    case_counts: dict

    def table(self) -> str:
        lines = [
            f"ring: {self.ring.family}"
            + (f" (n={self.ring.n})" if isinstance(self.ring, EmbDim1) else ""),
            f"window m: {self.m}   elements: {self.n_elements}",
            f"maximal cones: {self.n_maximal_chains}   dimension: {self.chain_length}"
            f"   ambient: {self.ambient_dimension}",
            f"face pairs checked: {self.face_pairs_checked}",
            f"uniquely extending submaximal chains: {len(self.facets)}"
            f"   interior removals: {self.interior_removals}",
            "case  count  halfspace family",
        ]
        families: dict[str, set[str]] = {}
        for rep in self.facets:
            families.setdefault(rep.case, set()).add(fn.family(rep.functional))
        for tag in sorted(self.case_counts):
            fams = ",".join(sorted(families.get(tag, ())))
            lines.append(f" ({tag})  {self.case_counts[tag]:5d}  {fams}")
        if self.lower_left_counts is not None:
            counts = ",".join(map(str, self.lower_left_counts))
            lines.append(f"lower-left chain type counts: ({counts})")
        lines.append("all facets matched" if self.facets or self.interior_removals else "")
        return "\n".join(line for line in lines if line)


def verify_fan(ring: RingSpec, m: int, *, force: bool = False) -> FanReport:
    """Exhaustive fan verification for one window.

    Asserts that every maximal chain has the full projected dimension with
    independent diagrams, that every uniquely extending submaximal chain
    matches a defining halfspace, and that maximal cones pairwise meet
    along their common face.  Raises FanCheckFailed with a witness on any
    failure.  Bounded to small windows unless force=True.
    """
    if not force:
        if isinstance(ring, Quadric) and m > DEFAULT_BOUNDS["quadric_m"]:
            raise BettiConeError(f"m={m} beyond default bound; pass force=True")
        if isinstance(ring, EmbDim1) and (
            m > DEFAULT_BOUNDS["embdim1_m"] or ring.n > DEFAULT_BOUNDS["embdim1_n"]
        ):
            raise BettiConeError(f"(n,m)=({ring.n},{m}) beyond default bound; pass force=True")
    window = enumerate_window(ring, m)
    chains = maximal_chains(window)
    coords = window_coordinates(m)
    vec = {d: projected_vector(ring, d, coords) for d in window.elements}

    span_dim = rank(list(vec.values()))
    expected_len = 6 * m + 3 if isinstance(ring, Quadric) else span_dim
    if isinstance(ring, Quadric) and span_dim != expected_len:
        raise FanCheckFailed(f"window span has dimension {span_dim} != {expected_len}")
    for chain in chains:
        if len(chain) != expected_len:
            raise FanCheckFailed(
                f"maximal chain of length {len(chain)} != {expected_len}", witness=chain
            )
        if rank([vec[d] for d in chain]) != len(chain):
            raise FanCheckFailed("chain diagrams are linearly dependent", witness=chain)
        if not check_chain_independence(ring, chain):
            raise FanCheckFailed("chain fails the independence/staircase check", witness=chain)

    halfspaces = set(defining_halfspaces(ring, m))
    facets: list[BoundaryFacetReport] = []
    interior = 0
    seen: set[Chain] = set()
    for chain in chains:
        for drop in range(len(chain)):
            sub = chain[:drop] + chain[drop + 1:]
            if sub in seen:
                continue
            seen.add(sub)
            report = classify_submaximal(window, sub)
            if report is None:
                interior += 1
                continue
            if report.functional not in halfspaces:
                raise FanCheckFailed(
                    f"matched halfspace {report.functional} not in the defining list",
                    witness=chain,
                )
            facets.append(report)

    pairs = 0
    for c1, c2 in itertools.combinations(chains, 2):
        pairs += 1
        if not _face_pair_ok(coords, vec, c1, c2):
            raise FanCheckFailed("maximal cones do not meet along a face", witness=(c1, c2))

    counts: dict[str, int] = {}
    for rep in facets:
        counts[rep.case] = counts.get(rep.case, 0) + 1

    ll_counts = None
    if isinstance(ring, Quadric):
        ll = lower_left_chain(window)
        tags = "abcdefgh"
        tally = {t: 0 for t in tags}
        for drop in range(len(ll)):
            rep = classify_submaximal(window, ll[:drop] + ll[drop + 1:])
            if rep is not None and rep.extension == ll[drop]:
                tally[rep.case] += 1
        ll_counts = tuple(tally[t] for t in tags)

    return FanReport(
        ring=ring,
        m=m,
        n_elements=len(window.elements),
        n_maximal_chains=len(chains),
        chain_length=expected_len,
        ambient_dimension=len(coords),
        facets=tuple(facets),
        interior_removals=interior,
        face_pairs_checked=pairs,
        lower_left_counts=ll_counts,
        case_counts=counts,
    )
