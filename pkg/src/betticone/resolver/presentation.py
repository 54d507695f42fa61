"""Finitely presented graded modules: generator degrees plus a homogeneous
relation matrix over the coefficient ring."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BettiConeError
from .poly import CoefficientRing, Poly, graded_ring


@dataclass(frozen=True)
class GradedPresentation:
    """coker of a homogeneous matrix F1 -> F0.

    rels[r][c] is the row-r entry of relation c; its degree must equal
    col_degree(c) - gens[r] whenever nonzero.  Zero relation columns are
    rejected (their degree would be meaningless).
    """

    ring: CoefficientRing
    gens: tuple[int, ...]
    rels: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        gens = tuple(int(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        rels = tuple(tuple(r) for r in self.rels)
        object.__setattr__(self, "rels", rels)
        if rels and len(rels) != len(gens):
            raise BettiConeError("relation matrix must have one row per generator")
        self.column_degrees()  # validates homogeneity

    @property
    def ncols(self) -> int:
        return len(self.rels[0]) if self.rels and self.rels[0] else 0

    def column_degrees(self) -> tuple[int, ...]:
        if not self.rels or not self.rels[0]:
            return ()
        ncols = len(self.rels[0])
        if any(len(row) != ncols for row in self.rels):
            raise BettiConeError("ragged relation matrix")
        degs = []
        for c in range(ncols):
            col_deg = None
            for r, g in enumerate(self.gens):
                p = self.rels[r][c]
                if p.is_zero():
                    continue
                if not p.is_homogeneous():
                    raise BettiConeError(f"entry ({r},{c}) is not homogeneous")
                d = p.degree() + g
                if col_deg is None:
                    col_deg = d
                elif col_deg != d:
                    raise BettiConeError(f"column {c} mixes degrees {col_deg} and {d}")
            if col_deg is None:
                raise BettiConeError(f"relation column {c} is zero; drop it")
            degs.append(col_deg)
        return tuple(degs)

    def reduced(self) -> "GradedPresentation":
        """Entries normalized modulo the defining form of the ring."""
        ring = graded_ring(self.ring)
        rels = tuple(tuple(ring.reduce(p) for p in row) for row in self.rels)
        keep = [c for c in range(len(rels[0]) if rels and rels[0] else 0)
                if any(not rels[r][c].is_zero() for r in range(len(self.gens)))]
        rels = tuple(tuple(row[c] for c in keep) for row in rels) if keep else ()
        return GradedPresentation(self.ring, self.gens, rels)
