"""Ring descriptors for the two hypersurface families.

`EmbDim1(n)` is rationals[x]/<x^n>, `Quadric(a, b, c)` is
rationals[x,y]/<a*x^2 + b*xy + c*y^2>.  Everything downstream of the
resolver only depends on the family (and n); the quadric coefficients
matter when actual module resolutions are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BettiConeError


@dataclass(frozen=True)
class EmbDim1:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise BettiConeError(f"EmbDim1 requires an integer n >= 2, got {self.n!r}")

    @property
    def family(self) -> str:
        return "embdim1"

    def tail_signature(self) -> tuple[int, int, int]:
        """(column period, degree shift, anchor) of certified tails."""
        return (2, self.n, 1)

    def hilbert(self, t: int) -> int:
        """Dimension of the degree-t piece of the ring itself."""
        return 1 if 0 <= t < self.n else 0


@dataclass(frozen=True)
class Quadric:
    coeffs: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != 3 or all(c == 0 for c in coeffs):
            raise BettiConeError("Quadric requires coefficients (a, b, c) != (0, 0, 0)")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def family(self) -> str:
        return "quadric"

    def tail_signature(self) -> tuple[int, int, int]:
        return (1, 1, 2)

    def hilbert(self, t: int) -> int:
        if t < 0:
            return 0
        return 1 if t == 0 else 2


RingSpec = EmbDim1 | Quadric

X_SQUARED = Quadric((Fraction(1), Fraction(0), Fraction(0)))
XY = Quadric((Fraction(0), Fraction(1), Fraction(0)))


def shift_step(ring: RingSpec) -> int:
    """Degree growth scale: deg q for the quadric, n in embedding dimension 1."""
    return 2 if isinstance(ring, Quadric) else ring.n
