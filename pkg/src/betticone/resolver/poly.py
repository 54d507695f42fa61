"""Sparse polynomials over the rationals in one or two variables, and the
graded coefficient rings the resolver works over: rationals[x],
rationals[x,y], and their hypersurface quotients.

Quotient arithmetic reduces modulo the single defining form by division
against its graded-lex leading term; a principal ideal needs nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import BettiConeError
from ..rings import EmbDim1, Quadric, RingSpec

Exp = tuple[int, ...]


class Poly:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        data: dict[Exp, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise BettiConeError(f"bad exponent {exp} for {nvars} variables")
            c = Fraction(c)
            if c:
                data[exp] = data.get(exp, Fraction(0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", {e: c for e, c in data.items() if c})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous polynomial; None for the zero polynomial."""
        if not self.terms:
            return None
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            raise BettiConeError("inhomogeneous polynomial has no single degree")
        return degs.pop()

    def constant_value(self) -> Fraction | None:
        """The scalar if this is a (possibly zero) constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (exp, c), = self.terms.items()
            if all(e == 0 for e in exp):
                return c
        return None

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    def scaled(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "xy"[: self.nvars]
        bits = []
        for e in sorted(self.terms, key=lambda t: (sum(t), tuple(-x for x in t))):
            c = self.terms[e]
            mono = "".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            if mono:
                bits.append(mono if c == 1 else f"{c}*{mono}" if c != -1 else f"-{mono}")
            else:
                bits.append(str(c))
        return "+".join(bits).replace("+-", "-")


def zero(nvars: int) -> Poly:
    return Poly(nvars, ())


def const(nvars: int, c) -> Poly:
    return Poly(nvars, [((0,) * nvars, Fraction(c))])


def monomial(nvars: int, exp: Exp, c=1) -> Poly:
    return Poly(nvars, [(tuple(exp), Fraction(c))])


def variables(nvars: int) -> list[Poly]:
    return [monomial(nvars, tuple(1 if k == i else 0 for k in range(nvars))) for i in range(nvars)]


def _grlex_key(exp: Exp):
    return (sum(exp), exp)  # x before y at equal degree


@dataclass(frozen=True)
class GradedRing:
    """Standard graded ring with a monomial basis in each degree.

    modulus None means the ambient polynomial ring; otherwise arithmetic is
    reduced modulo the (single) homogeneous form.
    """

    nvars: int
    modulus: Poly | None

    def __post_init__(self):
        if self.modulus is not None and self.modulus.is_zero():
            raise BettiConeError("zero modulus")

    @property
    def lead(self) -> Exp | None:
        if self.modulus is None:
            return None
        return max(self.modulus.terms, key=_grlex_key)

    def reduce(self, p: Poly) -> Poly:
        if self.modulus is None:
            return p
        lead = self.lead
        lc = self.modulus.terms[lead]
        while True:
            top = None
            for e in p.terms:
                if all(a >= b for a, b in zip(e, lead)):
                    if top is None or _grlex_key(e) > _grlex_key(top):
                        top = e
            if top is None:
                return p
            quot = monomial(self.nvars, tuple(a - b for a, b in zip(top, lead)),
                            p.terms[top] / lc)
            p = p - quot * self.modulus

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    def monomials(self, t: int) -> list[Exp]:
        """Standard monomial basis of the degree-t piece."""
        if t < 0:
            return []
        if self.nvars == 1:
            exps = [(t,)]
        else:
            exps = [(a, t - a) for a in range(t, -1, -1)]
        lead = self.lead
        if lead is None:
            return exps
        return [e for e in exps if not all(a >= b for a, b in zip(e, lead))]

    def dim(self, t: int) -> int:
        return len(self.monomials(t))


@dataclass(frozen=True)
class PolyRingXY:
    """Marker for the ambient ring rationals[x,y]."""

    @property
    def family(self) -> str:
        return "poly_xy"


@dataclass(frozen=True)
class PolyRingX:
    """Marker for the ambient ring rationals[x]."""

    @property
    def family(self) -> str:
        return "poly_x"


CoefficientRing = RingSpec | PolyRingXY | PolyRingX

POLY_XY = PolyRingXY()
POLY_X = PolyRingX()


def quadric_form(spec: Quadric) -> Poly:
    a, b, c = spec.coeffs
    return Poly(2, [((2, 0), a), ((1, 1), b), ((0, 2), c)])


def graded_ring(cr: CoefficientRing) -> GradedRing:
    if isinstance(cr, PolyRingXY):
        return GradedRing(2, None)
    if isinstance(cr, PolyRingX):
        return GradedRing(1, None)
    if isinstance(cr, Quadric):
        return GradedRing(2, quadric_form(cr))
    if isinstance(cr, EmbDim1):
        return GradedRing(1, monomial(1, (cr.n,)))
    raise BettiConeError(f"not a coefficient ring: {cr!r}")


def ambient_of(cr: CoefficientRing) -> CoefficientRing:
    """The polynomial ring a hypersurface quotient lives under."""
    if isinstance(cr, Quadric):
        return POLY_XY
    if isinstance(cr, EmbDim1):
        return POLY_X
    return cr


def defining_form(cr: RingSpec) -> Poly:
    if isinstance(cr, Quadric):
        return quadric_form(cr)
    return monomial(1, (cr.n,))
