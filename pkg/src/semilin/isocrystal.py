"""One-dimensional isocrystals over the fraction field of W(k), k finite.

A one-dimensional isocrystal is K with a bijective Frobenius-semilinear
map, necessarily x -> c * phi(x) for some nonzero c.  Writing c = p^m u
with u a unit, multiplication by a unit y is an equivalence from the
standard isocrystal p^m phi to this one exactly when phi(y) u = y.  That
equation is solved one Witt coefficient at a time.

At step i, put x = (x_0, ..., x_{i-1}, t, 0, ...) with t unknown.  The
lower coefficients of phi(x) a and x b already agree, and coefficient i of
each side is S_i^mul evaluated over k[t].  Their difference has the shape

    a_0^(p^i) t^p - b_0^(p^i) t + (terms in known coefficients)

which is additive in t, so its roots form a coset of an F_p-subspace.  The
root may lie outside k.  Algebraic closure is then approximated by
climbing a ladder of extensions k' of k with [k' : k] dividing
(p - 1) p^(n-1).  That bound suffices: the first step needs a (p-1)-th
root, and every later step is an Artin-Schreier equation, so it splits in
an extension of degree 1 or p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import FieldSpec, GF, UPoly, embedding, find_roots
from .scalar import RingHom
from .semilinear import SemilinearMap, apply
from .witt import (
    FractionField, FractionFieldElement, WittContext, WittVector, ff_frobenius, ff_mul,
    structure_value, teichmuller,
)


class FieldTooSmallError(ArithmeticError):
    """A step of the Frobenius-twist recursion has no root in the field."""

    def __init__(self, step: int, polynomial: UPoly, field: FieldSpec):
        super().__init__(
            f"step {step}: {polynomial!r} has no suitable root in {field.name}; "
            f"enlarge r (try --extend)")
        self.step = step
        self.polynomial = polynomial
        self.field = field


# -- the Frobenius-twist solver --------------------------------------------

def step_polynomial(a: WittVector, b: WittVector, known, i: int) -> UPoly:
    """Coefficient i of phi(x) a - x b as a polynomial in t = x_i."""
    ctx = a.ctx
    F, p = ctx.field, ctx.p
    one = UPoly(F, [1])
    t = UPoly.x(F)
    consts = [UPoly(F, [c]) for c in known[:i]]
    xs = consts + [t]
    fxs = [c ** p for c in consts] + [t ** p]
    av = [UPoly(F, [c]) for c in a.coeffs[:i + 1]]
    bv = [UPoly(F, [c]) for c in b.coeffs[:i + 1]]
    lhs = structure_value(ctx, "mul", i, fxs, av, one=one)
    rhs = structure_value(ctx, "mul", i, xs, bv, one=one)
    poly = lhs - rhs
    if poly.degree > p:  # pragma: no cover - guards the symbolic derivation
        raise AssertionError(f"step {i} polynomial has degree {poly.degree} > p")
    return poly


def solve_frobenius_twist(a: WittVector, b: WittVector) -> WittVector:
    """A nonzero x with frobenius(x) * a == x * b, x_0 != 0.

    Takes the smallest-code admissible root at every step; raises
    :class:`FieldTooSmallError` if a step has none.
    """
    ctx = a.ctx
    if b.ctx != ctx:
        raise ValueError("a and b live in different contexts")
    if ctx.field is None:
        raise TypeError("the solver needs a finite coefficient field")
    if a.coeffs[0] == 0 or b.coeffs[0] == 0:
        raise ValueError("a and b need nonzero leading coefficients")
    known: list = []
    for i in range(ctx.n):
        poly = step_polynomial(a, b, known, i)
        roots = find_roots(poly)
        if i == 0:
            roots = [r for r in roots if not r.is_zero()]
        if not roots:
            raise FieldTooSmallError(i, poly, ctx.field)
        known.append(roots[0])
    return WittVector(ctx, tuple(known))


# -- change of coefficient field -------------------------------------------

def extension_degrees(p: int, n: int) -> list[int]:
    """Divisors of (p - 1) p^(n-1), ascending."""
    bound = (p - 1) * p ** (n - 1)
    return [k for k in range(1, bound + 1) if bound % k == 0]


def lift_vector(x: WittVector, big: FieldSpec) -> WittVector:
    if x.ctx.field == big:
        return x
    emb = embedding(x.ctx.field, big)
    ctx = WittContext(x.ctx.p, x.ctx.n, big)
    return WittVector(ctx, tuple(emb(c) for c in x.coeffs))


def lift_element(c: FractionFieldElement, big: FieldSpec) -> FractionFieldElement:
    if c.is_zero():
        return FractionFieldElement.zero(WittContext(c.ctx.p, c.ctx.n, big))
    return FractionFieldElement(c.m, lift_vector(c.unit, big))


# -- isocrystals ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Isocrystal1D:
    """K with structure map x -> c * phi(x)."""

    c: FractionFieldElement

    def __post_init__(self):
        if self.c.is_zero():
            raise ValueError("the structure constant must be nonzero")

    @property
    def ctx(self) -> WittContext:
        return self.c.ctx

    def __call__(self, x: FractionFieldElement) -> FractionFieldElement:
        return ff_mul(self.c, ff_frobenius(x))

    def as_semilinear(self) -> SemilinearMap:
        """The same map as a 1x1 matrix twisted by Frobenius."""
        matrix = np.empty((1, 1), dtype=object)
        matrix[0, 0] = self.c
        f = SemilinearMap(RingHom.frobenius(FractionField(self.ctx), 1), matrix)
        probe = FractionFieldElement(0, self.ctx.one())
        vec = np.empty(1, dtype=object)
        vec[0] = probe
        assert apply(f, vec)[0] == self(probe)
        return f


@dataclass(frozen=True)
class StandardIsocrystal:
    """K with structure map p^m * phi."""

    m: int

    def over(self, ctx: WittContext) -> Isocrystal1D:
        return Isocrystal1D(FractionFieldElement(self.m, ctx.one()))


@dataclass(frozen=True, eq=False)
class IsocrystalEquivalence:
    """Multiplication by the unit ``y`` from p^slope phi to the target."""

    slope: int
    y: FractionFieldElement
    precision: int
    field: FieldSpec


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    first_difference: int | None = None
    valuations: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_equivalence(X: Isocrystal1D, E: IsocrystalEquivalence) -> VerificationReport:
    """Check c * phi(y) == p^m * y coefficient by coefficient.

    Works only through Witt multiplication and Frobenius, independently of
    the solver's symbolic step polynomials.
    """
    c = lift_element(X.c, E.field) if X.ctx.field != E.field else X.c
    lhs = ff_mul(c, ff_frobenius(E.y))
    rhs = E.y.scale_p(E.slope)
    if lhs.m != rhs.m:
        return VerificationReport(False, None, (lhs.m, rhs.m))
    diff = lhs.first_difference(rhs)
    return VerificationReport(diff is None, diff, None)


def classify(X: Isocrystal1D, extend: bool = True) -> IsocrystalEquivalence:
    """Slope m and unit y with y * (p^m phi)(v) = X(y * v).

    With ``extend`` the coefficient field is enlarged along
    :func:`extension_degrees` until every step has a root; otherwise the
    solver error propagates.
    """
    c = X.c
    m, u = c.m, c.unit
    ctx = u.ctx
    F = ctx.field
    degrees = extension_degrees(ctx.p, ctx.n) if extend else [1]
    err = None
    for k in degrees:
        big = F if k == 1 else GF(F.p, F.r * k)
        ub = lift_vector(u, big)
        one = WittContext(ctx.p, ctx.n, big).one()
        try:
            y = solve_frobenius_twist(ub, one)
        except FieldTooSmallError as exc:
            err = err or exc
            continue
        return IsocrystalEquivalence(m, FractionFieldElement(0, y), ctx.n, big)
    raise err


def teichmuller_element(ctx: WittContext, a) -> FractionFieldElement:
    return FractionFieldElement(0, teichmuller(ctx, a))


def slope(X: Isocrystal1D) -> int:
    """The slope is the valuation of the structure constant."""
    return X.c.m
