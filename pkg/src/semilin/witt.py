"""Truncated p-typical Witt vectors over finite fields.

Coefficient i of a sum, product or negative is an integer polynomial
S_i in the first i+1 coefficients of the inputs.  These structure
polynomials are pinned down by the ghost map

    W_i(x) = sum_{j <= i} p^j x_j^(p^(i-j)),

which turns Witt addition and multiplication into componentwise integer
addition and multiplication.  Solving W_i(S) = W_i(X) (op) W_i(Y) for S_i
gives the recursion

    S_i = (W_i(X) (op) W_i(Y) - sum_{j < i} p^j S_j^(p^(i-j))) / p^i,

whose division is exact.  Polynomials are computed once over the integers
(variables interleaved: X_j is variable 2j, Y_j is 2j+1), cached per
(p, op, i), and reduced mod p when evaluated over a field.

A context with ``field=None`` holds integer coefficients.  Those are the
characteristic-0 lifts used by the ghost oracle; Frobenius and the
fraction field need a finite coefficient field.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .finite_field import FieldSpec, GF, is_prime
from .mpoly import IntPoly

OPS = ("add", "mul", "neg")


class WittContextMismatchError(TypeError):
    pass


class PrecisionError(ArithmeticError):
    """Every retained coefficient was shifted out."""


@dataclass(frozen=True)
class WittContext:
    """Witt vectors of length ``n`` over ``field`` (integers when None)."""

    p: int
    n: int
    field: FieldSpec | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.n < 1:
            raise ValueError("precision must be at least 1")
        if self.field is not None and self.field.p != self.p:
            raise ValueError(f"field {self.field.name} does not have characteristic {self.p}")

    @classmethod
    def over(cls, p: int, r: int, n: int) -> WittContext:
        return cls(p, n, GF(p, r))

    def with_precision(self, n: int) -> WittContext:
        return WittContext(self.p, n, self.field)

    @property
    def is_integral(self) -> bool:
        return self.field is None

    @property
    def zero_coeff(self):
        return 0 if self.field is None else self.field.zero

    @property
    def one_coeff(self):
        return 1 if self.field is None else self.field.one

    def coerce(self, value):
        if self.field is None:
            if not isinstance(value, int):
                raise TypeError(f"integer context needs int coefficients, got {type(value).__name__}")
            return value
        return self.field(value)

    def __call__(self, coeffs: Sequence) -> WittVector:
        coeffs = [self.coerce(c) for c in coeffs]
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return WittVector(self, tuple(coeffs))

    def zero(self) -> WittVector:
        return WittVector(self, (self.zero_coeff,) * self.n)

    def one(self) -> WittVector:
        return teichmuller(self, self.one_coeff)

    def random(self, rng, unit: bool = False) -> WittVector:
        if self.field is None:
            coeffs = [int(v) for v in rng.integers(-5, 6, size=self.n)]
            if unit and coeffs[0] % self.p == 0:
                coeffs[0] += 1
            return WittVector(self, tuple(coeffs))
        coeffs = [self.field.random(rng, nonzero=(unit and k == 0)) for k in range(self.n)]
        return WittVector(self, tuple(coeffs))


@dataclass(frozen=True)
class WittVector:
    ctx: WittContext
    coeffs: tuple

    def coeff(self, i: int):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        return witt_add(self.ctx, self, other)

    def __sub__(self, other):
        return witt_add(self.ctx, self, witt_neg(self.ctx, other))

    def __neg__(self):
        return witt_neg(self.ctx, self)

    def __mul__(self, other):
        if isinstance(other, int):
            other = from_int(self.ctx, other)
        return witt_mul(self.ctx, self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return witt_mul(self.ctx, from_int(self.ctx, other), self)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, k: int) -> WittVector:
        """The first k coefficients, as a vector of length k."""
        if k < 1:
            raise PrecisionError("cannot truncate to zero coefficients")
        if k > self.ctx.n:
            raise ValueError(f"cannot extend precision {self.ctx.n} to {k}")
        return WittVector(self.ctx.with_precision(k), self.coeffs[:k])

    def __repr__(self):
        return f"WittVector({list(self.coeffs)!r})"


# -- structure polynomials --------------------------------------------------

def ghost_polynomial(p: int, i: int, offset: int = 0, nvars: int | None = None) -> IntPoly:
    """W_i in the variables offset, offset+2, ..., offset+2i."""
    nvars = 2 * (i + 1) if nvars is None else nvars
    total = IntPoly(nvars)
    for j in range(i + 1):
        total = total + p ** j * IntPoly.var(nvars, 2 * j + offset) ** (p ** (i - j))
    return total


@functools.lru_cache(maxsize=None)
def _structure(p: int, op: str, i: int) -> IntPoly:
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}")
    nvars = 2 * (i + 1)
    wx = ghost_polynomial(p, i, 0)
    wy = ghost_polynomial(p, i, 1)
    target = {"add": wx + wy, "mul": wx * wy, "neg": -wx}[op]
    for j in range(i):
        prev = _structure(p, op, j)
        lifted = IntPoly(nvars, prev.terms, prev.maxexp)
        target = target - p ** j * lifted ** (p ** (i - j))
    try:
        return target.exact_div(p ** i)
    except ArithmeticError as exc:  # pragma: no cover - would mean the recursion is wrong
        raise AssertionError(f"ghost recursion not integral at p={p}, {op}, i={i}") from exc


@functools.lru_cache(maxsize=None)
def _reduced(p: int, op: str, i: int) -> IntPoly:
    return _structure(p, op, i).reduce_mod(p)


def witt_structure_polys(ctx: WittContext, op: str, i: int) -> IntPoly:
    """Integer structure polynomial S_i for ``op`` in {add, mul, neg}.

    Variables are interleaved: X_j is variable 2j, Y_j is 2j+1 (``neg``
    only uses the X's).
    """
    if not 0 <= i < ctx.n:
        raise IndexError(f"index {i} outside precision {ctx.n}")
    return _structure(ctx.p, op, i)


def structure_value(ctx: WittContext, op: str, i: int, xs, ys, one=None):
    """S_i(xs; ys) over any commutative ring containing the coefficients.

    With a field context the mod-p reduction of S_i is used, so ``xs`` and
    ``ys`` may live in any F_p-algebra (polynomials over the field, say);
    ``one`` is that ring's unit.
    """
    values = []
    for j in range(i + 1):
        values.append(xs[j])
        values.append(ys[j] if ys is not None else ctx.zero_coeff)
    if ctx.field is None:
        return _structure(ctx.p, op, i).evaluate(values, one=1 if one is None else one)
    return _reduced(ctx.p, op, i).evaluate(values, one=ctx.field.one if one is None else one)


_evaluate = structure_value


def _check(ctx: WittContext, *vs: WittVector):
    for v in vs:
        if not isinstance(v, WittVector):
            raise TypeError(f"expected a WittVector, got {type(v).__name__}")
        if v.ctx != ctx:
            raise WittContextMismatchError(f"{v.ctx} does not match {ctx}")


def _binary(ctx, op, x, y) -> WittVector:
    _check(ctx, x, y)
    return WittVector(ctx, tuple(_evaluate(ctx, op, i, x.coeffs, y.coeffs) for i in range(ctx.n)))


def witt_add(ctx: WittContext, x: WittVector, y: WittVector) -> WittVector:
    return _binary(ctx, "add", x, y)


def witt_mul(ctx: WittContext, x: WittVector, y: WittVector) -> WittVector:
    return _binary(ctx, "mul", x, y)


def witt_neg(ctx: WittContext, x: WittVector) -> WittVector:
    _check(ctx, x)
    return WittVector(ctx, tuple(_evaluate(ctx, "neg", i, x.coeffs, None) for i in range(ctx.n)))


# -- ghost oracle -----------------------------------------------------------

def ghost_components(ctx: WittContext, x: WittVector) -> list[int]:
    """W_i(x) for i < n; integer coefficients only."""
    p = ctx.p
    if not all(isinstance(c, int) for c in x.coeffs):
        raise TypeError("ghost components need integer coefficients")
    return [sum(p ** j * x.coeffs[j] ** (p ** (i - j)) for j in range(i + 1)) for i in range(ctx.n)]


def from_ghost(ctx: WittContext, ghost: Sequence[int]) -> WittVector:
    """Inverse of the ghost map over the integers.

    Raises ValueError when the ghost vector has no integral preimage.
    """
    p = ctx.p
    xs: list[int] = []
    for i, w in enumerate(ghost):
        rest = w - sum(p ** j * xs[j] ** (p ** (i - j)) for j in range(i))
        if rest % p ** i:
            raise ValueError(f"ghost component {i} has no integral preimage")
        xs.append(rest // p ** i)
    return WittVector(ctx.with_precision(len(xs)) if len(xs) != ctx.n else ctx, tuple(xs))


def _reduce(ctx: WittContext, x: WittVector) -> WittVector:
    """Map integer coefficients into ctx.field."""
    return WittVector(ctx, tuple(ctx.coerce(c % ctx.p) if ctx.field else c for c in x.coeffs))


def from_int(ctx: WittContext, k: int) -> WittVector:
    """The image of the integer k."""
    lifted = from_ghost(WittContext(ctx.p, ctx.n), [k] * ctx.n)
    return _reduce(ctx, lifted)


def teichmuller(ctx: WittContext, a) -> WittVector:
    """[a] = (a, 0, 0, ...)."""
    return WittVector(ctx, (ctx.coerce(a),) + (ctx.zero_coeff,) * (ctx.n - 1))


# -- Frobenius, Verschiebung, valuation -------------------------------------

def _needs_field(ctx: WittContext, what: str):
    if ctx.field is None:
        raise TypeError(f"{what} needs a finite coefficient field")


def witt_frobenius(ctx: WittContext, x: WittVector, k: int = 1) -> WittVector:
    """Coefficientwise x_i -> x_i^(p^k); k may be negative (perfect fields)."""
    _needs_field(ctx, "frobenius")
    _check(ctx, x)
    return WittVector(ctx, tuple(c.frobenius(k % ctx.field.r) for c in x.coeffs))


def witt_frobenius_inverse(ctx: WittContext, x: WittVector) -> WittVector:
    _needs_field(ctx, "frobenius")
    _check(ctx, x)
    return WittVector(ctx, tuple(c.pth_root() for c in x.coeffs))


def witt_verschiebung(ctx: WittContext, x: WittVector) -> WittVector:
    """(x_0, x_1, ...) -> (0, x_0, x_1, ...), truncated."""
    _check(ctx, x)
    return WittVector(ctx, (ctx.zero_coeff,) + x.coeffs[:-1])


def valuation(ctx: WittContext, x: WittVector) -> int | float:
    """Index of the first nonzero coefficient; inf for zero."""
    _check(ctx, x)
    for i, c in enumerate(x.coeffs):
        if c != 0:
            return i
    return math.inf


def witt_unit_inverse(ctx: WittContext, x: WittVector) -> WittVector:
    """y with x*y = 1, solved one coefficient at a time.

    Coefficient i of x*y is linear in y_i (slope x_0^(p^i)), so y_i follows
    from two evaluations of S_i^mul.
    """
    _needs_field(ctx, "unit inverse")
    _check(ctx, x)
    if x.coeffs[0] == 0:
        raise ZeroDivisionError("not a unit: leading coefficient is zero")
    F = ctx.field
    ys = [F.zero] * ctx.n
    for i in range(ctx.n):
        target = F.one if i == 0 else F.zero
        ys[i] = F.zero
        at0 = _evaluate(ctx, "mul", i, x.coeffs, ys)
        ys[i] = F.one
        slope = _evaluate(ctx, "mul", i, x.coeffs, ys) - at0
        ys[i] = (target - at0) / slope
    return WittVector(ctx, tuple(ys))


# -- fraction field ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FractionFieldElement:
    """p^m * unit, with the unit's length as the working precision.

    ``unit`` is None for the distinguished zero element.
    """

    m: int
    unit: WittVector | None

    def __post_init__(self):
        if self.unit is not None:
            _needs_field(self.unit.ctx, "the fraction field")
            if self.unit.coeffs[0] == 0:
                raise ValueError("unit part must have a nonzero leading coefficient")

    @classmethod
    def zero(cls, ctx: WittContext) -> FractionFieldElement:
        return _Zero(ctx)

    @classmethod
    def one(cls, ctx: WittContext) -> FractionFieldElement:
        return cls(0, ctx.one())

    @classmethod
    def from_witt(cls, x: WittVector) -> FractionFieldElement:
        """Normalise x = V^v(z) = p^v F^-v(z); precision drops by v."""
        ctx = x.ctx
        v = valuation(ctx, x)
        if v == math.inf:
            return _Zero(ctx)
        short = ctx.with_precision(ctx.n - v)
        z = WittVector(short, x.coeffs[v:])
        for _ in range(v):
            z = witt_frobenius_inverse(short, z)
        return cls(v, z)

    @property
    def ctx(self) -> WittContext:
        return self.unit.ctx

    @property
    def precision(self) -> int:
        return self.unit.ctx.n

    def is_zero(self) -> bool:
        return self.unit is None

    def __mul__(self, other):
        return ff_mul(self, other)

    def __truediv__(self, other):
        return ff_mul(self, ff_inv(other))

    def __add__(self, other):
        return ff_add(self, other)

    def __neg__(self):
        return FractionFieldElement(self.m, -self.unit)

    def __sub__(self, other):
        return ff_add(self, -other)

    def scale_p(self, j: int) -> FractionFieldElement:
        """p^j * self."""
        return FractionFieldElement(self.m + j, self.unit)

    def frobenius(self, k: int = 1) -> FractionFieldElement:
        return FractionFieldElement(self.m, witt_frobenius(self.ctx, self.unit, k))

    def first_difference(self, other: FractionFieldElement) -> int | None:
        """First unit coefficient where the two differ at common precision."""
        k = min(self.precision, other.precision)
        for i in range(k):
            if self.unit.coeffs[i] != other.unit.coeffs[i]:
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, FractionFieldElement):
            return NotImplemented
        if other.is_zero():
            return False
        return self.m == other.m and self.first_difference(other) is None

    def __hash__(self):
        return hash((self.m, self.unit.coeffs[0]))

    def __repr__(self):
        return f"p^{self.m}*{list(self.unit.coeffs)!r}"


class _Zero(FractionFieldElement):
    """The zero of the fraction field (no valuation, no unit)."""

    def __init__(self, ctx: WittContext):
        object.__setattr__(self, "m", math.inf)
        object.__setattr__(self, "unit", None)
        object.__setattr__(self, "_ctx", ctx)

    @property
    def ctx(self):
        return self._ctx

    @property
    def precision(self):
        return self._ctx.n

    def __neg__(self):
        return self

    def scale_p(self, j):
        return self

    def frobenius(self, k=1):
        return self

    def __eq__(self, other):
        return isinstance(other, FractionFieldElement) and other.is_zero()

    def __hash__(self):
        return 0

    def __repr__(self):
        return "0"


def _same_base(a: FractionFieldElement, b: FractionFieldElement):
    ca, cb = a.ctx, b.ctx
    if ca.p != cb.p or ca.field != cb.field:
        raise WittContextMismatchError(f"{ca} does not match {cb}")


def ff_mul(a: FractionFieldElement, b: FractionFieldElement) -> FractionFieldElement:
    _same_base(a, b)
    if a.is_zero() or b.is_zero():
        return _Zero(a.ctx.with_precision(min(a.precision, b.precision)))
    k = min(a.precision, b.precision)
    ua, ub = a.unit.truncate(k), b.unit.truncate(k)
    # a unit times a unit has leading coefficient x_0 y_0 != 0: nothing to shift
    return FractionFieldElement(a.m + b.m, witt_mul(ua.ctx, ua, ub))


def ff_inv(a: FractionFieldElement) -> FractionFieldElement:
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse in the fraction field")
    return FractionFieldElement(-a.m, witt_unit_inverse(a.ctx, a.unit))


def ff_add(a: FractionFieldElement, b: FractionFieldElement) -> FractionFieldElement:
    """Sum at the precision both summands support.

    With m = min(m_a, m_b) and k = |m_a - m_b|, p^k u = V^k F^k u is known
    to k more coefficients than u, so the sum is known to
    min(n_a, n_b + k) coefficients at scale p^m; leading zeros of the sum
    are then shifted out.
    """
    _same_base(a, b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if b.m < a.m:
        a, b = b, a
    k = b.m - a.m
    n = min(a.precision, b.precision + k)
    ctx = a.ctx.with_precision(n)
    ub = b.unit.truncate(min(b.precision, n))
    shifted = list(ub.coeffs)
    for _ in range(k):
        shifted = [c.frobenius() for c in shifted]
    shifted = ([ctx.zero_coeff] * k + shifted)[:n]
    total = witt_add(ctx, a.unit.truncate(n), WittVector(ctx, tuple(shifted)))
    v = valuation(ctx, total)
    if v == math.inf:
        raise PrecisionError("sum vanishes at the available precision")
    out = FractionFieldElement.from_witt(total)
    return out.scale_p(a.m)


def ff_frobenius(a: FractionFieldElement) -> FractionFieldElement:
    """phi(p^m u) = p^m F(u)."""
    return a.frobenius()


def ff_elt_ops(a: FractionFieldElement, b: FractionFieldElement) -> dict:
    return {
        "mul": ff_mul(a, b),
        "inv": None if a.is_zero() else ff_inv(a),
        "frobenius_K": ff_frobenius(a),
    }


@dataclass(frozen=True)
class FractionField:
    """K(p, k) as a scalar system that Frobenius twists can act on."""

    ctx: WittContext

    def __post_init__(self):
        _needs_field(self.ctx, "the fraction field")

    @property
    def frobenius_order(self) -> int:
        return self.ctx.field.r

    @property
    def one(self) -> FractionFieldElement:
        return FractionFieldElement.one(self.ctx)

    def frobenius(self, x: FractionFieldElement, e: int = 1) -> FractionFieldElement:
        return x.frobenius(e)

    def random(self, rng, nonzero: bool = True, max_slope: int = 2) -> FractionFieldElement:
        m = int(rng.integers(-max_slope, max_slope + 1))
        return FractionFieldElement(m, self.ctx.random(rng, unit=True))

    def random_vector(self, rng, n: int):
        out = np.empty(n, dtype=object)
        for k in range(n):
            out[k] = self.random(rng)
        return out

    def distance(self, a, b) -> int:
        return sum(1 for x, y in zip(a, b) if x != y)

    @property
    def is_exact(self) -> bool:
        return True
