"""Exact arithmetic in F_p and F_{p^r}.

Elements are coefficient tuples in the polynomial basis 1, w, w^2, ...
where ``w`` is a root of the field's monic irreducible modulus.  Small
fields (at most ``TABLE_LIMIT`` elements) multiply through log/exp tables;
larger ones multiply by numpy convolution followed by a precomputed
reduction matrix.  The Frobenius a -> a^p is F_p-linear, so large fields
apply it as a matrix.

Moduli default to the lexicographically first monic irreducible
polynomial (constant-term-first digit order), which makes ``GF(p, r)``
deterministic.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

TABLE_LIMIT = 4096
EXHAUSTIVE_LIMIT = 1 << 16


class FieldError(ValueError):
    """Invalid field parameters (composite p, reducible modulus, ...)."""


class FieldMismatchError(TypeError):
    """Operands live in different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p (lists, low degree first) -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return q, a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


class _ModRing:
    """F_p[x]/(f) for monic ``f`` of degree r, vectorised with numpy."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.r = r = len(modulus) - 1
        f = np.array(modulus, dtype=np.int64)
        # row k holds x^(r+k) mod f
        red = np.zeros((max(r - 1, 0), r), dtype=np.int64)
        cur = (-f[:r]) % p
        for k in range(r - 1):
            red[k] = cur
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            cur = (cur - top * f[:r]) % p
        self.red = red

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        full = np.convolve(a, b)
        r = self.r
        low = full[:r].copy()
        if len(full) > r:
            low += full[r:] @ self.red[: len(full) - r]
        return low % self.p

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.zeros(self.r, dtype=np.int64)
        result[0] = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = list(modulus)
    r = len(f) - 1
    if r < 1 or f[-1] % p != 1:
        return False
    if r == 1:
        return True
    if f[0] % p == 0:
        return False
    ring = _ModRing(p, f)
    x = np.zeros(r, dtype=np.int64)
    x[1] = 1

    def frob_iter(k: int) -> np.ndarray:
        h = x
        for _ in range(k):
            h = ring.pow(h, p)
        return h

    for ell in _prime_factors(r):
        h = frob_iter(r // ell)
        diff = [int(c) for c in h]
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, diff, p)
        if len(g) > 1:
            return False
    h = frob_iter(r)
    return [int(c) for c in h] == [int(c) for c in x]


def first_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree r over F_p."""
    if r == 1:
        return (0, 1)
    for code in range(p ** r):
        low = [(code // p ** k) % p for k in range(r)]
        if low[0] == 0:
            continue
        f = low + [1]
        # cheap filter: a root in F_p means a linear factor
        if any(sum(c * pow(t, k, p) for k, c in enumerate(f)) % p == 0 for t in range(p)):
            continue
        if is_irreducible(p, f):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")  # pragma: no cover


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_p[w]/(modulus); also serves as a scalar system."""

    p: int
    r: int
    modulus: tuple[int, ...]
    _arith: object = dc_field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.r < 1 or len(self.modulus) != self.r + 1:
            raise FieldError("modulus degree must equal r")
        if not is_irreducible(self.p, self.modulus):
            raise FieldError(f"modulus {list(self.modulus)} is reducible over F_{self.p}")
        object.__setattr__(self, "_arith", _Arith(self))

    # scalar-system interface
    is_exact = True

    @property
    def order(self) -> int:
        return self.p ** self.r

    @property
    def name(self) -> str:
        base = f"F{self.order}" if self.order < 10_000 else f"F{self.p}^{self.r}"
        if self.modulus == first_irreducible(self.p, self.r):
            return base
        return f"{base}[{','.join(map(str, self.modulus))}]"

    def __repr__(self):
        return f"GF({self.p}, {self.r}, modulus={list(self.modulus)})"

    @property
    def zero(self) -> FFElement:
        return FFElement(self, (0,) * self.r)

    @property
    def one(self) -> FFElement:
        return FFElement(self, (1,) + (0,) * (self.r - 1))

    @property
    def gen(self) -> FFElement:
        """The class of ``w``, a root of the modulus."""
        if self.r == 1:
            return self(-self.modulus[0])
        return FFElement(self, (0, 1) + (0,) * (self.r - 2))

    def __call__(self, value) -> FFElement:
        if isinstance(value, FFElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, (int, np.integer)):
            return FFElement(self, (int(value) % self.p,) + (0,) * (self.r - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            raise FieldError(f"{len(coeffs)} coefficients given for a degree-{self.r} field")
        return FFElement(self, tuple(coeffs) + (0,) * (self.r - len(coeffs)))

    def element(self, code: int) -> FFElement:
        """Element whose base-p digits (constant first) are ``code``."""
        return FFElement(self, tuple((code // self.p ** k) % self.p for k in range(self.r)))

    def elements(self) -> Iterator[FFElement]:
        for code in range(self.order):
            yield self.element(code)

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> FFElement:
        while True:
            x = FFElement(self, tuple(int(c) for c in rng.integers(0, self.p, self.r)))
            if not (nonzero and x.is_zero()):
                return x

    def random_vector(self, rng, n: int) -> np.ndarray:
        out = np.empty(n, dtype=object)
        for i in range(n):
            out[i] = self.random(rng)
        return out

    def distance(self, a, b) -> int:
        """Number of entries where ``a`` and ``b`` differ."""
        return int(sum(x != y for x, y in zip(np.ravel(a), np.ravel(b))))

    def frobenius(self, x: FFElement, e: int = 1) -> FFElement:
        return x.frobenius(e)

    @property
    def frobenius_order(self) -> int:
        return self.r

    def contains(self, other: FieldSpec) -> bool:
        return other.p == self.p and self.r % other.r == 0


@functools.lru_cache(maxsize=None)
def GF(p: int, r: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Field with p^r elements; default modulus is the first irreducible."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if modulus is None:
        modulus = first_irreducible(p, r)
    return FieldSpec(p, r, tuple(int(c) % p for c in modulus))


class _Arith:
    def __init__(self, spec: FieldSpec):
        self.p = p = spec.p
        self.r = r = spec.r
        self.q = q = p ** r
        self.ring = _ModRing(p, spec.modulus)
        self.zero = (0,) * r
        self.one = (1,) + (0,) * (r - 1)
        self._tables = None
        self._frob_mats: dict[int, np.ndarray] = {}
        self.small = q <= TABLE_LIMIT

    def _slow_mul(self, a, b):
        return tuple(int(c) for c in self.ring.mul(np.array(a, dtype=np.int64),
                                                   np.array(b, dtype=np.int64)))

    def tables(self):
        if self._tables is None:
            q = self.q
            for code in range(1, q):
                g = tuple((code // self.p ** k) % self.p for k in range(self.r))
                exp = [self.one]
                cur = g
                while cur != self.one:
                    exp.append(cur)
                    cur = self._slow_mul(cur, g)
                    if len(exp) > q:  # pragma: no cover
                        raise FieldError("modulus is not irreducible")
                if len(exp) == q - 1:
                    break
            log = {e: k for k, e in enumerate(exp)}
            self._tables = (exp, log)
        return self._tables

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def scale(self, c: int, a):
        p = self.p
        c %= p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        if self.small:
            exp, log = self.tables()
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._slow_mul(a, b)

    def pow(self, a, e: int):
        if e == 0:
            return self.one
        if a == self.zero:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self.zero
        if self.small:
            exp, log = self.tables()
            return exp[(log[a] * e) % (self.q - 1)]
        e %= self.q - 1
        return tuple(int(c) for c in self.ring.pow(np.array(a, dtype=np.int64), e))

    def frob_matrix(self, k: int) -> np.ndarray:
        """Matrix M with coeffs(a^(p^k)) = coeffs(a) @ M (mod p)."""
        k %= self.r
        if k not in self._frob_mats:
            rows = []
            for j in range(self.r):
                basis = [0] * self.r
                basis[j] = 1
                rows.append(self.pow(tuple(basis), self.p ** k))
            self._frob_mats[k] = np.array(rows, dtype=np.int64).reshape(self.r, self.r)
        return self._frob_mats[k]

    def frobenius(self, a, k: int):
        k %= self.r
        if k == 0 or a == self.zero:
            return a
        if self.small:
            return self.pow(a, self.p ** k)
        v = np.array(a, dtype=np.int64) @ self.frob_matrix(k) % self.p
        return tuple(int(c) for c in v)

    def mul_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a*x acting on coefficient row vectors."""
        rows = []
        for j in range(self.r):
            basis = [0] * self.r
            basis[j] = 1
            rows.append(self.mul(tuple(basis), a))
        return np.array(rows, dtype=np.int64).reshape(self.r, self.r)


class FFElement:
    """Element of a finite field; immutable and hashable."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, coeffs: tuple[int, ...]):
        self.field = field
        self.c = coeffs

    @property
    def coeffs(self) -> list[int]:
        return list(self.c)

    @property
    def code(self) -> int:
        p = self.field.p
        return sum(c * p ** k for k, c in enumerate(self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._arith.add(self.c, o.c))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._arith.sub(self.c, o.c))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FFElement(self.field, self.field._arith.neg(self.c))

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return FFElement(self.field, self.field._arith.scale(int(other), self.c))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._arith.mul(self.c, o.c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FFElement(self.field, self.field._arith.pow(self.c, int(e)))

    def inverse(self) -> FFElement:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** -1

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def frobenius(self, k: int = 1) -> FFElement:
        """a -> a^(p^k)."""
        return FFElement(self.field, self.field._arith.frobenius(self.c, k))

    def pth_root(self) -> FFElement:
        """The unique b with b^p = a, computed as a^(p^(r-1))."""
        return self.frobenius(self.field.r - 1)

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, np.integer)):
            return self.c == self.field(int(other)).c
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.c))

    def __repr__(self):
        if self.field.r == 1:
            return f"{self.c[0]}"
        return f"{list(self.c)}"


def ff_arith(a: FFElement, b: FFElement) -> dict:
    """All basic operations at once; ``inv`` is None when ``a`` is zero."""
    return {
        "add": a + b,
        "sub": a - b,
        "mul": a * b,
        "inv": None if a.is_zero() else a.inverse(),
        "pow": a ** 3,
    }


def frobenius_field(a: FFElement) -> FFElement:
    return a.frobenius()


def pth_root(a: FFElement) -> FFElement:
    return a.pth_root()


# -- univariate polynomials over a finite field -----------------------------

class UPoly:
    """Univariate polynomial over a finite field, coefficients low-first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x(cls, field: FieldSpec) -> UPoly:
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> FFElement:
        return self.coeffs[k] if k < len(self.coeffs) else self.field.zero

    def _lift(self, other):
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise FieldMismatchError("polynomials over different fields")
            return other
        if isinstance(other, (FFElement, int, np.integer)):
            return UPoly(self.field, [other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self.field, [self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (FFElement, int, np.integer)):
            return UPoly(self.field, [c * other for c in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UPoly(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UPoly:
        result = UPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, t: FFElement) -> FFElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def is_affine_additive(self) -> bool:
        """True when only the constant term and t^(p^k) terms occur."""
        p = self.field.p
        for k, c in enumerate(self.coeffs):
            if k <= 1 or c.is_zero():
                continue
            while k % p == 0:
                k //= p
            if k != 1:
                return False
        return True

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            terms.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(terms)


def _solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """Solve v @ A = b over F_p.  Returns (particular solution or None, kernel basis)."""
    # transpose to the column convention A^T v^T = b^T
    M = np.concatenate([A.T % p, (b % p).reshape(-1, 1)], axis=1).astype(np.int64)
    rows, cols = M.shape[0], M.shape[1] - 1
    pivots = []
    row = 0
    for col in range(cols):
        nz = np.nonzero(M[row:, col])[0]
        if len(nz) == 0:
            continue
        piv = row + nz[0]
        M[[row, piv]] = M[[piv, row]]
        M[row] = M[row] * pow(int(M[row, col]), -1, p) % p
        others = np.nonzero(M[:, col])[0]
        for o in others:
            if o != row:
                M[o] = (M[o] - M[o, col] * M[row]) % p
        pivots.append(col)
        row += 1
        if row == rows:
            break
    if np.any(M[row:, cols] % p):
        particular = None
    else:
        particular = np.zeros(cols, dtype=np.int64)
        for i, col in enumerate(pivots):
            particular[col] = M[i, cols]
    free = [c for c in range(cols) if c not in pivots]
    kernel = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = -M[i, f] % p
        kernel.append(v)
    return particular, kernel


def _linearized_roots(poly: UPoly) -> list[FFElement]:
    F = poly.field
    ar = F._arith
    p = F.p
    L = np.zeros((F.r, F.r), dtype=np.int64)
    for k, c in enumerate(poly.coeffs):
        if k == 0 or c.is_zero():
            continue
        e = round(math.log(k, p))
        L = (L + ar.frob_matrix(e) @ ar.mul_matrix(c.c)) % p
    rhs = np.array((-poly.coeff(0)).c, dtype=np.int64)
    particular, kernel = _solve_mod_p(L, rhs, p)
    if particular is None:
        return []
    roots = []
    for combo in itertools.product(range(p), repeat=len(kernel)):
        v = particular.copy()
        for a, kv in zip(combo, kernel):
            v = (v + a * kv) % p
        roots.append(FFElement(F, tuple(int(x) for x in v)))
    return sorted(set(roots), key=lambda z: z.code)


def find_roots(poly: UPoly, method: str = "auto") -> list[FFElement]:
    """All roots of ``poly`` in its coefficient field, ordered by element code.

    ``method="exhaustive"`` evaluates at every field element.
    ``method="linear"`` handles affine-additive polynomials
    (c + sum a_k t^(p^k)), whose root set is an affine F_p-subspace.
    ``"auto"`` is exhaustive up to ``EXHAUSTIVE_LIMIT`` elements for small
    fields, else linear when applicable.
    """
    if poly.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    F = poly.field
    if method == "auto":
        if F.order <= 256 or (not poly.is_affine_additive() and F.order <= EXHAUSTIVE_LIMIT):
            method = "exhaustive"
        elif poly.is_affine_additive():
            method = "linear"
        else:
            raise NotImplementedError(
                f"root finding for degree {poly.degree} non-additive polynomials over {F.name}")
    if method == "exhaustive":
        if F.order > EXHAUSTIVE_LIMIT:
            raise ValueError(f"{F.name} too large for exhaustive search")
        return [a for a in F.elements() if poly(a).is_zero()]
    if method == "linear":
        if not poly.is_affine_additive():
            raise ValueError("polynomial is not affine-additive")
        return _linearized_roots(poly)
    raise ValueError(f"unknown method {method!r}")


# -- embeddings between fields ----------------------------------------------

class FieldEmbedding:
    """Ring homomorphism F_{p^r} -> F_{p^R} fixed by the image of the generator."""

    def __init__(self, small: FieldSpec, big: FieldSpec, image_of_gen: FFElement):
        self.small = small
        self.big = big
        self.image_of_gen = image_of_gen
        powers = [big.one]
        for _ in range(1, small.r):
            powers.append(powers[-1] * image_of_gen)
        self._powers = powers

    def __call__(self, a: FFElement) -> FFElement:
        a = self.small(a)
        acc = self.big.zero
        for c, w in zip(a.c, self._powers):
            if c:
                acc = acc + w * c
        return acc


@functools.lru_cache(maxsize=None)
def embedding(small: FieldSpec, big: FieldSpec) -> FieldEmbedding:
    """Deterministic embedding of ``small`` into ``big``."""
    if not big.contains(small):
        raise FieldError(f"{small.name} does not embed in {big.name}")
    if small.r == 1:
        return FieldEmbedding(small, big, big.one)
    modulus = UPoly(big, list(small.modulus))
    subgroup_exp = (big.order - 1) // (small.order - 1)
    # walk the subfield's multiplicative group from successive seeds until a
    # root of the small modulus turns up
    for code in range(2, big.order):
        h = big.element(code) ** subgroup_exp
        cur = h
        for _ in range(small.order - 1):
            if modulus(cur).is_zero():
                return FieldEmbedding(small, big, cur)
            cur = cur * h
            if cur == h:
                break
    raise FieldError("no embedding found")  # pragma: no cover
