"""Scalar systems, ring homomorphisms between them, and real-or-complex fields.

A ring homomorphism is carried as a :class:`RingHom` with a symbolic
``kind`` so that composites can be put in a canonical form: conjugation
composed with itself is the identity descriptor, identities are absorbed,
Frobenius powers add modulo their order.  :func:`resolve_comp_triple` and
:func:`resolve_inv_pair` return those canonical forms together with the
pieces they certify.

Scalar systems are plain objects.  ``REAL`` and ``COMPLEX`` are the two
:class:`RCField` instances; finite fields (:class:`~semilin.finite_field.FieldSpec`)
and Witt fraction fields supply ``frobenius`` and ``frobenius_order`` and
can be twisted by Frobenius powers.

The real-or-complex interface is deliberately small.  It consists of
``conj`` (an involutive ring homomorphism), ``re``, ``im``, the element
``I`` (zero over the reals, with ``I * I == -1`` over the complex numbers),
``norm`` and ``norm_sq`` (``norm_sq == re**2 + im**2``), all vectorised
over numpy arrays.  Code written against it runs unchanged for both fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

import numpy as np


class HomMismatchError(TypeError):
    """Codomain of one homomorphism is not the domain of the next."""


class NotInvertibleError(ValueError):
    """A ring homomorphism has no registered inverse."""


class RCField:
    """A field that is either R or C, vectorised over numpy arrays."""

    name: str
    dtype: type
    I: Any
    is_exact = False

    def conj(self, z):
        raise NotImplementedError

    def re(self, z):
        return np.real(z)

    def im(self, z):
        return np.imag(z)

    def norm_sq(self, z):
        return self.re(z) ** 2 + self.im(z) ** 2

    def norm(self, z):
        return np.sqrt(self.norm_sq(z))

    def random(self, rng: np.random.Generator, shape=()):
        raise NotImplementedError

    def random_vector(self, rng, n: int) -> np.ndarray:
        return self.random(rng, (n,))

    def distance(self, a, b) -> float:
        """Max-entry absolute difference."""
        d = np.abs(np.asarray(a) - np.asarray(b))
        return float(d.max()) if d.size else 0.0

    def asarray(self, x) -> np.ndarray:
        return np.asarray(x, dtype=self.dtype)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name


class RealField(RCField):
    name = "REAL"
    dtype = np.float64
    I = 0.0

    def conj(self, z):
        return z

    def random(self, rng, shape=()):
        return rng.standard_normal(shape)


class ComplexField(RCField):
    name = "COMPLEX"
    dtype = np.complex128
    I = 1j

    def conj(self, z):
        return np.conj(z)

    def random(self, rng, shape=()):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


REAL = RealField()
COMPLEX = ComplexField()


def rc_ops(K: RCField, z) -> dict:
    """The real-or-complex operations on ``z`` in ``K``."""
    return {"re": K.re(z), "im": K.im(z), "conj": K.conj(z), "norm_sq": K.norm_sq(z)}


# -- ring homomorphisms -------------------------------------------------------

IDENTITY = "identity"
CONJUGATION = "conjugation"
FROBENIUS = "frobenius"
TABLE = "explicit-table"
COMPOSITE = "composite"


@dataclass(frozen=True)
class RingHom:
    """A ring homomorphism ``domain -> codomain`` described by its kind.

    ``power`` is the Frobenius exponent (x -> x^(p^power)); ``table`` maps
    domain elements to codomain elements for explicit homomorphisms;
    ``parts`` holds (first, second) for an unsimplified composite.
    """

    domain: Any
    codomain: Any
    kind: str
    power: int = 0
    table: Mapping | None = field(default=None, compare=False, hash=False)
    parts: tuple | None = None

    def __post_init__(self):
        if self.table is not None:
            object.__setattr__(self, "_table_key", frozenset(self.table.items()))

    def __eq__(self, other):
        if not isinstance(other, RingHom):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.kind == other.kind and self.power == other.power
                and self.parts == other.parts
                and getattr(self, "_table_key", None) == getattr(other, "_table_key", None))

    def __hash__(self):
        return hash((self.kind, self.power, getattr(self, "_table_key", None)))

    @classmethod
    def identity(cls, system) -> RingHom:
        return cls(system, system, IDENTITY)

    @classmethod
    def conj(cls, system: RCField) -> RingHom:
        # over R conjugation is literally the identity
        if isinstance(system, RealField):
            return cls.identity(system)
        return cls(system, system, CONJUGATION)

    @classmethod
    def frobenius(cls, system, power: int = 1) -> RingHom:
        power %= system.frobenius_order
        if power == 0:
            return cls.identity(system)
        return cls(system, system, FROBENIUS, power)

    @classmethod
    def from_table(cls, domain, codomain, table: Mapping) -> RingHom:
        return cls(domain, codomain, TABLE, table=dict(table))

    def __call__(self, x):
        if self.kind == IDENTITY:
            return x
        if self.kind == CONJUGATION:
            return self.domain.conj(x)
        if self.kind == FROBENIUS:
            return self.domain.frobenius(x, self.power)
        if self.kind == TABLE:
            return self.table[x]
        first, second = self.parts
        return second(first(x))

    def apply_entrywise(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr)
        if self.kind == IDENTITY:
            return arr
        if self.kind == CONJUGATION:
            return self.domain.conj(arr)
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = self(arr[idx])
        return out

    def __repr__(self):
        if self.kind == FROBENIUS:
            return f"RingHom(frobenius^{self.power} on {self.domain!r})"
        if self.kind == COMPOSITE:
            return f"RingHom({self.parts[1]!r} . {self.parts[0]!r})"
        return f"RingHom({self.kind} on {self.domain!r})"


def _elements(system) -> Iterable | None:
    elements = getattr(system, "elements", None)
    if elements is None or getattr(system, "order", float("inf")) > 4096:
        return None
    return elements()


def compose_hom(f: RingHom, g: RingHom) -> RingHom:
    """The canonical descriptor of ``g . f`` (apply ``f`` first)."""
    if f.codomain != g.domain:
        raise HomMismatchError(f"cannot compose {g!r} after {f!r}")
    if f.kind == IDENTITY:
        return g
    if g.kind == IDENTITY:
        return f
    if f.kind == CONJUGATION and g.kind == CONJUGATION:
        return RingHom.identity(f.domain)
    if f.kind == FROBENIUS and g.kind == FROBENIUS:
        return RingHom.frobenius(f.domain, f.power + g.power)
    elements = _elements(f.domain)
    if elements is not None:
        table = {x: g(f(x)) for x in elements}
        if f.domain == g.codomain and all(k == v for k, v in table.items()):
            return RingHom.identity(f.domain)
        return RingHom.from_table(f.domain, g.codomain, table)
    return RingHom(f.domain, g.codomain, COMPOSITE, parts=(f, g))


@dataclass(frozen=True)
class CompTriple:
    """Certificate that ``sigma23 . sigma12 == sigma13``."""

    sigma12: RingHom
    sigma23: RingHom
    sigma13: RingHom

    def check(self, samples: Iterable) -> bool:
        return all(_same(self.sigma23(self.sigma12(x)), self.sigma13(x)) for x in samples)


@dataclass(frozen=True)
class InvPair:
    """Certificate that ``tau`` and ``sigma`` are mutually inverse."""

    sigma: RingHom
    tau: RingHom

    def check(self, samples_domain: Iterable, samples_codomain: Iterable = ()) -> bool:
        return (all(_same(self.tau(self.sigma(x)), x) for x in samples_domain)
                and all(_same(self.sigma(self.tau(y)), y) for y in samples_codomain))


def _same(a, b) -> bool:
    if isinstance(a, (complex, float, np.number)):
        return abs(a - b) <= 1e-12 * max(1.0, abs(a))
    return a == b


def resolve_comp_triple(sigma12: RingHom, sigma23: RingHom) -> CompTriple:
    return CompTriple(sigma12, sigma23, compose_hom(sigma12, sigma23))


def resolve_inv_pair(sigma: RingHom) -> InvPair:
    if sigma.kind in (IDENTITY, CONJUGATION):
        return InvPair(sigma, sigma)
    if sigma.kind == FROBENIUS:
        return InvPair(sigma, RingHom.frobenius(sigma.domain, -sigma.power))
    if sigma.kind == TABLE:
        inverse = {v: k for k, v in sigma.table.items()}
        codomain_elems = _elements(sigma.codomain)
        size = len(list(codomain_elems)) if codomain_elems is not None else None
        if len(inverse) != len(sigma.table) or (size is not None and size != len(inverse)):
            raise NotInvertibleError(f"{sigma!r} is not bijective")
        return InvPair(sigma, RingHom.from_table(sigma.codomain, sigma.domain, inverse))
    if sigma.kind == COMPOSITE:
        first, second = sigma.parts
        tau = compose_hom(resolve_inv_pair(second).tau, resolve_inv_pair(first).tau)
        return InvPair(sigma, tau)
    raise NotInvertibleError(f"no inverse registered for {sigma!r}")  # pragma: no cover


def check_ring_hom(sigma: RingHom, samples: Iterable) -> bool:
    """Sampled check of sigma(1) = 1, additivity and multiplicativity."""
    samples = list(samples)
    one = getattr(sigma.domain, "one", 1)
    if not _same(sigma(one), getattr(sigma.codomain, "one", 1)):
        return False
    for x in samples:
        for y in samples:
            if not _same(sigma(x + y), sigma(x) + sigma(y)):
                return False
            if not _same(sigma(x * y), sigma(x) * sigma(y)):
                return False
    return True

