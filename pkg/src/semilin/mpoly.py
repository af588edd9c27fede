"""Sparse multivariate polynomials with integer coefficients.

Monomials are packed into a single int, ``_BITS`` bits per variable, so
monomial multiplication is integer addition.  Exponents are bounded by
``MAX_EXP``; products that could overflow a field raise ``OverflowError``.
"""

from __future__ import annotations

from typing import Callable, Iterable

_BITS = 24
MAX_EXP = (1 << _BITS) - 1


def pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & MAX_EXP for i in range(nvars))


class IntPoly:
    __slots__ = ("nvars", "terms", "maxexp")

    def __init__(self, nvars: int, terms: dict | None = None, maxexp: int | None = None):
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        if maxexp is None:
            maxexp = max((max(unpack(m, nvars)) for m in self.terms), default=0)
        self.maxexp = maxexp

    @classmethod
    def from_dict(cls, nvars: int, terms: dict) -> IntPoly:
        """Build from ``{exponent tuple: coefficient}``."""
        return cls(nvars, {pack(m): c for m, c in terms.items()})

    @classmethod
    def const(cls, nvars: int, c: int) -> IntPoly:
        return cls(nvars, {0: c}, 0)

    @classmethod
    def var(cls, nvars: int, i: int) -> IntPoly:
        return cls(nvars, {1 << (_BITS * i): 1}, 1)

    def monomials(self):
        """Yield ``(exponent tuple, coefficient)`` pairs."""
        for m, c in self.terms.items():
            yield unpack(m, self.nvars), c

    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return IntPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return IntPoly(self.nvars, out, max(self.maxexp, other.maxexp))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(self.nvars, {m: -c for m, c in self.terms.items()}, self.maxexp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(self.nvars, {m: c * other for m, c in self.terms.items()}, self.maxexp)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bound = self.maxexp + other.maxexp
        if bound > MAX_EXP:
            raise OverflowError("exponent bound exceeded")
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return IntPoly(self.nvars, out, bound)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly.const(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, d: int) -> IntPoly:
        """Divide every coefficient by ``d``; raise if any division leaves a remainder."""
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} of {m} not divisible by {d}")
            out[m] = q
        return IntPoly(self.nvars, out, self.maxexp)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def reduce_mod(self, n: int) -> IntPoly:
        return IntPoly(self.nvars, {m: c % n for m, c in self.terms.items()})

    def degree_in(self, i: int) -> int:
        return max(((m >> (_BITS * i)) & MAX_EXP for m in self.terms), default=0)

    def evaluate(self, values: Iterable, one=1, scale: Callable | None = None):
        """Evaluate at ``values``.

        Works over any commutative ring whose elements support ``*``, ``+``
        and ``**``.  ``one`` is the ring's unit; ``scale(c, x)`` embeds the
        integer coefficient ``c`` (default: ``c * x``).
        """
        values = list(values)
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        powers: list[dict] = [dict() for _ in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = values[i] ** e
            return cache[e]

        total = None
        for m, c in self.monomials():
            term = None
            for i, e in enumerate(m):
                if e:
                    f = power(i, e)
                    term = f if term is None else term * f
            if term is None:
                term = one
            term = scale(c, term) if scale else c * term
            total = term if total is None else total + term
        if total is None:
            return scale(0, one) if scale else 0 * one
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.monomials(), reverse=True):
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(m) if e)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
