"""Semilinear maps between free modules of finite rank.

A map ``f`` with twist ``sigma`` and matrix ``A`` sends ``x`` to
``A @ sigma(x)``: twist the coordinates first, then multiply.  With that
order the composite of ``f`` (twist s12, matrix A) followed by ``g``
(twist s23, matrix B) is

    g(f(x)) = B s23(A s12(x)) = (B s23(A)) (s23 s12)(x),

so the composite's matrix is ``B @ s23(A)`` and its twist is the canonical
``s13`` from :func:`~semilin.scalar.resolve_comp_triple`.  Likewise the
inverse of ``x -> A sigma(x)`` is ``y -> tau(A^-1) tau(y)`` with ``tau`` the
registered inverse of ``sigma``.

Floating matrices are numpy arrays; exact scalars (finite-field elements,
Witt fraction-field elements) are held in object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .scalar import InvPair, RingHom, resolve_comp_triple, resolve_inv_pair

COND_LIMIT = 1e12


class DimensionError(ValueError):
    """Vector or matrix shapes do not fit together."""


class SingularMatrixError(ValueError):
    """Matrix is singular or too ill-conditioned to invert."""


def _is_exact(arr) -> bool:
    return np.asarray(arr).dtype == object


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A @ B`` that also works for object arrays without a numeric zero."""
    if not (_is_exact(A) or _is_exact(B)):
        return A @ B
    vec = B.ndim == 1
    B2 = B.reshape(-1, 1) if vec else B
    if A.shape[1] != B2.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.empty((A.shape[0], B2.shape[1]), dtype=object)
    for i in range(A.shape[0]):
        for j in range(B2.shape[1]):
            out[i, j] = reduce(lambda s, t: s + t, (A[i, k] * B2[k, j] for k in range(A.shape[1])))
    return out[:, 0] if vec else out


def exact_inverse(A: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse over an exact field (entries expose ``is_zero``)."""
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError("matrix is not square")
    M = A.copy()
    zero = A[0, 0] - A[0, 0]
    one = None
    for i in range(n):
        for j in range(n):
            if not A[i, j].is_zero():
                one = A[i, j] / A[i, j]
                break
        if one is not None:
            break
    if one is None:
        raise SingularMatrixError("zero matrix")
    inv = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            inv[i, j] = one if i == j else zero
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r, col].is_zero()), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[[col, piv]] = M[[piv, col]]
        inv[[col, piv]] = inv[[piv, col]]
        s = one / M[col, col]
        M[col] = [s * x for x in M[col]]
        inv[col] = [s * x for x in inv[col]]
        for r in range(n):
            if r != col and not M[r, col].is_zero():
                f = M[r, col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    return inv


def invert(A: np.ndarray) -> np.ndarray:
    if _is_exact(A):
        return exact_inverse(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError("matrix is not square")
    if np.linalg.cond(A) > COND_LIMIT:
        raise SingularMatrixError(f"condition number exceeds {COND_LIMIT:g}")
    return np.linalg.inv(A)


@dataclass(frozen=True, eq=False)
class SemilinearMap:
    """``x -> matrix @ twist(x)`` from twist.domain^n to twist.codomain^m."""

    twist: RingHom
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2:
            raise DimensionError("matrix must be two-dimensional")
        object.__setattr__(self, "matrix", m)

    @property
    def dims(self) -> tuple[int, int]:
        """(domain dimension n, codomain dimension m)."""
        return self.matrix.shape[1], self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def __repr__(self):
        n, m = self.dims
        return f"SemilinearMap({self.twist!r}, {m}x{n})"


def apply(f: SemilinearMap, x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (f.dims[0],):
        raise DimensionError(f"expected a vector of length {f.dims[0]}, got shape {x.shape}")
    return matmul(f.matrix, f.twist.apply_entrywise(x))


def compose(g: SemilinearMap, f: SemilinearMap) -> SemilinearMap:
    """``g . f``; the twist is the canonical composite."""
    if f.dims[1] != g.dims[0]:
        raise DimensionError(f"codomain dimension {f.dims[1]} != domain dimension {g.dims[0]}")
    triple = resolve_comp_triple(f.twist, g.twist)
    return SemilinearMap(triple.sigma13, matmul(g.matrix, g.twist.apply_entrywise(f.matrix)))


@dataclass(frozen=True, eq=False)
class SemilinearEquiv:
    """A bijective semilinear map with its inverse and twist certificate."""

    forward: SemilinearMap
    backward: SemilinearMap
    pair: InvPair

    @classmethod
    def of(cls, f: SemilinearMap) -> SemilinearEquiv:
        n, m = f.dims
        if n != m:
            raise DimensionError("only square maps are invertible")
        pair = resolve_inv_pair(f.twist)
        back = pair.tau.apply_entrywise(invert(f.matrix))
        return cls(f, SemilinearMap(pair.tau, back), pair)

    @property
    def twist(self) -> RingHom:
        return self.forward.twist

    def __call__(self, x):
        return apply(self.forward, x)

    def inverse_apply(self, y):
        return apply(self.backward, y)


def inverse(e: SemilinearEquiv) -> SemilinearEquiv:
    """The inverse equivalence, twisted by the registered inverse homomorphism."""
    return SemilinearEquiv(e.backward, e.forward, InvPair(e.pair.tau, e.pair.sigma))


@dataclass(frozen=True)
class SemilinearityReport:
    """Largest residuals of f(x+y) - f(x) - f(y) and f(cx) - sigma(c) f(x)."""

    additive: float
    homogeneity: float
    samples: int

    @property
    def max(self) -> float:
        return max(self.additive, self.homogeneity)


def verify_semilinearity(f: SemilinearMap, samples: int = 20,
                         rng: np.random.Generator | None = None) -> SemilinearityReport:
    """Sampled check of both semilinearity axioms.

    Residuals are max-entry distances for floating scalars and counts of
    mismatched entries for exact ones.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    dom, cod = f.twist.domain, f.twist.codomain
    n = f.dims[0]
    add_res = hom_res = 0.0
    for _ in range(samples):
        x = dom.random_vector(rng, n)
        y = dom.random_vector(rng, n)
        c = dom.random_vector(rng, 1)[0]
        add_res = max(add_res, cod.distance(f(x + y), f(x) + f(y)))
        lhs = f(np.array([c * xi for xi in x], dtype=x.dtype))
        s = f.twist(c)
        rhs = np.array([s * v for v in f(x)], dtype=lhs.dtype)
        hom_res = max(hom_res, cod.distance(lhs, rhs))
    return SemilinearityReport(add_res, hom_res, samples)
