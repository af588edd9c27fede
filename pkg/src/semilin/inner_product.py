"""Finite-dimensional inner product spaces over R or C.

The inner product is conjugate-linear in its FIRST argument and linear in
the second:

    inner(space, x, y) = conj(x)^T @ G @ y

for the space's positive-definite Hermitian Gram matrix ``G``.  Every
function here goes through the space's :class:`~semilin.scalar.RCField`, so
one code path serves both real and complex spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalar import RCField, RingHom
from .semilinear import DimensionError, SemilinearMap

HERMITIAN_TOL = 1e-12
SELF_ADJOINT_TOL = 1e-10
DEPENDENCE_TOL = 1e-8


class LinearDependenceError(ValueError):
    """Input vectors are linearly dependent."""

    def __init__(self, index: int, residual: float):
        super().__init__(f"vector {index} depends on the previous ones (residual {residual:.3g})")
        self.index = index
        self.residual = residual


class NotPositiveDefiniteError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InnerProductSpace:
    """K^n with inner product conj(x)^T G y."""

    field: RCField
    dim: int
    gram: np.ndarray | None = None

    def __post_init__(self):
        K = self.field
        G = np.eye(self.dim, dtype=K.dtype) if self.gram is None else K.asarray(self.gram)
        if G.shape != (self.dim, self.dim):
            raise DimensionError(f"gram matrix must be {self.dim}x{self.dim}")
        if np.max(np.abs(G - K.conj(G.T)), initial=0.0) > HERMITIAN_TOL * max(1.0, np.abs(G).max(initial=0)):
            raise NotPositiveDefiniteError("gram matrix is not Hermitian")
        try:
            np.linalg.cholesky(G)
        except np.linalg.LinAlgError:
            raise NotPositiveDefiniteError("gram matrix is not positive definite") from None
        object.__setattr__(self, "gram", G)

    @classmethod
    def standard(cls, field: RCField, dim: int) -> InnerProductSpace:
        return cls(field, dim)

    @classmethod
    def random(cls, field: RCField, dim: int, rng: np.random.Generator,
               identity_gram: bool = False) -> InnerProductSpace:
        if identity_gram:
            return cls(field, dim)
        M = field.random(rng, (dim, dim))
        return cls(field, dim, field.conj(M.T) @ M + dim * np.eye(dim))

    @property
    def has_identity_gram(self) -> bool:
        return bool(np.array_equal(self.gram, np.eye(self.dim)))

    def random_vector(self, rng, n: int | None = None) -> np.ndarray:
        return self.field.random(rng, (self.dim,))

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.dim:
            raise DimensionError(f"expected length {self.dim}, got {v.shape[0]}")
        return v


def inner(space: InnerProductSpace, x, y):
    """<x, y>, conjugate-linear in x."""
    x, y = space._check(x), space._check(y)
    return space.field.conj(x) @ space.gram @ y


def norm(space: InnerProductSpace, v) -> float:
    return float(np.sqrt(max(space.field.re(inner(space, v, v)), 0.0)))


def gram_schmidt(space: InnerProductSpace, vectors) -> list[np.ndarray]:
    """Orthonormalise ``vectors`` in order (modified Gram-Schmidt, two passes).

    Raises :class:`LinearDependenceError` naming the first vector whose
    residual drops below ``DEPENDENCE_TOL`` times its own norm.
    """
    out: list[np.ndarray] = []
    for i, v in enumerate(vectors):
        v = space.field.asarray(space._check(v))
        w = v.copy()
        for _ in range(2):
            for q in out:
                w = w - q * inner(space, q, w)
        size = norm(space, v)
        res = norm(space, w)
        if size == 0 or res < DEPENDENCE_TOL * size:
            raise LinearDependenceError(i, res / size if size else 0.0)
        out.append(w / res)
    return out


def orthogonal_projection(space: InnerProductSpace, basis, v) -> np.ndarray:
    """Projection of ``v`` onto span(basis)."""
    v = space._check(v)
    result = np.zeros(space.dim, dtype=space.field.dtype)
    for q in gram_schmidt(space, basis):
        result = result + q * inner(space, q, v)
    return result


@dataclass(frozen=True, eq=False)
class DualFunctional:
    """The functional w -> <v, w>."""

    space: InnerProductSpace
    vector: np.ndarray

    def __call__(self, w):
        return inner(self.space, self.vector, w)

    @property
    def coefficients(self) -> np.ndarray:
        """Values on the standard basis, i.e. the row conj(v)^T G."""
        return self.space.field.conj(self.vector) @ self.space.gram

    def norm(self) -> float:
        """Operator norm sup |phi(w)| / ||w||, attained at w = v."""
        return norm(self.space, self.vector)


def to_dual(space: InnerProductSpace, v) -> DualFunctional:
    return DualFunctional(space, space.field.asarray(space._check(v)))


def riesz_representative(space: InnerProductSpace, functional) -> np.ndarray:
    """The unique v with <v, w> = functional(w) for all w.

    ``functional`` is either a coefficient row (values on the standard
    basis) or a :class:`DualFunctional`.
    """
    K = space.field
    if isinstance(functional, DualFunctional):
        functional = functional.coefficients
    row = K.asarray(functional)
    if row.shape != (space.dim,):
        raise DimensionError(f"expected {space.dim} coefficients")
    # conj(v)^T G = row  <=>  G^T conj(v) = row
    return K.conj(np.linalg.solve(space.gram.T, row))


def to_dual_map(space: InnerProductSpace) -> SemilinearMap:
    """v -> coefficient row of to_dual(v), as a conjugate-linear map."""
    return SemilinearMap(RingHom.conj(space.field), space.gram.T.copy())


def adjoint(space_E: InnerProductSpace, space_F: InnerProductSpace, A) -> np.ndarray:
    """Matrix of A*: F -> E with <A* y, x>_E = <y, A x>_F.

    Computed as G_E^-1 conj(A)^T G_F.
    """
    K = space_E.field
    A = np.asarray(A)
    if A.shape != (space_F.dim, space_E.dim):
        raise DimensionError(f"expected a {space_F.dim}x{space_E.dim} matrix, got {A.shape}")
    AH = K.conj(A.T)
    if space_E.has_identity_gram and space_F.has_identity_gram:
        return AH
    return np.linalg.solve(space_E.gram, AH @ space_F.gram)


def adjoint_map(space_E: InnerProductSpace, space_F: InnerProductSpace) -> SemilinearMap:
    """A -> A* as a conjugate-linear map on row-major flattened matrices."""
    K = space_E.field
    n, m = space_E.dim, space_F.dim
    cols = []
    for k in range(m * n):
        e = np.zeros(m * n, dtype=K.dtype)
        e[k] = 1
        # conj(e) = e, so the image of a real basis matrix under the
        # conjugate-linear adjoint is its linear image
        cols.append(adjoint(space_E, space_F, e.reshape(m, n)).reshape(-1))
    return SemilinearMap(RingHom.conj(K), np.array(cols, dtype=K.dtype).T)


def is_self_adjoint(space: InnerProductSpace, T, tol: float = SELF_ADJOINT_TOL) -> bool:
    T = np.asarray(T)
    if T.shape != (space.dim, space.dim):
        return False
    return float(np.max(np.abs(T - adjoint(space, space, T)), initial=0.0)) <= tol


def is_star_normal(space: InnerProductSpace, T, tol: float = SELF_ADJOINT_TOL) -> bool:
    T = np.asarray(T)
    if T.shape != (space.dim, space.dim):
        return False
    Ts = adjoint(space, space, T)
    scale = max(1.0, float(np.linalg.norm(T)) ** 2)
    return float(np.max(np.abs(Ts @ T - T @ Ts), initial=0.0)) <= tol * scale

