"""Rayleigh quotients, eigenpairs and diagonalisation of self-adjoint and
normal operators, plus finitely supported l^p families.

Diagonalisation is by deflation.  Take an eigenpair of largest |eigenvalue|,
restrict the operator to the orthogonal complement of the eigenvectors
found so far, and repeat.  For self-adjoint (or normal) T that complement
is T-invariant, so each restriction is again self-adjoint.  All restricted
matrices are written in a G-orthonormal basis of the complement, where
they are plain Hermitian matrices.

Normal operators are split as T = A + iB with A = (T + T*)/2 and
B = (T - T*)/(2i), two commuting self-adjoint operators: A is diagonalised
first, then B inside each eigenspace of A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .inner_product import (
    InnerProductSpace, adjoint, gram_schmidt, inner, is_self_adjoint, is_star_normal, norm,
)
from .semilinear import DimensionError

MAX_ITER = 10_000
RQ_RTOL = 1e-12
CLUSTER_RTOL = 1e-6
RESIDUAL_RTOL = 1e-7
ISOMETRY_TOL = 1e-10


class NotSelfAdjointError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3g})")
        self.residual = residual


class NonOrthogonalFamilyError(ValueError):
    def __init__(self, i, j, overlap: float):
        super().__init__(f"ranges of {i!r} and {j!r} are not orthogonal (overlap {overlap:.3g})")
        self.pair = (i, j)


class NotIsometryError(ValueError):
    pass


class NotSpanningError(ValueError):
    pass


def rayleigh_quotient(space: InnerProductSpace, T, x) -> float:
    """re<x, Tx> / ||x||^2."""
    nx = norm(space, x)
    if nx == 0:
        raise ValueError("Rayleigh quotient of the zero vector")
    return float(space.field.re(inner(space, x, np.asarray(T) @ x))) / nx ** 2


# -- Hermitian kernels in standard coordinates ------------------------------

def _rq(H, x):
    return float(np.real(np.vdot(x, H @ x)))


def _power(H, shift, x, max_iter):
    x = x / np.linalg.norm(x)
    lam = _rq(H, x)
    scale = max(abs(shift), 1.0)
    for _ in range(max_iter):
        y = H @ x + shift * x
        ny = np.linalg.norm(y)
        if ny == 0:
            break
        x = y / ny
        new = _rq(H, x)
        if abs(new - lam) <= RQ_RTOL * max(abs(new), scale):
            lam = new
            break
        lam = new
    return lam, x


def _polish(H, x, steps=6):
    """Rayleigh quotient iteration from x; returns the refined pair."""
    scale = max(np.linalg.norm(H), 1.0)
    n = len(x)
    for _ in range(steps):
        mu = _rq(H, x)
        if np.linalg.norm(H @ x - mu * x) <= 1e-14 * scale:
            break
        try:
            y = np.linalg.solve(H - mu * np.eye(n), x)
        except np.linalg.LinAlgError:
            break
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0:
            break
        x = y / ny
    return _rq(H, x), x


def _start_vectors(n, dtype):
    ones = np.ones(n, dtype=dtype) / math.sqrt(n)
    rng = np.random.default_rng(0)
    pert = ones + 0.5 * rng.standard_normal(n).astype(dtype)
    return ones, pert / np.linalg.norm(pert)


def _top(H, starts, max_iter=MAX_ITER):
    """Largest eigenvalue of Hermitian H by shifted power iteration + RQI."""
    shift = float(np.linalg.norm(H))
    best = None
    for x0 in starts:
        lam, x = _power(H, shift, x0, max_iter)
        lam2, x2 = _polish(H, x)
        if lam2 >= lam - 1e-9 * max(shift, 1.0):
            lam, x = lam2, x2
        if best is None or lam > best[0]:
            best = (lam, x)
    return best


def _extreme(H, starts, max_iter=MAX_ITER):
    """Eigenpair of largest |eigenvalue|, ties broken towards positive."""
    hi, vhi = _top(H, starts, max_iter)
    lo, vlo = _top(-H, starts, max_iter)
    lo = -lo
    if abs(lo) > abs(hi) * (1 + 1e-12) + 1e-300:
        return lo, vlo
    return hi, vhi


def _orthonormal_frame(space: InnerProductSpace) -> np.ndarray:
    """Columns form a G-orthonormal basis: B^H G B = I."""
    if space.has_identity_gram:
        return np.eye(space.dim, dtype=space.field.dtype)
    L = np.linalg.cholesky(space.gram)
    return space.field.conj(np.linalg.inv(L).T)


def _restrict(space, T, B):
    K = space.field
    H = K.conj(B.T) @ space.gram @ np.asarray(T) @ B
    return (H + K.conj(H.T)) / 2


def max_eigenpair(space: InnerProductSpace, T, tol: float = 1e-10):
    """(lambda, v) with |lambda| maximal, ||v|| = 1 and T v = lambda v."""
    T = np.asarray(T)
    if not is_self_adjoint(space, T, tol * max(1.0, float(np.linalg.norm(T)))):
        raise NotSelfAdjointError("max_eigenpair needs a self-adjoint operator")
    B = _orthonormal_frame(space)
    H = _restrict(space, T, B)
    lam, z = _extreme(H, _start_vectors(space.dim, space.field.dtype))
    v = B @ z
    v = v / norm(space, v)
    scale = float(np.linalg.norm(T))
    residual = norm(space, T @ v - lam * v)
    if residual > RESIDUAL_RTOL * max(scale, 1e-300):
        raise ConvergenceError("power iteration did not converge", residual)
    return lam, v


# -- eigendecompositions ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Eigendecomposition:
    """Orthonormal eigenbasis ``phi`` (columns), grouped by eigenvalue.

    ``eigenvalues[k]`` belongs to column k; ``grouping[k]`` is the index of
    its group in ``values`` (the group means, in sorted order).
    """

    space: InnerProductSpace
    eigenvalues: np.ndarray
    phi: np.ndarray
    grouping: np.ndarray
    values: np.ndarray

    @property
    def D(self) -> np.ndarray:
        return np.diag(self.eigenvalues)

    def columns(self, group: int) -> np.ndarray:
        return self.phi[:, self.grouping == group]

    def coordinates(self, v) -> np.ndarray:
        """Phi^-1 v = Phi^H G v."""
        K = self.space.field
        return K.conj(self.phi.T) @ self.space.gram @ np.asarray(v)

    def transform(self, v) -> LpElement:
        """The image of v in the Hilbert sum of eigenspaces."""
        c = self.coordinates(v)
        return LpElement({g: c[self.grouping == g] for g in range(len(self.values))})

    def reconstruct(self) -> np.ndarray:
        """Phi D Phi^-1."""
        K = self.space.field
        return self.phi @ np.diag(self.eigenvalues) @ K.conj(self.phi.T) @ self.space.gram

    def eigenspace_family(self) -> OrthogonalFamily:
        return OrthogonalFamily(self.space, {g: self.columns(g) for g in range(len(self.values))})


def _sort_and_group(space, vals, vecs, scale):
    tol = CLUSTER_RTOL * scale
    order = sorted(range(len(vals)), key=lambda k: -vals[k].real)
    # ties in the real part (within tol) are ordered by imaginary part
    blocks, cur = [], [order[0]] if order else []
    for k in order[1:]:
        if abs(vals[k].real - vals[cur[-1]].real) <= tol:
            cur.append(k)
        else:
            blocks.append(cur)
            cur = [k]
    if cur:
        blocks.append(cur)
    order = [k for b in blocks for k in sorted(b, key=lambda k: -vals[k].imag)]
    vals = np.array([vals[k] for k in order])
    phi = np.column_stack([vecs[k] for k in order]) if order else np.zeros((space.dim, 0))
    grouping = np.zeros(len(vals), dtype=int)
    values = []
    start = 0
    for k in range(1, len(vals) + 1):
        if k == len(vals) or abs(vals[k] - vals[k - 1]) > tol:
            grouping[start:k] = len(values)
            values.append(vals[start:k].mean())
            start = k
    return vals, phi, grouping, np.array(values)


def _fix_phase(space, v):
    k = int(np.argmax(np.abs(v) > (1 - 1e-8) * np.abs(v).max()))
    a = v[k]
    return v * (abs(a) / a) if a != 0 else v


def _deflate(space: InnerProductSpace, T, B: np.ndarray):
    """Eigenpairs of self-adjoint T on the range of the G-orthonormal frame B."""
    K = space.field
    H = _restrict(space, T, B)
    k = H.shape[0]
    vals, vecs = [], []
    frame = np.eye(k, dtype=H.dtype)
    while H.shape[0]:
        m = H.shape[0]
        lam, z = _extreme(H, _start_vectors(m, H.dtype)[1:], max_iter=2000)
        vals.append(lam)
        vecs.append(frame @ z)
        if m == 1:
            break
        # orthonormal complement of z inside the current coordinates
        Q, _ = np.linalg.qr(np.column_stack([z, np.eye(m, dtype=H.dtype)]))
        W = Q[:, 1:m]
        W = np.column_stack(gram_schmidt(InnerProductSpace(K, m), W.T))
        frame = frame @ W
        H = K.conj(W.T) @ H @ W
        H = (H + K.conj(H.T)) / 2
    return np.array(vals), [B @ v for v in vecs]


def diagonalize_self_adjoint(space: InnerProductSpace, T, tol: float = 1e-10) -> Eigendecomposition:
    T = np.asarray(T)
    scale = float(np.linalg.norm(T))
    if not is_self_adjoint(space, T, tol * max(1.0, scale)):
        raise NotSelfAdjointError("operator is not self-adjoint")
    vals, vecs = _deflate(space, T, _orthonormal_frame(space))
    vecs = [_fix_phase(space, v / norm(space, v)) for v in vecs]
    vals, phi, grouping, values = _sort_and_group(space, [complex(v) for v in vals], vecs, scale)
    return Eigendecomposition(space, vals.real, phi, grouping, values.real)


def diagonalize_normal(space: InnerProductSpace, T, tol: float = 1e-10) -> Eigendecomposition:
    K = space.field
    T = K.asarray(T)
    scale = float(np.linalg.norm(T))
    if not is_star_normal(space, T, tol):
        raise NotNormalError("operator is not normal")
    Ts = adjoint(space, space, T)
    A = (T + Ts) / 2
    S = (T - Ts) / 2
    skew = float(np.linalg.norm(S)) > tol * max(scale, 1.0)
    if skew and K.I == 0:
        raise NotNormalError("normal operator with a skew part needs complex scalars")
    Bop = S / K.I if skew else None
    vals_A, vecs_A = _deflate(space, A, _orthonormal_frame(space))
    _, phi_A, grouping, _ = _sort_and_group(space, [complex(v) for v in vals_A], vecs_A, scale)
    vecs = []
    for g in range(grouping.max() + 1 if len(grouping) else 0):
        Q = phi_A[:, grouping == g]
        if Bop is not None:
            Q = np.column_stack(gram_schmidt(space, Q.T)) if Q.shape[1] > 1 else Q
            _, sub = _deflate(space, Bop, Q)
            vecs.extend(sub)
        else:
            vecs.extend(Q.T)
    vecs = [_fix_phase(space, v / norm(space, v)) for v in vecs]
    vals = [complex(inner(space, v, T @ v)) for v in vecs]
    vals, phi, grouping, values = _sort_and_group(space, vals, vecs, scale)
    if K.I == 0:
        vals, values = vals.real, values.real
    return Eigendecomposition(space, vals, phi, grouping, values)


def is_normal_witness(space: InnerProductSpace, T, samples: int = 10, tol: float = 1e-10,
                      rng: np.random.Generator | None = None) -> bool:
    """Does T' = adjoint(T) commute with T and satisfy <T'x, y> = <x, Ty>?"""
    rng = np.random.default_rng(0) if rng is None else rng
    T = np.asarray(T)
    if T.shape != (space.dim, space.dim):
        return False
    Tp = adjoint(space, space, T)
    scale = max(1.0, float(np.linalg.norm(T)))
    if np.max(np.abs(Tp @ T - T @ Tp), initial=0.0) > tol * scale ** 2:
        return False
    for _ in range(samples):
        x, y = space.random_vector(rng), space.random_vector(rng)
        lhs, rhs = inner(space, Tp @ x, y), inner(space, x, T @ y)
        if abs(lhs - rhs) > tol * scale * (1 + norm(space, x) * norm(space, y)):
            return False
    return True


# -- finitely supported l^p -------------------------------------------------

@dataclass(frozen=True, eq=False)
class LpElement:
    """Finitely supported dependent function index -> vector."""

    support: dict = field(default_factory=dict)
    p: float = 2.0

    def __getitem__(self, i):
        return self.support[i]


def mem_lp(f: LpElement, p: float | None = None) -> bool:
    """Finite support makes every element a member; entries must be finite."""
    return all(np.all(np.isfinite(np.asarray(v))) for v in f.support.values())


def lp_norm(f: LpElement, p: float | None = None) -> float:
    p = f.p if p is None else p
    norms = [float(np.linalg.norm(np.asarray(v))) for v in f.support.values()]
    if not norms:
        return 0.0
    if math.isinf(p):
        return max(norms)
    if p == 0:
        return float(sum(1 for n in norms if n != 0))
    return sum(n ** p for n in norms) ** (1 / p)


def lp_inner(f: LpElement, g: LpElement):
    total = 0.0
    for i in set(f.support) & set(g.support):
        a, b = np.asarray(f.support[i]), np.asarray(g.support[i])
        if a.shape != b.shape:
            raise DimensionError(f"dimension mismatch at index {i!r}: {a.shape} vs {b.shape}")
        total = total + np.vdot(a, b)
    return total


@dataclass(frozen=True, eq=False)
class OrthogonalFamily:
    """Isometric embeddings V_i (n x d_i, G-orthonormal columns) of K^d_i."""

    space: InnerProductSpace
    embeddings: dict


@dataclass(frozen=True, eq=False)
class Collation:
    """The isometry E -> (+)_i K^d_i, v -> (V_i^H G v)_i."""

    family: OrthogonalFamily
    matrix: np.ndarray
    blocks: dict

    def __call__(self, v) -> LpElement:
        w = self.matrix @ np.asarray(v)
        return LpElement({i: w[s] for i, s in self.blocks.items()})

    def inverse(self, f: LpElement) -> np.ndarray:
        out = np.zeros(self.family.space.dim, dtype=self.family.space.field.dtype)
        for i, v in f.support.items():
            out = out + self.family.embeddings[i] @ np.asarray(v)
        return out


def collate_orthogonal_family(fam: OrthogonalFamily, tol: float = ISOMETRY_TOL) -> Collation:
    space = fam.space
    K, G = space.field, space.gram
    keys = list(fam.embeddings)
    mats = {i: np.asarray(fam.embeddings[i]).reshape(space.dim, -1) for i in keys}
    for i in keys:
        V = mats[i]
        if np.max(np.abs(K.conj(V.T) @ G @ V - np.eye(V.shape[1])), initial=0.0) > tol:
            raise NotIsometryError(f"embedding {i!r} is not an isometry")
    for a, i in enumerate(keys):
        for j in keys[a + 1:]:
            overlap = float(np.max(np.abs(K.conj(mats[i].T) @ G @ mats[j]), initial=0.0))
            if overlap > tol:
                raise NonOrthogonalFamilyError(i, j, overlap)
    total = sum(m.shape[1] for m in mats.values())
    if total != space.dim:
        raise NotSpanningError(f"family spans {total} of {space.dim} dimensions")
    stacked = np.column_stack([mats[i] for i in keys]) if keys else np.zeros((space.dim, 0))
    if space.dim and np.linalg.matrix_rank(stacked) < space.dim:  # pragma: no cover
        raise NotSpanningError("family ranges do not span the space")
    rows, blocks, start = [], {}, 0
    for i in keys:
        d = mats[i].shape[1]
        rows.append(K.conj(mats[i].T) @ G)
        blocks[i] = slice(start, start + d)
        start += d
    U = np.vstack(rows) if rows else np.zeros((0, space.dim))
    return Collation(fam, U, blocks)
