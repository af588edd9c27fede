"""Every test here runs once per scalar instance, through one code path."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semilin.inner_product import (
    DualFunctional, InnerProductSpace, LinearDependenceError, NotPositiveDefiniteError, adjoint,
    adjoint_map, gram_schmidt, inner, is_self_adjoint, is_star_normal, norm,
    orthogonal_projection, riesz_representative, to_dual, to_dual_map,
)
from semilin.semilinear import DimensionError, verify_semilinearity
from oracles import dual_norm_sampled

seeds = st.integers(0, 2 ** 32 - 1)


def spaces(K, rng, n):
    return [InnerProductSpace.standard(K, n), InnerProductSpace.random(K, n, rng)]


def test_standard_basis_orthogonal(K):
    E = InnerProductSpace.standard(K, 2)
    assert inner(E, K.asarray([1, 0]), K.asarray([0, 1])) == 0


def test_inner_axioms(K, rng):
    for E in spaces(K, rng, 4):
        for _ in range(20):
            v, w, u = (E.random_vector(rng) for _ in range(3))
            c = K.random(rng)
            assert abs(inner(E, K.I * v, w) - K.conj(K.I) * inner(E, v, w)) <= 1e-10 * (1 + norm(E, v) * norm(E, w))
            assert abs(inner(E, c * v, w) - K.conj(c) * inner(E, v, w)) <= 1e-10 * abs(c) * (1 + norm(E, v) * norm(E, w))
            assert abs(inner(E, v, c * w) - c * inner(E, v, w)) <= 1e-10 * abs(c) * (1 + norm(E, v) * norm(E, w))
            assert abs(inner(E, v, w + u) - inner(E, v, w) - inner(E, v, u)) <= 1e-10 * (1 + norm(E, v) * (norm(E, w) + norm(E, u)))
            assert abs(inner(E, v, w) - K.conj(inner(E, w, v))) <= 1e-12 * (1 + norm(E, v) * norm(E, w))
            vv = inner(E, v, v)
            assert abs(K.im(vv)) <= 1e-12 * K.re(vv) and K.re(vv) > 0


def test_norm_examples(K, rng):
    E = InnerProductSpace.standard(K, 2)
    assert norm(E, K.asarray([3, 4])) == 5
    assert norm(E, K.asarray([0, 0])) == 0
    F = InnerProductSpace.random(K, 3, rng)
    for _ in range(20):
        v, w = F.random_vector(rng), F.random_vector(rng)
        c = K.random(rng)
        assert abs(norm(F, c * v) - abs(c) * norm(F, v)) <= 1e-12 * (1 + abs(c) * norm(F, v))
        assert norm(F, v + w) <= norm(F, v) + norm(F, w) + 1e-12


def test_dimension_errors(K):
    E = InnerProductSpace.standard(K, 2)
    with pytest.raises(DimensionError):
        inner(E, K.asarray([1, 0, 0]), K.asarray([1, 0]))
    with pytest.raises(DimensionError):
        adjoint(E, E, np.eye(3))


def test_bad_gram(K):
    with pytest.raises(NotPositiveDefiniteError):
        InnerProductSpace(K, 2, K.asarray([[1, 0], [0, -1]]))
    with pytest.raises(NotPositiveDefiniteError):
        InnerProductSpace(K, 2, K.asarray([[1, 1], [0, 1]]))


def test_gram_schmidt_examples(K):
    E = InnerProductSpace.standard(K, 2)
    q = gram_schmidt(E, [K.asarray([1, 0]), K.asarray([1, 1])])
    assert np.allclose(q, [[1, 0], [0, 1]], atol=1e-15)
    basis = [K.asarray(r) for r in np.eye(3)]
    q = gram_schmidt(InnerProductSpace.standard(K, 3), basis)
    assert np.abs(np.array(q) - np.eye(3)).max() <= 1e-12


def test_gram_schmidt_random(K, rng):
    for E in spaces(K, rng, 5):
        vs = [E.random_vector(rng) for _ in range(3)]
        Q = np.array(gram_schmidt(E, vs)).T
        assert np.abs(K.conj(Q.T) @ E.gram @ Q - np.eye(3)).max() <= 1e-9
        for v in vs:  # span preserved
            assert norm(E, v - orthogonal_projection(E, list(Q.T), v)) <= 1e-10 * norm(E, v)


def test_gram_schmidt_dependence(K, rng):
    E = InnerProductSpace.random(K, 4, rng)
    a, b = E.random_vector(rng), E.random_vector(rng)
    with pytest.raises(LinearDependenceError) as info:
        gram_schmidt(E, [a, b, 2 * a - K.I * b + b])
    assert info.value.index == 2
    with pytest.raises(LinearDependenceError) as info:
        gram_schmidt(E, [a, 0 * a])
    assert info.value.index == 1


def test_projection_examples(K, rng):
    E = InnerProductSpace.standard(K, 2)
    assert np.allclose(orthogonal_projection(E, [K.asarray([1, 0])], K.asarray([1, 1])), [1, 0])
    F = InnerProductSpace.random(K, 5, rng)
    basis = [F.random_vector(rng) for _ in range(2)]
    inside = 2 * basis[0] - basis[1]
    assert norm(F, orthogonal_projection(F, basis, inside) - inside) <= 1e-10 * norm(F, inside)
    v = F.random_vector(rng)
    pv = orthogonal_projection(F, basis, v)
    for b in basis:
        assert abs(inner(F, b, v - pv)) <= 1e-10 * (1 + norm(F, b) * norm(F, v))
    assert norm(F, orthogonal_projection(F, basis, pv) - pv) <= 1e-10 * norm(F, v)


def test_to_dual(K, rng):
    for E in spaces(K, rng, 4):
        v, w = E.random_vector(rng), E.random_vector(rng)
        phi = to_dual(E, v)
        assert phi(w) == inner(E, v, w)
        c = K.random(rng)
        assert abs(to_dual(E, c * v)(w) - K.conj(c) * phi(w)) <= 1e-10 * (1 + abs(c) * norm(E, v) * norm(E, w))
        assert to_dual(E, 0 * v)(w) == 0
        assert abs(phi.coefficients @ w - phi(w)) <= 1e-10 * (1 + norm(E, v) * norm(E, w))
        f = to_dual_map(E)
        assert verify_semilinearity(f, rng=rng).max <= 1e-10
        assert np.abs(f(v) - phi.coefficients).max() <= 1e-12 * (1 + np.abs(phi.coefficients).max())


def test_riesz_examples(K, rng):
    E = InnerProductSpace.standard(K, 2)
    assert np.allclose(riesz_representative(E, K.asarray([1, 0])), [1, 0])
    for F in spaces(K, rng, 6):
        v = F.random_vector(rng)
        assert np.abs(riesz_representative(F, to_dual(F, v)) - v).max() <= 1e-10 * (1 + np.abs(v).max())
        row = K.random(rng, (6,))
        r = riesz_representative(F, row)
        assert np.abs(to_dual(F, r).coefficients - row).max() <= 1e-10 * (1 + np.abs(row).max())
        assert abs(DualFunctional(F, v).norm() - dual_norm_sampled(to_dual(F, v).coefficients, F.gram, rng)) <= 1e-6


def test_riesz_dimension_error(K):
    with pytest.raises(DimensionError):
        riesz_representative(InnerProductSpace.standard(K, 2), K.asarray([1, 0, 0]))


def test_adjoint_examples(K, rng):
    E = InnerProductSpace.standard(K, 2)
    A = np.array([[0, K.I], [0, 0]], dtype=K.dtype)
    assert np.array_equal(adjoint(E, E, A), np.array([[0, 0], [K.conj(K.I), 0]]))
    for G in spaces(K, rng, 3):
        B = K.random(rng, (3, 3))
        assert np.abs(adjoint(G, G, adjoint(G, G, B)) - B).max() <= 1e-10 * np.abs(B).max()
        c = K.random(rng)
        assert np.abs(adjoint(G, G, c * B) - K.conj(c) * adjoint(G, G, B)).max() <= 1e-10 * abs(c) * np.abs(B).max() * 10


@given(seeds)
def test_adjoint_identity(K, seed):
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 6)), int(rng.integers(1, 6))
    E = InnerProductSpace.random(K, n, rng, identity_gram=bool(rng.integers(2)))
    F = InnerProductSpace.random(K, m, rng, identity_gram=bool(rng.integers(2)))
    A = K.random(rng, (m, n))
    x, y = E.random_vector(rng), F.random_vector(rng)
    As = adjoint(E, F, A)
    lhs, rhs = inner(E, As @ y, x), inner(F, y, A @ x)
    assert abs(lhs - rhs) <= 1e-10 * (1 + norm(E, x) * norm(F, y) * np.linalg.norm(A))


def test_adjoint_frobenius_norm_identity_gram(K, rng):
    E, F = InnerProductSpace.standard(K, 3), InnerProductSpace.standard(K, 4)
    A = K.random(rng, (4, 3))
    assert abs(np.linalg.norm(adjoint(E, F, A)) - np.linalg.norm(A)) <= 1e-12 * np.linalg.norm(A)


def test_adjoint_map_is_conjugate_linear(K, rng):
    E, F = InnerProductSpace.random(K, 2, rng), InnerProductSpace.random(K, 3, rng)
    f = adjoint_map(E, F)
    assert f.twist == type(f.twist).conj(K)
    A = K.random(rng, (3, 2))
    assert np.abs(f(A.reshape(-1)).reshape(2, 3) - adjoint(E, F, A)).max() <= 1e-12 * 10
    assert verify_semilinearity(f, rng=rng).max <= 1e-10


def test_self_adjoint_predicate(K, rng):
    E = InnerProductSpace.standard(K, 2)
    assert is_self_adjoint(E, np.diag([2.0, -1.0]))
    assert is_self_adjoint(E, np.array([[0, -K.I], [K.I, 0]], dtype=K.dtype))
    assert not is_self_adjoint(E, np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert not is_self_adjoint(E, np.eye(3))
    G = InnerProductSpace.random(K, 4, rng)
    B = K.random(rng, (4, 4))
    T = (B + adjoint(G, G, B)) / 2
    assert is_self_adjoint(G, T)


def test_star_normal_predicate(K, rng):
    E = InnerProductSpace.standard(K, 2)
    B = K.random(rng, (2, 2))
    assert is_star_normal(E, B + K.conj(B.T))
    assert is_star_normal(E, np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert not is_star_normal(E, np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert not is_star_normal(E, np.eye(3))
