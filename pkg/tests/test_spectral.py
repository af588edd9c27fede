"""Spectral tests; the K-parametrised ones share one code path for R and C."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from semilin import spectral as sp
from semilin.inner_product import InnerProductSpace, adjoint, inner, norm
from semilin.semilinear import DimensionError
from semilin.spectral import (
    LpElement, NonOrthogonalFamilyError, NotIsometryError, NotNormalError, NotSelfAdjointError,
    NotSpanningError, OrthogonalFamily, collate_orthogonal_family, diagonalize_normal,
    diagonalize_self_adjoint, is_normal_witness, lp_inner, lp_norm, max_eigenpair, mem_lp,
    rayleigh_quotient,
)
from helpers import check_decomposition, hermitian, seeds, unitary
from oracles import eig2x2

def test_rayleigh_examples(K, rng):
    E = InnerProductSpace.standard(K, 2)
    assert rayleigh_quotient(E, np.diag([2.0, 1.0]), K.asarray([1, 0])) == 2
    assert rayleigh_quotient(E, np.array([[2.0, 1.0], [1.0, 2.0]]), K.asarray([1, 1])) == pytest.approx(3, abs=1e-15)
    T = hermitian(K, rng, 4)
    F = InnerProductSpace.standard(K, 4)
    x = F.random_vector(rng)
    assert rayleigh_quotient(F, T, 2 * x) == pytest.approx(rayleigh_quotient(F, T, x), rel=1e-12)
    with pytest.raises(ValueError):
        rayleigh_quotient(F, T, 0 * x)


def test_max_eigenpair_examples(K):
    E = InnerProductSpace.standard(K, 2)
    lam, v = max_eigenpair(E, np.diag([3.0, 1.0]))
    assert lam == pytest.approx(3) and abs(abs(v[0]) - 1) <= 1e-12
    lam, v = max_eigenpair(E, np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert lam == pytest.approx(3, abs=1e-12)
    assert np.abs(np.abs(v) - 2 ** -0.5).max() <= 1e-10
    T = np.array([[0, -K.I], [K.I, 0]], dtype=K.dtype)
    lam, v = max_eigenpair(E, T)
    assert abs(lam) == pytest.approx(abs(K.I), abs=1e-12)


def test_max_eigenpair_rejects_non_hermitian(K):
    with pytest.raises(NotSelfAdjointError):
        max_eigenpair(InnerProductSpace.standard(K, 2), np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_max_eigenpair_reports_nonconvergence(K, monkeypatch):
    monkeypatch.setattr(sp, "RESIDUAL_RTOL", -1.0)
    with pytest.raises(sp.ConvergenceError) as info:
        max_eigenpair(InnerProductSpace.standard(K, 2), np.diag([2.0, 1.0]))
    assert info.value.residual >= 0


@given(seeds)
def test_max_eigenpair_is_operator_norm(K, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    E = InnerProductSpace.random(K, n, rng, identity_gram=bool(rng.integers(2)))
    T = hermitian(K, rng, n, E)
    lam, v = max_eigenpair(E, T)
    scale = np.linalg.norm(T)
    assert norm(E, T @ v - lam * v) <= 1e-7 * scale
    assert abs(norm(E, v) - 1) <= 1e-12
    dec = diagonalize_self_adjoint(E, T)
    assert abs(abs(lam) - np.abs(dec.eigenvalues).max()) <= 1e-8 * max(1, scale)
    # |Rayleigh| never exceeds |lambda| on sampled directions
    for _ in range(10):
        x = E.random_vector(rng)
        assert abs(rayleigh_quotient(E, T, x)) <= abs(lam) + 1e-8 * scale


def test_diagonal_input(K):
    E = InnerProductSpace.standard(K, 3)
    T = np.diag([1.0, 5.0, -2.0]).astype(K.dtype)
    dec = diagonalize_self_adjoint(E, T)
    assert np.abs(dec.eigenvalues - np.array([5.0, 1.0, -2.0])).max() <= 1e-14
    assert np.abs(np.abs(dec.phi) - np.eye(3)[:, [1, 0, 2]]).max() <= 1e-14


def test_char_poly_oracle(K, rng):
    E = InnerProductSpace.standard(K, 2)
    for _ in range(20):
        T = hermitian(K, rng, 2)
        dec = diagonalize_self_adjoint(E, T)
        expected = [z.real for z in eig2x2(T)]
        assert np.abs(dec.eigenvalues - expected).max() <= 1e-10 * max(1, np.linalg.norm(T))
    dec = diagonalize_self_adjoint(E, np.array([[2.0, 1.0], [1.0, 2.0]], dtype=K.dtype))
    assert np.allclose(dec.eigenvalues, [3, 1])


@given(seeds)
def test_diagonalize_self_adjoint_random(K, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    E = InnerProductSpace.random(K, n, rng, identity_gram=bool(rng.integers(2)))
    T = hermitian(K, rng, n, E)
    dec = diagonalize_self_adjoint(E, T)
    check_decomposition(E, T, dec, rng, samples=3)
    assert list(dec.eigenvalues) == sorted(dec.eigenvalues, reverse=True)


def test_repeated_eigenvalues_grouped(K, rng):
    n = 5
    U = unitary(K, rng, n)
    T = U @ np.diag([2.0, 2.0, -1.0, -1.0, 0.5]) @ K.conj(U.T)
    T = (T + K.conj(T.T)) / 2
    E = InnerProductSpace.standard(K, n)
    dec = diagonalize_self_adjoint(E, T)
    assert np.allclose(dec.values, [2.0, 0.5, -1.0], atol=1e-9)
    assert list(dec.grouping) == [0, 0, 1, 2, 2]
    check_decomposition(E, T, dec, rng)


def test_normal_agrees_with_self_adjoint(K, rng):
    E = InnerProductSpace.random(K, 5, rng)
    T = hermitian(K, rng, 5, E)
    a = diagonalize_self_adjoint(E, T)
    b = diagonalize_normal(E, T)
    assert np.abs(np.asarray(b.eigenvalues) - a.eigenvalues).max() <= 1e-9 * np.linalg.norm(T)
    # columns agree up to phase
    overlaps = np.abs(np.diag(K.conj(a.phi.T) @ E.gram @ b.phi))
    assert np.abs(overlaps - 1).max() <= 1e-6


def test_diagonalize_rejects_non_hermitian(K):
    E = InnerProductSpace.standard(K, 2)
    with pytest.raises(NotSelfAdjointError):
        diagonalize_self_adjoint(E, np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotNormalError):
        diagonalize_normal(E, np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_normal_witness(K, rng):
    E = InnerProductSpace.random(K, 3, rng)
    assert is_normal_witness(E, hermitian(K, rng, 3, E), rng=rng)
    S = InnerProductSpace.standard(K, 2)
    assert not is_normal_witness(S, np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert is_normal_witness(S, np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert not is_normal_witness(S, np.eye(3))


def test_complement_invariance_exact():
    """<u, v> = 0 for an eigenvector u implies <u, Tv> = 0, in exact rationals."""
    T = [[Fraction(2), Fraction(1), Fraction(0)],
         [Fraction(1), Fraction(2), Fraction(0)],
         [Fraction(0), Fraction(0), Fraction(5, 3)]]
    u = [Fraction(1), Fraction(1), Fraction(0)]  # eigenvalue 3

    def mat(v):
        return [sum(T[i][j] * v[j] for j in range(3)) for i in range(3)]

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    assert mat(u) == [3 * c for c in u]
    for v in ([Fraction(1), Fraction(-1), Fraction(7, 2)], [Fraction(0), Fraction(0), Fraction(1)],
              [Fraction(-3, 4), Fraction(3, 4), Fraction(-2)]):
        assert dot(u, v) == 0
        assert dot(u, mat(v)) == 0


# -- l^p and collation ------------------------------------------------------

def test_lp_examples(K):
    f = LpElement({i: K.asarray([2.0 ** -i]) for i in range(10)})
    assert mem_lp(f, 2)
    assert lp_norm(f, 2) ** 2 == pytest.approx(sum(4.0 ** -i for i in range(10)), rel=1e-14)
    assert lp_norm(LpElement(), 2) == 0
    g = LpElement({0: K.asarray([1.0, 2.0]), 3: K.asarray([1.0])})
    assert lp_inner(g, g) == pytest.approx(6)
    assert lp_norm(g, np.inf) == pytest.approx(5 ** 0.5)
    assert lp_norm(g, 1) == pytest.approx(1 + 5 ** 0.5)
    with pytest.raises(DimensionError):
        lp_inner(g, LpElement({0: K.asarray([1.0])}))
    assert not mem_lp(LpElement({0: K.asarray([np.inf])}), 2)


def test_collate_examples(K, rng):
    E = InnerProductSpace.standard(K, 3)
    I = np.eye(3, dtype=K.dtype)
    c = collate_orthogonal_family(OrthogonalFamily(E, {"a": I[:, :1], "b": I[:, 1:]}))
    assert np.array_equal(c.matrix, I)
    with pytest.raises(NonOrthogonalFamilyError) as info:
        collate_orthogonal_family(OrthogonalFamily(E, {0: I[:, :1], 1: I[:, :1], 2: I[:, 1:2]}))
    assert info.value.pair == (0, 1)
    with pytest.raises(NotSpanningError):
        collate_orthogonal_family(OrthogonalFamily(E, {0: I[:, :1]}))
    with pytest.raises(NotIsometryError):
        collate_orthogonal_family(OrthogonalFamily(E, {0: 2 * I}))


def test_collate_eigenspaces(K, rng):
    E = InnerProductSpace.standard(K, 2)
    dec = diagonalize_self_adjoint(E, np.array([[2.0, 1.0], [1.0, 2.0]], dtype=K.dtype))
    U = collate_orthogonal_family(dec.eigenspace_family()).matrix
    assert np.abs(K.conj(U.T) @ U - np.eye(2)).max() <= 1e-10


def test_collation_parseval(K, rng):
    E = InnerProductSpace.random(K, 6, rng)
    U0 = unitary(K, rng, 6)
    T = U0 @ np.diag([3.0, 3.0, 1.0, 1.0, 1.0, -2.0]) @ K.conj(U0.T)
    T = np.linalg.solve(E.gram, T)  # self-adjoint for <x, y> = x^H G y
    T = (T + adjoint(E, E, T)) / 2
    dec = diagonalize_self_adjoint(E, T)
    col = collate_orthogonal_family(dec.eigenspace_family())
    U = col.matrix
    assert np.abs(K.conj(U.T) @ U - E.gram).max() <= 1e-9 * np.abs(E.gram).max()
    for _ in range(10):
        v, w = E.random_vector(rng), E.random_vector(rng)
        assert abs(lp_norm(col(v)) ** 2 - norm(E, v) ** 2) <= 1e-9 * norm(E, v) ** 2
        assert abs(lp_inner(col(v), col(w)) - inner(E, v, w)) <= 1e-9 * norm(E, v) * norm(E, w)
        assert np.abs(col.inverse(col(v)) - v).max() <= 1e-9 * np.abs(v).max()
        block = col(v)
        for g in range(len(dec.values)):
            V = dec.columns(g)
            assert np.abs(block[g] - K.conj(V.T) @ E.gram @ v).max() <= 1e-12 * 10 * np.abs(v).max()
