"""Random operators and a decomposition checker shared by the spectral tests."""

import numpy as np
from hypothesis import strategies as st

from semilin.inner_product import adjoint

seeds = st.integers(0, 2 ** 32 - 1)


def hermitian(K, rng, n, space=None):
    B = K.random(rng, (n, n))
    if space is None:
        return (B + K.conj(B.T)) / 2
    return (B + adjoint(space, space, B)) / 2


def unitary(K, rng, n):
    Q, R = np.linalg.qr(K.random(rng, (n, n)))
    return Q


def check_decomposition(space, T, dec, rng, samples=10):
    K = space.field
    Phi = dec.phi
    scale = np.linalg.norm(T)
    assert np.abs(K.conj(Phi.T) @ space.gram @ Phi - np.eye(space.dim)).max() <= 1e-9
    assert np.linalg.norm(T @ Phi - Phi @ dec.D) <= 1e-8 * max(scale, 1e-300)
    assert np.linalg.norm(dec.reconstruct() - T) <= 1e-8 * max(scale, 1e-300)
    for _ in range(samples):
        v = space.random_vector(rng)
        lhs, rhs = dec.transform(T @ v), dec.transform(v)
        for g, mu in enumerate(dec.values):
            assert np.abs(lhs[g] - mu * rhs[g]).max(initial=0) <= 1e-8 * scale * max(1, np.abs(v).max())
