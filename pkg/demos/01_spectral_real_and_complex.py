# %% [markdown]
# # Spectral decomposition over R and C
#
# The same calls work for both scalar fields.  We build a space with a
# non-standard Gram matrix, make an operator self-adjoint for it, and
# diagonalise.

# %%
import numpy as np

from semilin.inner_product import InnerProductSpace, adjoint, inner, norm
from semilin.scalar import COMPLEX, REAL
from semilin.spectral import collate_orthogonal_family, diagonalize_self_adjoint, max_eigenpair

rng = np.random.default_rng(0)

for K in (REAL, COMPLEX):
    E = InnerProductSpace.random(K, 4, rng)
    B = K.random(rng, (4, 4))
    T = (B + adjoint(E, E, B)) / 2

    dec = diagonalize_self_adjoint(E, T)
    print(K, "eigenvalues", np.round(dec.eigenvalues, 6))
    print("  reconstruction error", np.linalg.norm(dec.reconstruct() - T))

    # The largest |eigenvalue| is also what power iteration finds.
    lam, v = max_eigenpair(E, T)
    print("  max_eigenpair", round(lam, 6), "residual", norm(E, T @ v - lam * v))

    # Eigenspaces collate into an isometry onto l^2.
    col = collate_orthogonal_family(dec.eigenspace_family())
    x = E.random_vector(rng)
    print("  Parseval gap", abs(norm(E, x) ** 2 - sum(np.vdot(b, b).real for b in col(x).support.values())))
    print("  <x, Tx> is real:", abs(inner(E, x, T @ x).imag) < 1e-12)
