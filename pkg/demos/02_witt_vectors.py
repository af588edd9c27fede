# %% [markdown]
# # Witt vectors by hand
#
# Coefficient i of a sum is an integer polynomial in the first i+1
# coefficients.  Over the integers the ghost map turns these operations
# into componentwise arithmetic, which is how the polynomials are checked.

# %%
from semilin.witt import (
    WittContext, ghost_components, valuation, witt_frobenius, witt_structure_polys,
    witt_verschiebung,
)

Z = WittContext(2, 3)
print("S_1 for addition, p = 2:", witt_structure_polys(Z, "add", 1))
one = Z([1, 0, 0])
two = one + one
print("1 + 1 over the integers:", two.coeffs, "ghost", ghost_components(Z, two))

# %% Reducing mod 2 gives 1 + 1 = (0, 1, 0) in W(F_2): the number 2.
W = WittContext.over(2, 1, 3)
print("1 + 1 in W(F_2):", W.one() + W.one())

# %% Over F_4 Frobenius squares each coefficient; V shifts.  V F = p.
W4 = WittContext.over(2, 2, 4)
w = W4.field.gen
x = W4([w, 1, 0, w])
print("F(x) =", witt_frobenius(W4, x))
print("V(F(x)) == 2x:", witt_verschiebung(W4, witt_frobenius(W4, x)) == 2 * x)
print("valuation(2x) =", valuation(W4, 2 * x))
