# %% [markdown]
# # One-dimensional isocrystals
#
# Every structure map on the fraction field K is x -> c * phi(x).  Its
# slope is the valuation of c, and the unit part is absorbed by a change
# of basis y found one Witt coefficient at a time.

# %%
import numpy as np

from semilin.isocrystal import Isocrystal1D, classify, teichmuller_element, verify_equivalence
from semilin.witt import FractionField, WittContext

ctx = WittContext.over(2, 2, 4)
w = ctx.field.gen
X = Isocrystal1D(teichmuller_element(ctx, w))
E = classify(X)
print("slope", E.slope, "unit", E.y, "verified", bool(verify_equivalence(X, E)))
print("leading coefficient is w^2:", E.y.unit.coeffs[0] == w * w)

# %% Scaling c by p^j shifts the slope by j and keeps y.
E3 = classify(Isocrystal1D(X.c.scale_p(3)))
print("after scaling by 8: slope", E3.slope, "same unit", E3.y == E.y)

# %% Over F_9 the required roots often lie in an extension field.
rng = np.random.default_rng(2)
K9 = FractionField(WittContext.over(3, 2, 4))
for _ in range(3):
    c = K9.random(rng)
    E = classify(Isocrystal1D(c))
    print(f"c = {c!r}: slope {E.slope}, solved over {E.field.name}, verified {bool(verify_equivalence(Isocrystal1D(c), E))}")
