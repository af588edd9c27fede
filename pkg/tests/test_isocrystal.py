import numpy as np
import pytest

from semilin.finite_field import GF
from semilin.isocrystal import (
    FieldTooSmallError, IsocrystalEquivalence, Isocrystal1D, StandardIsocrystal, classify,
    extension_degrees, lift_element, lift_vector, slope, solve_frobenius_twist, step_polynomial,
    teichmuller_element, verify_equivalence,
)
from semilin.semilinear import apply
from semilin.witt import FractionField, FractionFieldElement, WittContext, witt_frobenius, witt_mul


def residual_zero(a, b, x):
    """frobenius(x) * a == x * b, through witt_mul and witt_frobenius only."""
    ctx = a.ctx
    return witt_mul(ctx, witt_frobenius(ctx, x), a) == witt_mul(ctx, x, b)


def test_solver_identity_case():
    ctx = WittContext.over(2, 2, 4)
    assert solve_frobenius_twist(ctx.one(), ctx.one()) == ctx.one()


def test_solver_teichmuller_omega():
    ctx = WittContext.over(2, 2, 4)
    w = ctx.field.gen
    x = solve_frobenius_twist(ctx([w, 0, 0, 0]), ctx.one())
    brute = [t for t in ctx.field.elements() if not t.is_zero() and t * t * w == t]
    assert x.coeffs[0] == brute[0] == w * w
    assert residual_zero(ctx([w, 0, 0, 0]), ctx.one(), x)


def solve_with_ladder(a, b):
    """Solve, lifting a and b up the extension ladder until a root exists."""
    F = a.ctx.field
    for k in extension_degrees(a.ctx.p, a.ctx.n):
        big = GF(F.p, F.r * k)
        la, lb = lift_vector(a, big), lift_vector(b, big)
        try:
            return la, lb, solve_frobenius_twist(la, lb)
        except FieldTooSmallError as exc:
            assert exc.polynomial.degree >= 1 and "enlarge r" in str(exc)
    raise AssertionError("ladder exhausted")


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3)])
def test_solver_random_units(p, r, rng):
    ctx = WittContext.over(p, r, 4)
    for _ in range(15):
        a, b = solve_with_ladder(ctx.random(rng, unit=True), ctx.random(rng, unit=True))[:2]
        x = solve_frobenius_twist(a, b)
        assert x.coeffs[0] != 0
        assert residual_zero(a, b, x)


def test_step_polynomial_shape(rng):
    ctx = WittContext.over(3, 2, 4)
    a, b = ctx.random(rng, unit=True), ctx.one()
    poly = step_polynomial(a, b, [], 0)
    assert poly.degree == 3
    assert poly.coeffs[3] == a.coeffs[0] and poly.coeffs[1] == -b.coeffs[0]
    assert poly.is_affine_additive()


def test_solver_preconditions():
    ctx = WittContext.over(2, 2, 3)
    with pytest.raises(ValueError):
        solve_frobenius_twist(ctx([0, 1, 0]), ctx.one())
    with pytest.raises(ValueError):
        solve_frobenius_twist(ctx.one(), WittContext.over(2, 2, 4).one())


def test_field_too_small_over_f9():
    ctx = WittContext.over(3, 2, 4)
    F = ctx.field
    # x0^2 = c has no root in F_9 when c is a non-square
    nonsquare = next(c for c in F.elements() if not c.is_zero()
                     and all(t * t != c for t in F.elements()))
    X = Isocrystal1D(FractionFieldElement(0, ctx([nonsquare, 0, 0, 0])))
    with pytest.raises(FieldTooSmallError) as info:
        classify(X, extend=False)
    assert info.value.step == 0 and info.value.field == F
    E = classify(X)
    assert E.field.r > 2 and verify_equivalence(X, E)


def test_extension_degrees():
    assert extension_degrees(2, 4) == [1, 2, 4, 8]
    assert extension_degrees(3, 2) == [1, 2, 3, 6]


def test_classify_examples():
    ctx = WittContext.over(2, 2, 4)
    one = FractionFieldElement.one(ctx)
    E = classify(Isocrystal1D(one))
    assert E.slope == 0 and E.y == one and verify_equivalence(Isocrystal1D(one), E)
    X = Isocrystal1D(one.scale_p(1))
    E = classify(X)
    assert E.slope == 1 and E.y == one and verify_equivalence(X, E)
    w = ctx.field.gen
    X = Isocrystal1D(teichmuller_element(ctx, w))
    E = classify(X)
    assert E.slope == 0 and E.y.unit.coeffs[0] == w * w and E.precision == 4
    assert verify_equivalence(X, E)


def test_verify_rejects_wrong_answers():
    ctx = WittContext.over(2, 2, 4)
    w = ctx.field.gen
    X = Isocrystal1D(teichmuller_element(ctx, w))
    E = classify(X)
    wrong_slope = IsocrystalEquivalence(E.slope + 1, E.y, E.precision, E.field)
    report = verify_equivalence(X, wrong_slope)
    assert not report and report.valuations == (0, 1)
    one = FractionFieldElement.one(ctx)
    report = verify_equivalence(X, IsocrystalEquivalence(0, one, 4, ctx.field))
    assert not report and report.first_difference == 0


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2)])
def test_classify_soundness_and_slope_shift(p, r):
    rng = np.random.default_rng(7 * p + r)
    ctx = WittContext.over(p, r, 4)
    K = FractionField(ctx)
    for _ in range(20):
        c = K.random(rng, max_slope=3)
        X = Isocrystal1D(c)
        E = classify(X)
        assert E.slope == slope(X) == c.m
        assert verify_equivalence(X, E)
        j = int(rng.integers(-3, 4))
        E2 = classify(Isocrystal1D(c.scale_p(j)))
        assert E2.slope == E.slope + j and E2.y == E.y and E2.field == E.field


def test_standard_isocrystals_are_distinct(rng):
    ctx = WittContext.over(2, 2, 4)
    for m in range(-2, 3):
        X = StandardIsocrystal(m).over(ctx)
        E = classify(X)
        assert E.slope == m
        for other in {m - 1, m + 1}:
            y = FractionField(ctx).random(rng, max_slope=0)
            assert not verify_equivalence(X, IsocrystalEquivalence(other, y, 4, ctx.field))


def test_isocrystal_requires_nonzero():
    with pytest.raises(ValueError):
        Isocrystal1D(FractionFieldElement.zero(WittContext.over(2, 2, 3)))


def test_semilinear_bridge(rng):
    ctx = WittContext.over(3, 2, 3)
    K = FractionField(ctx)
    X = Isocrystal1D(K.random(rng))
    f = X.as_semilinear()
    for _ in range(5):
        v = K.random_vector(rng, 1)
        assert apply(f, v)[0] == X(v[0])


def test_lift_element_preserves_equation():
    ctx = WittContext.over(2, 2, 3)
    c = teichmuller_element(ctx, ctx.field.gen)
    big = GF(2, 4)
    lifted = lift_element(c, big)
    assert lifted.m == c.m and lifted.ctx.field == big
    assert lift_element(FractionFieldElement.zero(ctx), big).is_zero()
