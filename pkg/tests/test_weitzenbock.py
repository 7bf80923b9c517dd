import pytest
from hypothesis import given, settings, strategies as st

from covgen.poly import X, ZA, Poly, UsageError, ZForm
from covgen.weitzenbock import (apply, cayley_z, d1, d2, d2_images_in_z, is_semi_invariant,
                                nilpotency_order, x_to_za)


def xp(text, d=8):
    return Poly.from_text(X(d), text)


def test_d1_examples():
    D = d1(8)
    assert not apply(D, X(8).var("t"))
    assert not apply(D, xp("x2*t - x1^2"))
    assert apply(D, X(8).var("x1")) == X(8).var("t")


def test_d2_of_t_is_d_x1():
    assert apply(d2(8), X(8).var("t")) == xp("8*x1")


def test_apply_varset_mismatch():
    with pytest.raises(UsageError):
        apply(d1(8), X(7).var("t"))


def test_cayley_examples():
    assert cayley_z(8, 3) == xp("x3*t^2 + 2*x1^3 - 3*x1*x2*t")
    assert cayley_z(8, 8) == xp("-7*x1^8 + 28*x1^6*x2*t - 56*x1^5*x3*t^2 + 70*x1^4*x4*t^3"
                                " - 56*x1^3*x5*t^4 + 28*x1^2*x6*t^5 - 8*x1*x7*t^6 + x8*t^7")
    for d in range(2, 9):
        assert cayley_z(d, 2) == xp("x2*t - x1^2", d)
    with pytest.raises(UsageError):
        cayley_z(8, 9)
    with pytest.raises(UsageError):
        cayley_z(8, 1)


@pytest.mark.parametrize("d", range(2, 11))
def test_cayley_kernel(d):
    for i in range(2, d + 1):
        assert is_semi_invariant(cayley_z(d, i))


def test_semi_invariant_membership():
    assert not is_semi_invariant(X(8).var("x1"))
    assert is_semi_invariant(X(8).var("t"))


def test_nilpotency_examples():
    assert nilpotency_order(X(8).var("t")) == 8
    dv = {"x2*t - x1^2": 12, "x4*t - 4*x1*x3 + 3*x2^2": 8,
          "x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2": 4,
          "-8*x1*x7 + x8*t + 28*x2*x6 - 56*x3*x5 + 35*x4^2": 0}
    for text, order in dv.items():
        assert nilpotency_order(xp(text)) == order
    assert nilpotency_order(Poly.constant(X(8), 3)) == 0
    with pytest.raises(UsageError):
        nilpotency_order(Poly(X(8)))


def test_derived_operator_d8():
    D = d2_images_in_z(8)
    vs = ZA(8)
    assert D.image("t") == ZForm(Poly.from_text(vs, "8*x1"))
    assert D.image("z8") == ZForm(Poly.from_text(vs, "48*x1*z8 - 56*z2*z7"), 1)
    assert D.image("z2") == ZForm(Poly.from_text(vs, "6*z3 + 12*x1*z2"), 1)


@st.composite
def x_polys(draw, d=5):
    xs = X(d)
    names = xs.names
    out = Poly(xs)
    for _ in range(draw(st.integers(1, 4))):
        mono = Poly.constant(xs, draw(st.integers(-3, 3)))
        for _ in range(draw(st.integers(0, 3))):
            mono = mono * xs.var(draw(st.sampled_from(names)))
        out = out + mono
    return out


@settings(max_examples=40, deadline=None)
@given(x_polys())
def test_commutation_and_local_nilpotency(p):
    d = 5
    D = d2_images_in_z(d)
    assert x_to_za(apply(d2(d), p)) == D(x_to_za(p))
    q = p
    for _ in range(d * p.total_degree() + 1):
        q = apply(d2(d), q)
    assert not q


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3), st.integers(0, 2))
def test_order_grading_law(zs, tpow):
    d = 6
    p = X(d).var("t") ** tpow
    for i in zs:
        p = p * cayley_z(d, i)
    deg = tpow + sum(zs)
    wt = sum(zs)
    assert nilpotency_order(p) == d * deg - 2 * wt
