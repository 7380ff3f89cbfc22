import itertools

import pytest
from hypothesis import given, settings, strategies as st

from drinlevel.algebra import NotAUnit, algebra_new, enumerate_elements
from drinlevel.twisted import (NotDivisible, TwistedPoly, as_linear_map, is_separable, normalize,
                               tw_right_divide)

BASES = [(2, 1, 1, 2), (2, 1, 2, 1), (3, 1, 1, 2), (2, 1, 2, 2), (2, 1, 1, 3)]


def naive_eval(f, x):
    B = f.base
    acc = B.zero
    for i, c in enumerate(f.coeffs):
        acc = B.add(acc, B.mul(c, B.pow(x.raw if hasattr(x, "raw") else x, B.q ** i)))
    return acc


def random_poly(B, data, max_deg=3):
    n = data.draw(st.integers(0, max_deg + 1))
    return TwistedPoly(B, [B.from_code(data.draw(st.integers(0, B.cardinality - 1))) for _ in range(n)])


def test_commutation_rule(F2eps):
    tau = TwistedPoly.tau(F2eps)
    Y = TwistedPoly.const(F2eps, F2eps("Y"))
    assert tau * Y == TwistedPoly.const(F2eps, F2eps("Y^2")) * tau == TwistedPoly.zero(F2eps)
    assert repr(tau * Y) == "0"


def test_commutation_rule_field(F4):
    tau = TwistedPoly.tau(F4)
    w = F4("w")
    assert tau * TwistedPoly.const(F4, w) == TwistedPoly(F4, [0, w * w])


def test_square_of_one_plus_tau(F2):
    f = TwistedPoly(F2, [1, 1])
    assert f * f == TwistedPoly(F2, [1, 0, 1])      # char 2: the middle term cancels


def test_eval_examples(F2eps, F4):
    f = TwistedPoly(F2eps, ["Y", 1])                  # Y X + X^2
    assert f(F2eps("Y")) == 0
    assert f(F2eps("1")) == F2eps("1+Y")
    g = TwistedPoly(F4, [0, 1])                       # X^2
    assert g(F4("w")) == F4("w^2")


@given(st.sampled_from(BASES), st.data())
@settings(max_examples=60, deadline=None)
def test_mul_is_composition(spec, data):
    B = algebra_new(*spec)
    f, g = random_poly(B, data), random_poly(B, data)
    x = B.element(B.from_code(data.draw(st.integers(0, B.cardinality - 1))))
    assert (f * g)(x).raw == naive_eval(f, naive_eval(g, x))
    assert (f + g)(x).raw == B.add(naive_eval(f, x.raw), naive_eval(g, x.raw))


@given(st.sampled_from(BASES), st.data())
@settings(max_examples=40, deadline=None)
def test_mul_associative(spec, data):
    B = algebra_new(*spec)
    f, g, h = (random_poly(B, data, 2) for _ in range(3))
    assert (f * g) * h == f * (g * h)


@pytest.mark.parametrize("spec", BASES)
def test_evaluation_is_fq_linear(spec):
    B = algebra_new(*spec)
    f = TwistedPoly(B, [B("Y") if B.k > 1 else B.one, B.one, B.one])
    M = as_linear_map(f)
    xs = list(enumerate_elements(B))[:30]
    for x, y in itertools.product(xs, repeat=2):
        assert f(x + y) == f(x) + f(y)
        assert M.apply(x.raw) == f(x).raw
    for c in range(B.q):
        for x in xs:
            s = B.element(B.scalar(c))
            assert f(s * x) == s * f(x)


@given(st.sampled_from(BASES), st.data())
@settings(max_examples=60, deadline=None)
def test_right_division(spec, data):
    B = algebra_new(*spec)
    f = random_poly(B, data, 4)
    h = random_poly(B, data, 2)
    if not h.coeffs or not B.is_unit(h.coeffs[-1]):
        with pytest.raises(NotDivisible):
            tw_right_divide(f, h)
        return
    g, r = tw_right_divide(f, h)
    assert g * h + r == f
    assert r.degree < h.degree


def test_normalize_and_separable(F2eps):
    h = TwistedPoly(F2eps, ["Y", "1+Y"])
    n = normalize(h)
    assert n.leading_coeff == 1
    assert not is_separable(h)
    assert is_separable(TwistedPoly(F2eps, ["1+Y", 1]))
    with pytest.raises(NotAUnit):
        normalize(TwistedPoly(F2eps, [1, "Y"]))


def test_inverse_of_unipotent():
    B = algebra_new(2, 1, 2, 3)
    u = TwistedPoly(B, ["w", "Y", "Y^2", "w*Y"])
    v = u.inverse()
    assert u * v == TwistedPoly.one(B) == v * u
    with pytest.raises(NotAUnit):
        TwistedPoly(B, [1, 1]).inverse()


def test_x_form_roundtrip(F4):
    f = TwistedPoly(F4, ["w", 0, 1])
    assert f.x_degree == 4
    assert TwistedPoly.from_x_form(F4, f.x_form()) == f
    with pytest.raises(ValueError):
        TwistedPoly.from_x_form(F4, {3: F4.one})
    assert repr(f) == "w*X + X^4"
