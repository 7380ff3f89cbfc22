"""Compiled kernels against the pure-Python reference, on identical inputs."""

import pytest
from hypothesis import given, settings, strategies as st

from drinlevel import _pykernels as P
from drinlevel.algebra import algebra_new

C = pytest.importorskip("drinlevel._ckernels", reason="compiled kernels not built")

SPECS = [(2, 1, 1, 2), (2, 1, 2, 2), (3, 1, 1, 3), (3, 1, 2, 2), (2, 1, 3, 1), (5, 1, 1, 2)]


def contexts(spec):
    B = algebra_new(*spec)
    args = (B.p, B.q, B.Q, B.k, B.residue.zech)
    return B, P.make_ctx(*args), C.make_ctx(*args)


def elements(B, data, n):
    return [B.from_code(data.draw(st.integers(0, B.cardinality - 1))) for _ in range(n)]


def test_backend_names():
    assert P.BACKEND == "python" and C.BACKEND == "cython"


@given(st.sampled_from(SPECS), st.data())
@settings(max_examples=80, deadline=None)
def test_element_ops(spec, data):
    B, pc, cc = contexts(spec)
    x, y = elements(B, data, 2)
    for name in ("el_add", "el_sub", "el_mul"):
        assert getattr(P, name)(pc, x, y) == getattr(C, name)(cc, x, y)
    assert P.el_neg(pc, x) == C.el_neg(cc, x)
    j = data.draw(st.integers(0, 3))
    assert P.el_frob(pc, x, j) == C.el_frob(cc, x, j)
    assert P.el_pow(pc, x, 7) == C.el_pow(cc, x, 7)
    assert P.el_is_unit(pc, x) == C.el_is_unit(cc, x)
    if P.el_is_unit(pc, x):
        assert P.el_inv(pc, x) == C.el_inv(cc, x)


@given(st.sampled_from(SPECS), st.data())
@settings(max_examples=60, deadline=None)
def test_twisted_ops(spec, data):
    B, pc, cc = contexts(spec)
    f = tuple(elements(B, data, data.draw(st.integers(0, 4))))
    g = tuple(elements(B, data, data.draw(st.integers(0, 4))))
    x = elements(B, data, 1)[0]
    assert P.tw_trim(pc, f) == C.tw_trim(cc, f)
    assert P.tw_add(pc, f, g) == C.tw_add(cc, f, g)
    assert P.tw_mul(pc, f, g) == C.tw_mul(cc, f, g)
    assert P.tw_eval(pc, f, x) == C.tw_eval(cc, f, x)
    xs = elements(B, data, 10)
    assert P.zero_scan(pc, f, xs) == C.zero_scan(cc, f, xs)


@given(st.sampled_from(SPECS[:4]), st.data())
@settings(max_examples=40, deadline=None)
def test_subspace_kernels(spec, data):
    B, pc, cc = contexts(spec)
    imgs = elements(B, data, data.draw(st.integers(0, 3)))
    assert P.subspace_poly(pc, imgs) == C.subspace_poly(cc, imgs)
    vals = P.span_values(pc, imgs)
    assert vals == C.span_values(cc, imgs)
    assert P.roots_product(pc, vals) == C.roots_product(cc, vals)


def test_linear_algebra():
    rows = [[1, 2, 0, 1], [0, 1, 1, 2], [1, 0, 1, 1]]
    assert P.nullspace_mod_p(rows, 3) == C.nullspace_mod_p(rows, 3)
    cols = [2, 4, 3]                      # multiplication by x in F_8 = F_2[x]/(x^3+x+1)
    assert P.power_table(cols, 2, 3, 8) == C.power_table(cols, 2, 3, 8)
