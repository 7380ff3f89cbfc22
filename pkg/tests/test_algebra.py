import itertools

import pytest
from hypothesis import given, settings, strategies as st

from drinlevel.algebra import (FqLinearMap, NotAUnit, RingHom, algebra_new, enumerate_elements, frobenius,
                               is_nilpotent, is_unit, linear_kernel, residue_algebra, with_residue)
from drinlevel.bounds import BoundExceeded
from drinlevel.fields import extension_field

ALGEBRAS = [(2, 1, 1, 1), (2, 1, 2, 1), (2, 1, 1, 2), (2, 1, 1, 3), (3, 1, 1, 2), (3, 1, 2, 2), (2, 1, 2, 2),
            (2, 2, 1, 2)]


def test_construction_examples():
    assert [x.coords() for x in enumerate_elements(algebra_new(2))] == [[0], [1]]
    F4 = algebra_new(2, 1, 2, 1)
    assert F4.cardinality == 4 and F4.residue.modulus == (1, 1, 1)
    B = algebra_new(2, 1, 1, 2)
    assert [B.format(x) for x in B.enumerate_elements()] == ["0", "1", "Y", "1+Y"]


def test_arith_examples(F2eps, F4):
    Y = F2eps("Y")
    assert Y * Y == 0
    assert F2eps("1+Y").inv() == F2eps("1+Y")
    w = F4("w")
    assert w * w ** 2 == 1


def test_unit_examples(F2eps, F4):
    assert is_unit(F2eps("1+Y"))
    assert is_nilpotent(F2eps("Y"))
    assert is_unit(F4("w"))
    with pytest.raises(NotAUnit):
        F2eps("Y").inv()


def test_frobenius_examples(F2eps, F4):
    assert frobenius(F2eps("Y"), 1) == 0
    assert frobenius(F4("w"), 1) == F4("w^2")
    assert frobenius(F2eps("1+Y"), 1) == 1


def test_kernel_examples(F2eps, F4):
    ident = FqLinearMap.from_function(F4, lambda x: x)
    assert [x.code for x in linear_kernel(ident)] == [0]
    zero = FqLinearMap.from_function(F2eps, lambda x: F2eps.zero)
    assert len(linear_kernel(zero)) == 4
    f = FqLinearMap.from_function(F2eps, lambda x: F2eps.add(F2eps.mul(x, x), F2eps.mul(F2eps.Y, x)))
    assert [F2eps.format(x.raw) for x in linear_kernel(f)] == ["0", "Y"]


def test_parse_forms():
    B = algebra_new(3, 1, 2, 2)
    assert B("w*Y") == B("w") * B("Y")
    assert B([1, 0, 0, 0]) == B(1)
    assert B("omega") == B("ω") == B("w")
    with pytest.raises(ValueError):
        B("z")
    with pytest.raises(ValueError):
        B("Y^w")


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        list(algebra_new(3, 1, 2, 3).enumerate_elements(max_card=100))


@pytest.mark.parametrize("spec", ALGEBRAS)
def test_coords_roundtrip(spec):
    B = algebra_new(*spec)
    for x in B.enumerate_elements():
        assert B.from_coords(B.coords(x)) == x
        assert B.from_code(B.code(x)) == x


@pytest.mark.parametrize("spec", ALGEBRAS)
def test_units_inverse_and_nilpotents(spec):
    B = algebra_new(*spec)
    for x in B.enumerate_elements():
        if B.is_unit(x):
            assert B.mul(x, B.inv(x)) == B.one
        else:
            assert B.pow(x, B.k) == B.zero


@given(st.sampled_from(ALGEBRAS), st.data())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(spec, data):
    B = algebra_new(*spec)
    n = B.cardinality
    x, y, z = (B.from_code(data.draw(st.integers(0, n - 1))) for _ in range(3))
    assert B.mul(x, B.add(y, z)) == B.add(B.mul(x, y), B.mul(x, z))
    assert B.mul(B.mul(x, y), z) == B.mul(x, B.mul(y, z))
    assert B.mul(x, y) == B.mul(y, x)
    assert B.sub(B.add(x, y), y) == x
    # Frobenius is additive and multiplicative
    assert B.frob(B.add(x, y)) == B.add(B.frob(x), B.frob(y))
    assert B.frob(B.mul(x, y)) == B.mul(B.frob(x), B.frob(y))
    assert B.frob(x) == B.pow(x, B.q)


@pytest.mark.parametrize("spec", ALGEBRAS)
def test_reduction_is_ring_map(spec):
    B = algebra_new(*spec)
    red = RingHom(B, residue_algebra(B))
    for x, y in itertools.product(list(B.enumerate_elements())[:40], repeat=2):
        assert red(B.mul(x, y)) == red.dst.mul(red(x), red(y))
        assert red(B.add(x, y)) == red.dst.add(red(x), red(y))
        assert B.is_unit(x) == red.dst.is_unit(red(x))


def test_residue_extension_hom():
    B = algebra_new(2, 1, 2, 2)
    big = with_residue(B, extension_field(2, 1, 4))
    h = RingHom(B, big)
    for x, y in itertools.product(list(B.enumerate_elements()), repeat=2):
        assert h(B.mul(x, y)) == big.mul(h(x), h(y))
