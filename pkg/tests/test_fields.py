import itertools

import pytest
from hypothesis import given, settings, strategies as st

from drinlevel.fields import (FieldError, extension_field, field_embedding, ground_field,
                              is_irreducible, is_prime, least_irreducible, prime_factors, prime_field)

FIELDS = [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 1), (3, 1, 2), (2, 2, 1), (2, 2, 2), (5, 1, 2)]


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(360) == [2, 3, 5]


def test_f4_modulus_is_w2_w_1():
    F = extension_field(2, 1, 2)
    assert F.modulus == (1, 1, 1)
    w = 2
    assert F.mul(w, w) == F.add(w, 1)                # w^2 = w + 1
    assert F.mul(w, F.mul(w, w)) == 1                 # w^3 = 1


def test_f9_modulus_is_x2_plus_1():
    assert extension_field(3, 1, 2).modulus == (1, 0, 1)


def test_least_irreducible_order():
    F2 = prime_field(2)
    assert least_irreducible(F2, 3) == [1, 1, 0, 1]   # x^3 + x + 1
    assert not is_irreducible([1, 0, 1], F2)          # x^2 + 1 = (x+1)^2


@pytest.mark.parametrize("p,s,m", FIELDS)
def test_table_mul_matches_schoolbook(p, s, m):
    F = extension_field(p, s, m)
    for a, b in itertools.product(range(F.size), repeat=2):
        assert F.mul(a, b) == F._tower_mul(a, b)


@pytest.mark.parametrize("p,s,m", FIELDS)
def test_field_axioms(p, s, m):
    F = extension_field(p, s, m)
    for a in range(F.size):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.size - 1) == 1
    assert sorted(F.exp) == list(range(1, F.size))    # generator is primitive


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=60, deadline=None)
def test_distributivity(spec, data):
    F = extension_field(*spec)
    a, b, c = (data.draw(st.integers(0, F.size - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_embedding_is_a_ring_map():
    Fq = ground_field(2)
    src, dst = extension_field(2, 1, 2), extension_field(2, 1, 4)
    e = field_embedding(src, dst, Fq)
    for a, b in itertools.product(range(src.size), repeat=2):
        assert e[src.mul(a, b)] == dst.mul(e[a], e[b])
        assert e[src.add(a, b)] == dst.add(e[a], e[b])


def test_embedding_needs_divisibility():
    Fq = ground_field(2)
    with pytest.raises(FieldError):
        field_embedding(extension_field(2, 1, 2), extension_field(2, 1, 3), Fq)


def test_bad_characteristic():
    with pytest.raises(FieldError):
        ground_field(4)
