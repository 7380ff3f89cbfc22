import pytest

from drinlevel.algebra import algebra_new, enumerate_elements
from drinlevel.apoly import APoly, factor, gl_order, irreducibles
from drinlevel.drinfeld import (NoUnitCoefficient, NotCharacteristic, ZeroDegreeModule, characteristic_of,
                                drinfeld_new, e_of, height_of, rank_check, standardize)
from drinlevel.twisted import TwistedPoly


def test_constructions(F2eps, F4):
    E = drinfeld_new(F2eps, "Y", [1])
    assert E.rank == 1 and E.is_standard
    E = drinfeld_new(F4, "w", [0, 1])
    assert E.rank == 2
    with pytest.raises(ZeroDegreeModule):
        drinfeld_new(F4, "w", [0])
    with pytest.raises(NoUnitCoefficient):
        drinfeld_new(F2eps, 0, ["Y"])


def test_e_T_squared(F2eps, T2):
    E = drinfeld_new(F2eps, "Y", [1])
    eT = E.e_T
    assert e_of(E, T2 * T2) == eT * eT
    assert e_of(E, T2 + 1) == eT + TwistedPoly.one(F2eps)


def test_e_is_a_ring_map(F4):
    E = drinfeld_new(F4, "w", [1, "w"])
    T = APoly.T(F4.ground)
    a, b = T * T + T + 1, T + 1
    assert e_of(E, a * b) == e_of(E, a) * e_of(E, b)
    assert e_of(E, a + b) == e_of(E, a) + e_of(E, b)


@pytest.mark.parametrize("spec,gamma,coeffs", [
    ((2, 1, 1, 2), "Y", [1]), ((2, 1, 2, 1), "w", [0, 1]), ((3, 1, 1, 2), "1+Y", [1, "Y"]),
    ((2, 1, 1, 3), "Y", ["Y", 1, "Y^2"]),
])
def test_rank_check(spec, gamma, coeffs):
    E = drinfeld_new(algebra_new(*spec), gamma, coeffs)
    assert rank_check(E)


def test_standardize_roundtrip():
    B = algebra_new(2, 1, 1, 3)
    E = drinfeld_new(B, "Y", [1, "Y", "Y^2"])
    S, u = standardize(E)
    assert S.is_standard and S.e_T.degree == 1
    assert u * E.e_T == S.e_T * u
    assert S.e_T.coeffs[0] == E.e_T.coeffs[0]
    # conjugating back recovers E
    assert S.conjugate(u.inverse()) == E


def test_characteristic_over_q4():
    # with q = 4 the constant w lies in F_q, so T - w is a prime of A
    B = algebra_new(2, 2, 1, 1)
    assert str(characteristic_of(drinfeld_new(B, "x", [1])).pi_char) == "T+x"


def test_characteristic_over_q2(F4):
    # with q = 2 the same element only satisfies T^2 + T + 1
    assert str(characteristic_of(drinfeld_new(F4, "w", [1])).pi_char) == "T^2+T+1"


def test_characteristic_general():
    B = algebra_new(2, 1, 1, 1)
    info = characteristic_of(drinfeld_new(B, "1", [1]))
    assert str(info.pi_char) == "T+1"
    B = algebra_new(2, 1, 5, 1)   # gamma(T) generates F_32, whose minimal polynomial has degree 5
    info = characteristic_of(drinfeld_new(B, "w", [1]), max_degree=4)
    assert info.general


def test_heights(F4):
    T = APoly.T(F4.ground)
    assert height_of(drinfeld_new(F4, 0, [0, 1]), T) == 2      # supersingular
    assert height_of(drinfeld_new(F4, 0, [1, 1]), T) == 1
    with pytest.raises(NotCharacteristic):
        height_of(drinfeld_new(F4, 1, [1]), T)


def test_factor_and_gl_order(T2):
    F = T2.F
    a = (T2 ** 2) * (T2 + 1)
    assert factor(a) == [(T2, 2), (T2 + 1, 1)]
    assert [str(p) for p in irreducibles(F, 2)] == ["T^2+T+1"]
    assert gl_order(F, T2, 2) == 6
    assert gl_order(F, T2 * T2, 1) == 2


def test_module_action_on_points(F2eps, T2):
    E = drinfeld_new(F2eps, "Y", [1])
    for x in enumerate_elements(F2eps):
        assert e_of(E, T2)(x) == F2eps("Y") * x + x * x
