import pytest

from qoslab.laurent import LaurentPoly, DeformParam, P_Q, P_MINUS_Q, P_Q2, ONE


def test_constants_and_monomials():
    assert LaurentPoly.const(0).is_zero()
    assert LaurentPoly.const(1).is_one()
    p = LaurentPoly.monomial(3, -2)
    assert p.eval(2) == 3 * 2 ** -2


def test_ring_arithmetic():
    a = LaurentPoly.monomial(2, 1) + LaurentPoly.const(1)   # 1 + 2q
    b = LaurentPoly.monomial(1, -1)                          # q^-1
    prod = a * b
    assert prod == LaurentPoly.monomial(1, -1) + LaurentPoly.const(2)
    assert a - a == LaurentPoly.const(0)
    assert (a + b) * (a - b) == a * a - b * b


def test_pow_and_integer_coercion():
    q = LaurentPoly.monomial(1, 1)
    assert (1 + q) ** 2 == 1 + 2 * q + q * q
    assert q ** 0 == ONE
    assert (q ** -3) * (q ** 3) == ONE


def test_parse_round_trip():
    p = LaurentPoly.monomial(-2, 3) + LaurentPoly.monomial(1, -1) + 5
    assert LaurentPoly.parse(str(p)) == p


def test_eps_expansion():
    # q = e^eps: q^k = 1 + k eps + O(eps^2)
    c0, c1 = LaurentPoly.monomial(1, 4).subs_eps_linear()
    assert (c0, c1) == (1, 4)
    c0, c1 = (LaurentPoly.monomial(1, 1) - LaurentPoly.monomial(1, -1)).subs_eps_linear()
    assert (c0, c1) == (0, 2)


def test_deform_param_values():
    assert P_Q.value(0.5) == 0.5
    assert P_MINUS_Q.value(0.5) == -0.5
    assert P_Q2.value(0.5) == 0.25
    assert P_Q.pow(3) == LaurentPoly.monomial(1, 3)
    assert P_MINUS_Q.pow(3) == LaurentPoly.monomial(-1, 3)
    with pytest.raises(ValueError):
        DeformParam(2, 1)
