from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from etaforms.cyclo import Cyclotomic, UnityRoot, cyclotomic_polynomial, e, sqrt_embed
from etaforms.ntheory import DomainError


@pytest.mark.parametrize("M,coeffs", [(1, (-1, 1)), (4, (1, 0, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomial(M, coeffs):
    # coefficients listed from the constant term up
    assert tuple(cyclotomic_polynomial(M)) == coeffs


def test_is_zero_examples():
    assert (e(Fraction(1, 3)) + e(Fraction(2, 3)) + 1).is_zero()
    assert (e(Fraction(1, 4)) - e(Fraction(3, 4)) - 2 * e(Fraction(1, 4))).is_zero()
    assert not e(Fraction(1, 5)).is_zero()


def test_roots_have_order_dividing_modulus():
    for M in range(1, 61):
        for j in range(M):
            z = e(Fraction(j, M))
            assert not z.is_zero()
            assert z ** M == Cyclotomic.rational(1)


def test_sqrt_embed():
    assert sqrt_embed(1) == Cyclotomic.rational(1)
    assert sqrt_embed(9).rational_value() == 3
    for a in range(1, 100, 2):
        v = sqrt_embed(a)
        assert (v * v - a).is_zero()
        assert v.to_complex().real > 0
    with pytest.raises(DomainError):
        sqrt_embed(4)


def test_unity_root_group():
    x = UnityRoot(Fraction(7, 4))
    assert x.exponent == Fraction(3, 4)
    assert x * x.inverse() == UnityRoot(0)
    assert x.order() == 4
    assert x.to_cyclotomic() == e(Fraction(3, 4))


_terms = st.lists(st.tuples(st.fractions(min_value=0, max_value=1, max_denominator=24),
                            st.integers(-5, 5)), min_size=1, max_size=5)


@given(_terms, _terms, _terms)
def test_ring_axioms(a, b, c):
    x, y, z = (Cyclotomic.from_terms(t) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x


@given(_terms)
def test_numeric_shadow(a):
    x = Cyclotomic.from_terms(a)
    assert x.is_zero() == (abs(x.to_complex()) < 1e-9)
