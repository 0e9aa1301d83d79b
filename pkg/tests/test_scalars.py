from fractions import Fraction

from hodgeorbit.scalars import GaussScalar, I, ONE, ZERO, imaginary, rational


def test_arithmetic_is_exact():
    x = GaussScalar(Fraction(1, 3), Fraction(2, 7))
    y = GaussScalar(Fraction(-5, 2), Fraction(1, 3))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * ONE == x
    assert x + ZERO == x


def test_i_squares_to_minus_one():
    assert I * I == GaussScalar(-1)


def test_conjugation_is_ring_automorphism():
    x = GaussScalar(Fraction(3, 4), Fraction(-2, 5))
    y = GaussScalar(1, 7)
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert x.conjugate().conjugate() == x
    assert rational(Fraction(5, 9)).conjugate() == rational(Fraction(5, 9))


def test_division_by_zero_raises():
    import pytest

    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_normal_form_makes_equality_decidable():
    a = GaussScalar(Fraction(2, 4), Fraction(6, 4))
    b = GaussScalar(Fraction(1, 2), Fraction(3, 2))
    assert a == b and hash(a) == hash(b)


def test_views_and_predicates():
    x = imaginary(Fraction(3, 2))
    assert x.re == 0 and x.im == Fraction(3, 2)
    assert not x.is_rational() and not x.is_zero()
    assert ZERO.is_zero() and ONE.is_rational()
