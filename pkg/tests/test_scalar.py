from fractions import Fraction
import math
import random

import mpmath
import pytest
from hypothesis import given

from coxhurwitz.scalar import INFINITY, ONE, ZERO, Scalar, cos_from_label, parse_scalar, sqrt

from scalar_strategies import mp_value, random_scalar, scalars


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(scalars)
def test_inverse_is_exact(a):
    if a:
        assert a * a.inverse() == ONE
        assert (ONE / a) * a == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(scalars, scalars)
def test_order_is_total_and_compatible(a, b):
    assert (a < b) + (a == b) + (a > b) == 1
    if a < b:
        assert a + ONE < b + ONE


@given(scalars)
def test_text_round_trip(a):
    assert parse_scalar(str(a)) == a
    assert Scalar(str(a)) == a


@given(scalars)
def test_hash_matches_equality(a):
    b = Scalar.from_coefficients(a.coefficients)
    assert a == b and hash(a) == hash(b)


def test_rational_embedding():
    assert Scalar(Fraction(3, 4)) == Fraction(3, 4)
    assert Scalar(2) * Scalar(Fraction(1, 2)) == 1
    assert Scalar(5).is_rational()
    assert not sqrt(2).is_rational()


def test_square_roots_square_correctly():
    for d in (2, 3, 5, 6, 10, 15, 30):
        assert sqrt(d) * sqrt(d) == d
    assert sqrt(2) * sqrt(3) == sqrt(6)
    assert sqrt(10) * sqrt(15) == 5 * sqrt(6)
    with pytest.raises(ValueError):
        sqrt(7)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_cos_from_label_matches_cosine(m):
    mpmath.mp.dps = 50
    assert abs(mp_value(cos_from_label(m)) + mpmath.cos(mpmath.pi / m)) < mpmath.mpf(10) ** -45


def test_cos_from_label_special_cases():
    assert cos_from_label(INFINITY) == -ONE
    # 4 cos^2(pi/5) - 2 cos(pi/5) - 1 = 0
    c = -cos_from_label(5)
    assert 4 * c * c - 2 * c - 1 == 0
    with pytest.raises(ValueError):
        cos_from_label(7)


def test_sign_near_cancellation():
    # sqrt(2) against its decimal truncations from both sides
    for k in range(1, 30):
        lo = Fraction(math.isqrt(2 * 10 ** (2 * k)), 10 ** k)
        assert (sqrt(2) - Scalar(lo)).sign() == 1
        assert (sqrt(2) - Scalar(lo + Fraction(1, 10 ** k))).sign() == -1
    # a sum of radicals that is positive but tiny
    x = sqrt(2) + sqrt(3) - Scalar(Fraction(314626436, 100000000))
    assert x.sign() == 1


def test_float_conversion():
    rng = random.Random(7)
    for _ in range(200):
        a = random_scalar(rng)
        assert math.isclose(float(a), float(mp_value(a)), rel_tol=1e-12, abs_tol=1e-12)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_scalar("")
    with pytest.raises(ValueError):
        parse_scalar("1 2")
    with pytest.raises(ValueError):
        parse_scalar("r7")
