from fractions import Fraction

import mpmath
from hypothesis import strategies as st

from coxhurwitz.scalar import Scalar

BASIS_RADICANDS = (1, 2, 3, 5, 6, 10, 15, 30)

small_fraction = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.lists(small_fraction, min_size=8, max_size=8).map(Scalar.from_coefficients)


def random_scalar(rng, sparse=True):
    coeffs = []
    for _ in range(8):
        if sparse and rng.random() < 0.5:
            coeffs.append(Fraction(0))
        else:
            coeffs.append(Fraction(rng.randint(-30, 30), rng.randint(1, 9)))
    return Scalar.from_coefficients(coeffs)


def mp_value(x):
    """Value at working precision from the exact coefficients."""
    total = mpmath.mpf(0)
    for c, d in zip(x.coefficients, BASIS_RADICANDS):
        if c:
            total += mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(d)
    return total
