"""Exact arithmetic in the real field Q(sqrt2, sqrt3, sqrt5).

A :class:`Scalar` is stored as integer numerators over one positive common
denominator, indexed by a 3-bit mask selecting which of the primes 2, 3, 5
appear under the square root. The public coefficient order is the basis
``1, r2, r3, r5, r6, r10, r15, r30``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

__all__ = ["Scalar", "ZERO", "ONE", "INFINITY", "cos_from_label", "sqrt", "parse_scalar"]

INFINITY = math.inf

_PRIMES = (2, 3, 5)
# radicand of each mask: bit 0 -> 2, bit 1 -> 3, bit 2 -> 5
_RADICAND = tuple(math.prod(p for b, p in enumerate(_PRIMES) if m >> b & 1) for m in range(8))
# public basis order 1, r2, r3, r5, r6, r10, r15, r30 as masks
_PUBLIC_ORDER = (0, 1, 2, 4, 3, 5, 6, 7)
_MASK_OF_RADICAND = {d: m for m, d in enumerate(_RADICAND)}
# product of sqrt(d_i) * sqrt(d_j) = factor * sqrt(d_{i ^ j})
_MUL_FACTOR = tuple(
    tuple(math.prod(p for b, p in enumerate(_PRIMES) if (i & j) >> b & 1) for j in range(8))
    for i in range(8)
)

Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """An immutable exact element of Q(sqrt2, sqrt3, sqrt5)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, value: Union[int, Fraction, str] = 0):
        if isinstance(value, str):
            other = parse_scalar(value)
            self._num, self._den = other._num, other._den
        else:
            value = Fraction(value)
            self._num = (value.numerator, 0, 0, 0, 0, 0, 0, 0)
            self._den = value.denominator
        self._hash = None

    @classmethod
    def _make(cls, num: Iterable[int], den: int) -> "Scalar":
        num = tuple(num)
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            num, den = (0,) * 8, 1
        elif g != 1:
            num = tuple(c // g for c in num)
            den //= g
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Union[int, Fraction]]) -> "Scalar":
        """Build from the 8 rational coefficients in public basis order."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != 8:
            raise ValueError("expected 8 coefficients")
        den = math.lcm(*(c.denominator for c in coeffs))
        num = [0] * 8
        for mask, c in zip(_PUBLIC_ORDER, coeffs):
            num[mask] = c.numerator * (den // c.denominator)
        return cls._make(num, den)

    @property
    def coefficients(self) -> tuple:
        """The 8 rational coefficients over ``1, r2, r3, r5, r6, r10, r15, r30``."""
        return tuple(Fraction(self._num[m], self._den) for m in _PUBLIC_ORDER)

    @property
    def key(self) -> tuple:
        """Canonical hashable and orderable encoding."""
        return (self._den,) + self._num

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._num[0], self._den)

    # -- ring structure -------------------------------------------------

    def __add__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Scalar._make((a + b for a, b in zip(self._num, other._num)), d1)
        return Scalar._make((a * d2 + b * d1 for a, b in zip(self._num, other._num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make((-a for a in self._num), self._den)

    def __sub__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._num, other._num
        if not any(b[1:]):
            c = b[0]
            return Scalar._make((x * c for x in a), self._den * other._den)
        if not any(a[1:]):
            c = a[0]
            return Scalar._make((x * c for x in b), self._den * other._den)
        out = [0] * 8
        for i in range(8):
            ai = a[i]
            if not ai:
                continue
            row = _MUL_FACTOR[i]
            for j in range(8):
                bj = b[j]
                if bj:
                    out[i ^ j] += ai * bj * row[j]
        return Scalar._make(out, self._den * other._den)

    __rmul__ = __mul__

    def _conjugate(self, bit: int) -> "Scalar":
        # flip the sign of the given prime's square root
        return Scalar._make(
            (-c if m >> bit & 1 else c for m, c in enumerate(self._num)), self._den
        )

    def inverse(self) -> "Scalar":
        if not any(self._num):
            raise ZeroDivisionError("division by zero Scalar")
        acc = ONE
        x = self
        for bit in range(3):
            c = x._conjugate(bit)
            acc = acc * c
            x = x * c
        # x is now rational
        return acc * Scalar(Fraction(x._den, x._num[0]))

    def __truediv__(self, other: Number) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._den, self._num))
        return self._hash

    def __bool__(self) -> bool:
        return any(self._num)

    def sign(self) -> int:
        """Sign of the represented real number, decided exactly."""
        num = self._num
        if not any(num[1:]):
            return (num[0] > 0) - (num[0] < 0)
        # interval refinement: sqrt(d) in [r/2^k, (r+1)/2^k] with r = isqrt(d * 4^k)
        k = 10
        while True:
            scale = 1 << k
            lo = num[0] * scale
            hi = lo
            for m in range(1, 8):
                c = num[m]
                if not c:
                    continue
                r = math.isqrt(_RADICAND[m] << (2 * k))
                if c > 0:
                    lo += c * r
                    hi += c * (r + 1)
                else:
                    lo += c * (r + 1)
                    hi += c * r
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            k += 1

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> "Scalar":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        total = 0.0
        for m, c in enumerate(self._num):
            if c:
                total += c * math.sqrt(_RADICAND[m])
        return total / self._den

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for m in _PUBLIC_ORDER:
            c = Fraction(self._num[m], self._den)
            if not c:
                continue
            sym = "" if m == 0 else f"r{_RADICAND[m]}"
            mag = abs(c)
            if sym and mag == 1:
                body = sym
            elif sym:
                body = f"{mag}*{sym}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)


def sqrt(d: int) -> Scalar:
    """Square root of a squarefree radicand dividing 30."""
    if d == 1:
        return ONE
    if d not in _MASK_OF_RADICAND:
        raise ValueError(f"sqrt({d}) is not a basis element of Q(r2, r3, r5)")
    num = [0] * 8
    num[_MASK_OF_RADICAND[d]] = 1
    return Scalar._make(num, 1)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:/(\d+))?\s*(?:\*\s*r(\d+))?|r(\d+))\s*"
)


def parse_scalar(text: str) -> Scalar:
    """Parse the polynomial text form, e.g. ``"1/2 - 1/2*r5"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar text")
    pos, total, first = 0, ZERO, True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        sign, n, d, rad_a, rad_b = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        coeff = Fraction(int(n), int(d) if d else 1) if n is not None else Fraction(1)
        rad = rad_a or rad_b
        term = Scalar(coeff) * (sqrt(int(rad)) if rad else ONE)
        total = total - term if sign == "-" else total + term
        pos, first = m.end(), False
    return total


# -cos(pi/m) for supported Coxeter labels
_NEG_COS = {
    2: ZERO,
    3: Scalar(Fraction(-1, 2)),
    4: Scalar(Fraction(-1, 2)) * sqrt(2),
    5: Scalar(Fraction(-1, 4)) - Scalar(Fraction(1, 4)) * sqrt(5),
    6: Scalar(Fraction(-1, 2)) * sqrt(3),
}


def cos_from_label(m) -> Scalar:
    """Return ``-cos(pi/m)`` for a Coxeter label; ``m = inf`` gives ``-1``."""
    if m == INFINITY:
        return -ONE
    if m in _NEG_COS and not isinstance(m, bool):
        return _NEG_COS[m]
    raise ValueError(f"unsupported Coxeter label {m!r}; supported labels are 2, 3, 4, 5, 6, inf")
