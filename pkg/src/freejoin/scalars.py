"""Exact complex rationals ``re + im*i`` with ``Fraction`` parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import WordSyntaxError

Scalar = Union["ComplexRational", int, Fraction]


class ComplexRational:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value: Scalar) -> ComplexRational:
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as an exact complex rational")

    def conjugate(self) -> ComplexRational:
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_nonnegative(self) -> bool:
        return self.im == 0 and self.re >= 0

    def __add__(self, other: Scalar) -> ComplexRational:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> ComplexRational:
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> ComplexRational:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> ComplexRational:
        return -self + other

    def __mul__(self, other: Scalar) -> ComplexRational:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> ComplexRational:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return ComplexRational(num.re / d, num.im / d)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = f"{abs(self.im)} i"
        if self.re == 0:
            return im if self.im > 0 else f"-{im}"
        return f"{self.re}{'+' if self.im > 0 else '-'}{im}"

    def __repr__(self) -> str:
        return f"ComplexRational({str(self)!r})"


def _coerce(value: object) -> ComplexRational:
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Rational)):
        return ComplexRational(value)
    return NotImplemented


ZERO = ComplexRational(0)
ONE = ComplexRational(1)
I = ComplexRational(0, 1)

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i)?|(?P<imonly>{_RAT})\s*i)\s*$"
)


def parse_scalar(text: str) -> ComplexRational:
    """Parse ``p/q``, ``p/q+r/s i``, ``r/s i`` (integers allowed for any part)."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise WordSyntaxError("malformed complex rational", text, 0)
    try:
        if m.group("imonly") is not None:
            return ComplexRational(0, Fraction(m.group("imonly")))
        re_part = Fraction(m.group("re"))
        im_part = Fraction(m.group("im")) if m.group("im") is not None else Fraction(0)
    except ZeroDivisionError:
        raise WordSyntaxError("zero denominator", text, 0) from None
    if m.group("sign") == "-":
        im_part = -im_part
    return ComplexRational(re_part, im_part)
