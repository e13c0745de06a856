"""Closed intervals with exact rational endpoints.

All operations round nothing: endpoints are Fractions, so every enclosure
is certified by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratpoly import Poly, Scalar, as_rational


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Scalar) -> "Interval":
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other) -> "Interval":
        o = _iv(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_iv(other))

    def __rsub__(self, other) -> "Interval":
        return _iv(other) - self

    def __mul__(self, other) -> "Interval":
        o = _iv(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = _iv(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def certainly_less(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))


def _iv(v) -> Interval:
    return v if isinstance(v, Interval) else Interval.point(v)


def horner(p: Poly, x: Interval) -> Interval:
    acc = Interval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def enclose_poly(p: Poly, x: Interval) -> Interval:
    """Range enclosure of ``p`` over ``x``: mean-value form intersected with Horner.

    The mean-value form is quadratically tight near critical points, which
    is exactly where the maximizers live.
    """
    if x.lo == x.hi:
        return Interval.point(p(x.lo))
    m = x.mid
    mv = Interval.point(p(m)) + horner(p.derivative(), x) * Interval(x.lo - m, x.hi - m)
    return mv.intersect(horner(p, x))


def floor_decimal(q: Fraction, digits: int) -> str:
    return _decimal(q, digits, floor=True)


def ceil_decimal(q: Fraction, digits: int) -> str:
    return _decimal(q, digits, floor=False)


def _decimal(q: Fraction, digits: int, floor: bool) -> str:
    """Fixed significant-digit scientific string rounded outward."""
    q = as_rational(q)
    if q == 0:
        return "0"
    neg = q < 0
    a = -q if neg else q
    e = len(str(a.numerator)) - len(str(a.denominator))
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    scaled = a / Fraction(10) ** (e - digits + 1)
    # magnitude rounding direction flips for negative numbers
    down = floor != neg
    m = scaled.numerator // scaled.denominator
    if not down and m * scaled.denominator != scaled.numerator:
        m += 1
    s = str(m)
    exp = e - digits + 1 + len(s) - 1
    # a carry (999 -> 1000) adds a digit that is always a trailing zero
    s = s[:digits]
    mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{'-' if neg else ''}{mant}e{exp:+d}"
