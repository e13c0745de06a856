"""Shifted Legendre polynomials on [0, 1] and their antiderivatives.

Both are built straight from the Rodrigues formula
``P_m = (1/m!) D^m (x^2 - x)^m`` and ``P_m^(-l) = (1/m!) D^(m-l) (x^2 - x)^m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ratpoly import Poly

_T = Poly([0, -1, 1])  # x^2 - x


@dataclass(frozen=True)
class ShiftedLegendre:
    m: int
    poly: Poly


@dataclass(frozen=True)
class LegendreAntiderivative:
    m: int
    l: int
    poly: Poly


@lru_cache(maxsize=None)
def _rodrigues(m: int, order: int) -> Poly:
    return (_T ** m).derivative(order) / math.factorial(m)


def shifted_legendre(m: int) -> ShiftedLegendre:
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got m={m}")
    return ShiftedLegendre(m, _rodrigues(m, m))


def legendre_antiderivative(m: int, l: int) -> LegendreAntiderivative:
    """Antiderivative of order ``l`` of ``P_m`` (degree ``m + l``)."""
    if m < 0 or l < 0:
        raise ValueError(f"m and l must be nonnegative, got m={m}, l={l}")
    if l > m:
        raise ValueError(f"antiderivative order must satisfy l <= m, got m={m}, l={l}")
    return LegendreAntiderivative(m, l, _rodrigues(m, m - l))


def legendre_norm_sq(m: int) -> Fraction:
    p = shifted_legendre(m).poly
    value = (p * p).integrate(0, 1)
    expected = Fraction(1, 2 * m + 1)
    if value != expected:
        raise ArithmeticError(f"||P_{m}||^2 = {value}, expected {expected}")
    return value
