"""A^2_{n,k} as an exact polynomial in t = a^2 - a.

Every profile has the shape ``A^2 = -scale * t^(2n-2k-1) * B(t)`` with
``scale = 1/(((n-k)!)^2 (2n-2k-1))`` and ``deg B = k``.  It is built by the
Legendre recurrence, descending k steps to A^2_{n-k,0} and subtracting
squared Legendre antiderivatives written in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from ..legendre import legendre_antiderivative
from ..ratpoly import Poly, Scalar, as_rational, format_rational

T = Poly.x()
ONE_PLUS_4T = Poly([1, 4])  # (2a - 1)^2 in terms of t


def check_nk(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got n={n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must satisfy 0 <= k <= n-1, got n={n}, k={k}")


def t_of_a(a: Scalar) -> Fraction:
    a = as_rational(a)
    return a * a - a


@dataclass(frozen=True)
class TPowerExpansion:
    """``d^k (t^m) / da^k`` as ``u^parity * sum c[p, j] t^p u^(2j)``, u = 2a-1."""

    m: int
    k: int
    terms: Dict[Tuple[int, int], Fraction] = field(hash=False)

    @property
    def odd(self) -> bool:
        return self.k % 2 == 1

    def even_part_in_t(self) -> Poly:
        """The sum with ``u^2`` replaced by ``1 + 4t`` (odd factor u left out)."""
        out = Poly()
        for (p, j), c in self.terms.items():
            out = out + (T ** p) * (ONE_PLUS_4T ** j) * c
        return out

    def squared_in_t(self) -> Poly:
        r = self.even_part_in_t()
        sq = r * r
        return sq * ONE_PLUS_4T if self.odd else sq

    def eval_at(self, a: Scalar) -> Fraction:
        a = as_rational(a)
        t, u = t_of_a(a), 2 * a - 1
        s = sum((c * t ** p * u ** (2 * j) for (p, j), c in self.terms.items()), Fraction(0))
        return s * u if self.odd else s


@lru_cache(maxsize=None)
def t_power_derivative(m: int, k: int) -> TPowerExpansion:
    if k < 0 or m < 0:
        raise ValueError("m and k must be nonnegative")
    if k > m:
        raise ValueError(f"derivative order must satisfy k <= m, got m={m}, k={k}")
    # terms keyed by (power of t, power of u); d/da: t' = u, u' = 2
    cur: Dict[Tuple[int, int], Fraction] = {(m, 0): Fraction(1)}
    for _ in range(k):
        nxt: Dict[Tuple[int, int], Fraction] = {}
        for (p, q), c in cur.items():
            if p:
                key = (p - 1, q + 1)
                nxt[key] = nxt.get(key, 0) + c * p
            if q:
                key = (p, q - 1)
                nxt[key] = nxt.get(key, 0) + c * 2 * q
        cur = {key: c for key, c in nxt.items() if c}
    par = k % 2
    return TPowerExpansion(m, k, {(p, (q - par) // 2): c for (p, q), c in cur.items()})


@dataclass(frozen=True)
class EmbeddingProfile:
    n: int
    k: int
    B: Poly
    scale: Fraction

    @property
    def t_exponent(self) -> int:
        return 2 * self.n - 2 * self.k - 1

    @property
    def t_poly(self) -> Poly:
        """A^2 as a polynomial in t."""
        return (-self.scale) * (T ** self.t_exponent) * self.B

    @property
    def derivative_factor(self) -> Poly:
        """``m B + t B'``: dA^2/dt = -scale t^(m-1) times this (m - 1 even)."""
        return self.B * self.t_exponent + T * self.B.derivative()

    def value_at_t(self, t: Scalar) -> Fraction:
        t = as_rational(t)
        return -self.scale * t ** self.t_exponent * self.B(t)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "B_coeffs": [format_rational(c) for c in self.B.coeffs],
            "scale": format_rational(self.scale),
        }


def profile_scale(n: int, k: int) -> Fraction:
    return Fraction(1, math.factorial(n - k) ** 2 * (2 * n - 2 * k - 1))


def legendre_square_in_t(m: int, l: int) -> Poly:
    """``(P_m^(-l)(a))^2`` as a polynomial in t."""
    e = t_power_derivative(m, m - l)
    return e.squared_in_t() / math.factorial(m) ** 2


@lru_cache(maxsize=None)
def profile_from_recurrence(n: int, k: int) -> EmbeddingProfile:
    check_nk(n, k)
    base = n - k
    # (a(1-a))^(2b-1) = (-t)^(2b-1) = -t^(2b-1)
    A = -(T ** (2 * base - 1)) / (math.factorial(base - 1) ** 2 * (2 * base - 1))
    for step in range(1, k + 1):
        m = base + step
        # A^2_{m,step} = A^2_{m-1,step-1} - (P_{m-1}^{(step-m)})^2 (2m-1)
        A = A - legendre_square_in_t(m - 1, m - step) * (2 * m - 1)
    scale = profile_scale(n, k)
    B = (A / (-scale)).shift_down(2 * n - 2 * k - 1)
    return EmbeddingProfile(n, k, B, scale)


def profile_eval(p: EmbeddingProfile, a: Scalar) -> Fraction:
    a = as_rational(a)
    if not 0 < a < 1:
        raise ValueError(f"a must lie in (0, 1), got a={a}")
    return p.value_at_t(t_of_a(a))


def direct_sum_value(n: int, k: int, a: Scalar) -> Fraction:
    """A^2 from the one-shot Legendre sum, evaluated in x without any t algebra."""
    check_nk(n, k)
    a = as_rational(a)
    b = n - k
    total = (a * (1 - a)) ** (2 * b - 1) / (math.factorial(b - 1) ** 2 * (2 * b - 1))
    for m in range(b, n):
        v = legendre_antiderivative(m, b).poly(a)
        total -= v * v * (2 * m + 1)
    return total


def profile_k3(n: int) -> EmbeddingProfile:
    """Explicit cubic profile for k = 3, rescaled to the common normalization."""
    if n < 4:
        raise ValueError(f"k=3 profile needs n >= 4, got n={n}")
    cubic = Poly([
        (n - 2) ** 2 * (n - 3) ** 2,
        3 * (n - 2) ** 2 * (2 * n - 3) * (2 * n - 7),
        12 * (n - 1) * (n - 2) * (2 * n - 3) * (2 * n - 7),
        4 * (2 * n - 1) * (2 * n - 3) ** 2 * (2 * n - 7),
    ])
    # printed normalization is 1/((n-2)!^2 (2n-7)); ours uses (n-3)!
    return EmbeddingProfile(n, 3, cubic / (n - 2) ** 2, profile_scale(n, 3))


def profile_k5(n: int) -> EmbeddingProfile:
    if n < 6:
        raise ValueError(f"k=5 profile needs n >= 6, got n={n}")
    quintic = Poly([
        (n - 3) ** 2 * (n - 4) ** 2 * (n - 5) ** 2,
        5 * (n - 3) ** 2 * (n - 4) ** 2 * (2 * n - 5) * (2 * n - 11),
        40 * (n - 2) * (n - 3) ** 2 * (n - 4) * (2 * n - 5) * (2 * n - 11),
        40 * (n - 2) * (n - 3) * (2 * n - 3) * (2 * n - 5) * (2 * n - 7) * (2 * n - 11),
        80 * (n - 1) * (n - 3) * (2 * n - 3) * (2 * n - 5) ** 2 * (2 * n - 11),
        16 * (2 * n - 1) * (2 * n - 3) ** 2 * (2 * n - 5) ** 2 * (2 * n - 11),
    ])
    return EmbeddingProfile(n, 5, quintic / ((n - 3) * (n - 4)) ** 2, profile_scale(n, 5))


def profile_k2_t(n: int) -> Poly:
    """A^2_{n,2} in t as quoted for k = 2, used to cross-check the recurrence."""
    quad = Poly([(n - 2) ** 2, 4 * (n - 1) * (2 * n - 5), 4 * (2 * n - 1) * (2 * n - 5)])
    return -(T ** (2 * n - 5)) * quad / (math.factorial(n - 2) ** 2 * (2 * n - 5))
