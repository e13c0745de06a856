"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  :class:`Poly` stores coefficients in ascending
order and is immutable; the zero polynomial has an empty coefficient tuple
and degree ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

BigRational = Fraction
Scalar = Union[int, Fraction]

NEG_INF = -math.inf


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class Poly:
    """Dense polynomial over Q; ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: Tuple[Fraction, ...] = tuple(c)

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls([value])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar) -> "Poly":
        return cls([intercept, slope])

    # -- basic accessors ----------------------------------------------
    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._c

    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def lowest_degree(self):
        """Index of the first nonzero coefficient (``-inf`` for zero)."""
        for i, c in enumerate(self._c):
            if c != 0:
                return i
        return NEG_INF

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._c])

    def __sub__(self, other) -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly([c * other for c in self._c])
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x == 0:
                continue
            for j, y in enumerate(other._c):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Poly":
        s = as_rational(scalar)
        if s == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly([c / s for c in self._c])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rational(c) for c in self._c)}])"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- calculus -----------------------------------------------------
    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        c = list(self._c)
        for _ in range(order):
            c = [i * c[i] for i in range(1, len(c))]
        return Poly(c)

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self._c)])

    def integrate(self, lo: Scalar, hi: Scalar) -> Fraction:
        lo, hi = as_rational(lo), as_rational(hi)
        if lo > hi:
            raise ValueError(f"integration bounds reversed: lo={lo} > hi={hi}")
        F = self.antiderivative()
        return F(hi) - F(lo)

    def __call__(self, x: Scalar) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(x))`` by Horner's rule."""
        acc = Poly()
        for c in reversed(self._c):
            acc = acc * inner + c
        return acc

    # -- division -----------------------------------------------------
    def divmod(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dd = len(divisor._c) - 1
        lead = divisor._c[-1]
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / lead
            quot[i - dd] = q
            if q:
                for j, dc in enumerate(divisor._c):
                    rem[i - dd + j] -= q * dc
        return Poly(quot), Poly(rem[:dd])

    def __mod__(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[0]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.leading()

    def shift_down(self, power: int) -> "Poly":
        """Exact division by x**power; raises if a low coefficient is nonzero."""
        if any(c != 0 for c in self._c[:power]):
            raise ValueError(f"polynomial is not divisible by x^{power}")
        return Poly(self._c[power:])


def _lift(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly([value])
    return NotImplemented


# -- functional aliases ---------------------------------------------------

def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_derivative(p: Poly, order: int = 1) -> Poly:
    return p.derivative(order)


def poly_eval(p: Poly, x: Scalar) -> Fraction:
    return p(x)


def poly_integrate_interval(p: Poly, lo: Scalar, hi: Scalar) -> Fraction:
    return p.integrate(lo, hi)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def square_free_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial is undefined")
    if p.degree() < 1:
        return Poly([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


@dataclass(frozen=True)
class PiecewisePoly:
    """Two polynomial pieces, ``left`` on [lo, a] and ``right`` on [a, hi]."""

    a: Fraction
    left: Poly
    right: Poly
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(1)

    def __post_init__(self):
        if not (self.lo < self.a < self.hi):
            raise ValueError(f"breakpoint {self.a} must lie strictly inside ({self.lo}, {self.hi})")

    def __call__(self, x: Scalar) -> Fraction:
        x = as_rational(x)
        return self.left(x) if x <= self.a else self.right(x)

    def derivative(self, order: int = 1) -> "PiecewisePoly":
        return PiecewisePoly(self.a, self.left.derivative(order), self.right.derivative(order), self.lo, self.hi)

    def jump(self, order: int) -> Fraction:
        """``D^order(left)(a) - D^order(right)(a)``."""
        return self.left.derivative(order)(self.a) - self.right.derivative(order)(self.a)

    def inner(self, other: "PiecewisePoly", order: int) -> Fraction:
        """Exact ``\\int D^order(self) D^order(other)`` over [lo, hi]."""
        if other.a != self.a or other.lo != self.lo or other.hi != self.hi:
            raise ValueError("piecewise polynomials live on different partitions")
        l = self.left.derivative(order) * other.left.derivative(order)
        r = self.right.derivative(order) * other.right.derivative(order)
        return l.integrate(self.lo, self.a) + r.integrate(self.a, self.hi)


# -- Sturm sequences and real root isolation --------------------------------

@dataclass(frozen=True)
class RootInterval:
    """Closed rational interval ``[lo, hi]`` holding exactly one root.

    A zero-width interval is an exact rational root.  For ``lo < hi`` the
    polynomial is nonzero at both endpoints and changes sign across them.
    """

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi


def sturm_sequence(p: Poly) -> List[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps signs and tames coefficient growth
        seq.append(-(r / abs(r.leading())))
    return [s for s in seq if not s.is_zero()]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(p(x)) for p in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(seq: Sequence[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in the half-open interval (lo, hi]."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def sturm_isolate_roots(p: Poly, lo: Scalar, hi: Scalar) -> List[RootInterval]:
    """Isolate the distinct real roots of ``p`` in the open interval (lo, hi).

    Intervals come back sorted, pairwise disjoint, and each holds exactly
    one root of the square-free part of ``p``.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = as_rational(lo), as_rational(hi)
    if lo >= hi:
        raise ValueError(f"empty search interval ({lo}, {hi})")
    q = square_free_part(p)
    if q.degree() < 1:
        return []
    seq = sturm_sequence(q)

    def open_count(a: Fraction, b: Fraction) -> int:
        return count_roots(seq, a, b) - (1 if q(b) == 0 else 0)

    found: List[RootInterval] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = open_count(a, b)
        if n == 0:
            continue
        if n == 1:
            found.append(_tighten(q, seq, a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            found.append(RootInterval(m, m))
        stack.append((a, m))
        stack.append((m, b))
    found.sort(key=lambda r: r.lo)
    # neighbours from one bisection can share the split point; shrink them apart
    i = 0
    while i + 1 < len(found):
        left, right = found[i], found[i + 1]
        if left.hi < right.lo:
            i += 1
            continue
        if not left.is_exact():
            found[i] = refine_root(q, left, left.width / 2)
        if not right.is_exact():
            found[i + 1] = refine_root(q, right, right.width / 2)
    return found


def _tighten(q: Poly, seq: Sequence[Poly], a: Fraction, b: Fraction) -> RootInterval:
    # (a, b) holds one root; shrink until both endpoints are nonzero.
    while q(a) == 0 or q(b) == 0:
        m = (a + b) / 2
        if q(m) == 0:
            return RootInterval(m, m)
        if count_roots(seq, a, m) - (1 if q(m) == 0 else 0) == 1:
            b = m
        else:
            a = m
    return RootInterval(a, b)


def refine_root(p: Poly, iv: RootInterval, width: Scalar) -> RootInterval:
    """Bisect an isolating interval of ``p`` until it is at most ``width`` wide."""
    width = as_rational(width)
    if width <= 0:
        raise ValueError("target width must be positive")
    if iv.is_exact():
        return iv
    lo, hi = iv.lo, iv.hi
    slo = _sign(p(lo))
    if slo == 0 or slo == _sign(p(hi)):
        raise ValueError("interval endpoints do not bracket a simple root of p")
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = _sign(p(m))
        if sm == 0:
            return RootInterval(m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    return RootInterval(lo, hi)


# -- rational square roots ---------------------------------------------------

def sqrt_bounds(x: Fraction, bits: int = 128) -> Tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits``."""
    x = as_rational(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << bits
    # floor(sqrt(x * scale^2)) via integer square root of a floor
    num = x.numerator * scale * scale
    r = math.isqrt(num // x.denominator)
    lo = Fraction(r, scale)
    hi = lo if lo * lo == x else Fraction(r + 1, scale)
    return lo, hi
