"""Extremal splines: Riesz representers of ``f -> f^(k)(a)`` in the space H.

H is the Sobolev space of functions on [0, 1] whose derivatives of order
below n vanish at both ends, normed by the L2 norm of the n-th derivative.
The representer ``g_{n,k}`` is a piecewise polynomial of degree 2n-1 with a
single derivative jump at ``a``; its squared norm is A^2_{n,k}(a).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .ratpoly import PiecewisePoly, Poly, Scalar, as_rational, format_rational, parse_rational


class SplineInvariantError(AssertionError):
    """A constructed spline failed one of its defining conditions."""


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got n={n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must satisfy 0 <= k <= n-1, got n={n}, k={k}")


@dataclass(frozen=True)
class HPoly:
    n: int
    k: int
    a: Fraction
    poly: Poly


def build_h(n: int, k: int, a: Scalar) -> HPoly:
    """The polynomial h_{n,k}(x, a) for a fixed rational ``a``."""
    _check_nk(n, k)
    a = as_rational(a)
    x = Poly.x()
    total = Poly()
    for l in range(n):
        inner = Poly([math.comb(n - 1 + m, m) for m in range(l + 1)])
        c = (-1) ** (n - 1 - l) * math.comb(2 * n - 1 - k, n - 1 - l) * a ** l
        total = total + (x ** (n - 1 - l)) * inner * c
    return HPoly(n, k, a, total)


def _pieces(n: int, k: int, a: Fraction):
    one_minus_x = Poly([1, -1])
    x = Poly.x()
    fact = math.factorial(2 * n - k - 1)
    h_left = build_h(n, k, 1 - a).poly.compose(one_minus_x)
    h_right = build_h(n, k, a).poly
    left = (x ** n) * h_left * (Fraction((-1) ** (n - k - 1), fact) * (1 - a) ** (n - k))
    right = (one_minus_x ** n) * h_right * (Fraction((-1) ** (n - 1), fact) * a ** (n - k))
    return left, right


@dataclass(frozen=True)
class ExtremalSpline:
    n: int
    k: int
    a: Fraction
    g: PiecewisePoly
    norm_sq: Fraction

    def to_json(self) -> str:
        return json.dumps(spline_to_dict(self), indent=2)


def spline_norm_sq(s: ExtremalSpline) -> Fraction:
    return s.g.inner(s.g, s.n)


def check_spline(n: int, k: int, g: PiecewisePoly) -> List[str]:
    """Return the list of violated defining conditions (empty when valid)."""
    problems = []
    a = g.a
    top = 2 * n - 1
    if g.left.degree() > top or g.right.degree() > top:
        problems.append("degree exceeds 2n-1")
    for j in range(n):
        if g.left.derivative(j)(0) != 0:
            problems.append(f"boundary D^{j} g(0) != 0")
        if g.right.derivative(j)(1) != 0:
            problems.append(f"boundary D^{j} g(1) != 0")
    jump_order = 2 * n - k - 1
    for i in range(top + 1):
        jmp = g.jump(i)
        if i == jump_order:
            if jmp != (-1) ** (n - k - 1):
                problems.append(f"jump of D^{i} at a is {jmp}, expected {(-1) ** (n - k - 1)}")
        elif jmp != 0:
            problems.append(f"D^{i} discontinuous at a (jump {jmp})")
    return problems


def build_extremal_spline(n: int, k: int, a: Scalar) -> ExtremalSpline:
    _check_nk(n, k)
    a = as_rational(a)
    if not 0 < a < 1:
        raise ValueError(f"a must lie in (0, 1), got a={a}")
    left, right = _pieces(n, k, a)
    g = PiecewisePoly(a, left, right)
    problems = check_spline(n, k, g)
    if problems:
        raise SplineInvariantError(f"g_{{{n},{k}}} at a={a}: " + "; ".join(problems))
    norm = g.inner(g, n)
    reproduced = left.derivative(k)(a)
    if norm != reproduced:
        raise SplineInvariantError(f"||g||^2 = {norm} but g^({k})(a) = {reproduced}")
    return ExtremalSpline(n, k, a, g, norm)


def reproducing_defect(s: ExtremalSpline, f: Poly) -> Fraction:
    """``(f, g)_H - f^(k)(a)``; zero for every f in H."""
    fn = f.derivative(s.n)
    integral = (fn * s.g.left.derivative(s.n)).integrate(0, s.a) + (
        fn * s.g.right.derivative(s.n)
    ).integrate(s.a, 1)
    return integral - f.derivative(s.k)(s.a)


def piece_identity_check(n: int, k: int, a_values: Sequence[Scalar] = ()) -> bool:
    """Check ``g1 - (-1)^k g2 == (x - a)^(2n-k-1)`` at enough rational a.

    g1, g2 are the pieces rescaled by ``(-1)^(n-k-1) (2n-k-1)!`` and
    ``(-1)^(n-1) (2n-k-1)!``.  Both sides are polynomials in ``a`` of degree
    at most 2n-1, so 2n+2 distinct sample values settle the identity.
    """
    _check_nk(n, k)
    samples = [as_rational(v) for v in a_values] or [Fraction(i, 2 * n + 3) for i in range(1, 2 * n + 3)]
    if len(set(samples)) < 2 * n + 2:
        raise ValueError("need at least 2n+2 distinct sample points")
    return all(piece_identity_at(n, k, a) for a in samples)


def piece_identity_at(n: int, k: int, a: Scalar) -> bool:
    """The piece identity at one breakpoint, as an equality of polynomials in x."""
    _check_nk(n, k)
    a = as_rational(a)
    fact = math.factorial(2 * n - k - 1)
    left, right = _pieces(n, k, a)
    g1 = left * ((-1) ** (n - k - 1) * fact)
    g2 = right * ((-1) ** (n - 1) * fact)
    return g1 - g2 * ((-1) ** k) == Poly([-a, 1]) ** (2 * n - k - 1)


def spline_to_dict(s: ExtremalSpline) -> dict:
    return {
        "n": s.n,
        "k": s.k,
        "a": format_rational(s.a),
        "left_coeffs": [format_rational(c) for c in s.g.left.coeffs],
        "right_coeffs": [format_rational(c) for c in s.g.right.coeffs],
        "norm_sq": format_rational(s.norm_sq),
    }


def spline_from_dict(d: dict) -> ExtremalSpline:
    a = parse_rational(d["a"])
    g = PiecewisePoly(a, Poly(map(parse_rational, d["left_coeffs"])), Poly(map(parse_rational, d["right_coeffs"])))
    return ExtremalSpline(int(d["n"]), int(d["k"]), a, g, parse_rational(d["norm_sq"]))
