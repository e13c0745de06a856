"""Radical and trigonometric closed forms for k = 3 and k = 5, in mpmath.

These are cross-checks only; the certified answers come from exact root
isolation.  Two of the published displays do not agree with the profile
they describe, so each of those is kept in two forms: ``*_printed`` is the
display verbatim and the unsuffixed one is the version consistent with
the exact profile.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

DPS = 60


def to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def mpf_to_fraction(x) -> Fraction:
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot convert {x} to a fraction")
    # read the raw mantissa: mpf(x) would round to the ambient precision
    sign, man, exp, _ = x._mpf_
    q = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -q if sign else q


def k3_forms(n: int) -> dict:
    mp = mpmath.mp
    with mpmath.workdps(DPS):
        c = mp.mpf((n - 2) * (2 * n - 3))
        r = mp.sqrt(3 * c)
        den = 2 * (2 * n - 1) * (2 * n - 3)
        t1 = (-c - r) / den
        t2 = (-c + r) / den
        t3 = -mp.mpf(n - 3) / (2 * (2 * n - 3))
        t3_printed = -mp.mpf(n - 2) / (2 * (2 * n - 1))
        s = mp.sqrt(3) * (2 * n - 7) * mp.sqrt(2 * n * n - 7 * n + 6)
        u = mp.mpf(6 * n * n - 27 * n + 30)
        g = (t1 / t2) ** (2 * n - 7)
        h = (u - s) / (u + s)
        fact = mp.factorial(n - 2) ** 2
        # f_{n,3}(t1) / ((n-2)!^2 (2n-7)) with f taken from the t1-substitution display
        f_t1 = -(t1 ** (2 * n - 7)) * 3 * (n - 2) * (u - s) / (2 * (2 * n - 1) ** 2)
        lam = f_t1 / (fact * (2 * n - 7))
        tail = (n - 2) * (3 * (n - 2) * (2 * n - 5) - mp.sqrt(3) * (2 * n - 7) * mp.sqrt(c))
        tail_den = mp.mpf(4) ** (n - 3) * fact * (2 * n - 1) ** 2 * (2 * n - 7)
        lam_printed = ((c + mp.sqrt(c)) / ((2 * n - 1) * (2 * n - 3))) ** (2 * n - 7) * tail / tail_den
        lam_fixed = 3 * ((c + r) / ((2 * n - 1) * (2 * n - 3))) ** (2 * n - 7) * tail / tail_den
        return {
            "t1": +t1, "t2": +t2, "t3": +t3, "t3_printed": +t3_printed,
            "g": +g, "h": +h,
            "lambda": +lam, "lambda_display_fixed": +lam_fixed, "lambda_display_printed": +lam_printed,
        }


def g4_printed():
    with mpmath.workdps(DPS):
        return (13 + 2 * mpmath.sqrt(3)) / 7


def h4_printed():
    with mpmath.workdps(DPS):
        return (59 - 6 * mpmath.sqrt(30)) / 49


def g4_from_definition():
    with mpmath.workdps(DPS):
        return (13 + 2 * mpmath.sqrt(30)) / 7


K3_LAMBDA_EXPR = (
    "3*((n-2)(2n-3)+sqrt(3(n-2)(2n-3)))/((2n-1)(2n-3)))^(2n-7)"
    " * (n-2)(3(n-2)(2n-5)-sqrt(3)(2n-7)sqrt((n-2)(2n-3))) / (4^(n-3) ((n-2)!)^2 (2n-1)^2 (2n-7))"
)
K5_LAMBDA_EXPR = (
    "f_{n,5}(t1)/(((n-3)!)^2 (2n-11)), t1 = -B/(2(2n-1)sqrt(2n-3)),"
    " B = 2 sqrt(5(n-3)) cos(phi/3 - pi/3) + (n-3) sqrt(2n-3)"
)


def _p5(n: int, t):
    return (16 * (2 * n - 1) * (2 * n - 3) ** 2 * (2 * n - 5) ** 2 * (2 * n - 11) * t ** 5
            + 80 * (n - 1) * (n - 3) * (2 * n - 3) * (2 * n - 5) ** 2 * (2 * n - 11) * t ** 4
            + 40 * (n - 2) * (n - 3) * (2 * n - 3) * (2 * n - 5) * (2 * n - 7) * (2 * n - 11) * t ** 3
            + 40 * (n - 2) * (n - 3) ** 2 * (n - 4) * (2 * n - 5) * (2 * n - 11) * t ** 2
            + 5 * (n - 3) ** 2 * (n - 4) ** 2 * (2 * n - 5) * (2 * n - 11) * t
            + (n - 3) ** 2 * (n - 4) ** 2 * (n - 5) ** 2)


def k5_forms(n: int) -> dict:
    mp = mpmath.mp
    with mpmath.workdps(DPS):
        cos_phi = mp.mpf(2 * n - 11) / (2 * n - 5) * mp.sqrt(2 * n - 3) / mp.sqrt(5 * (n - 3))
        sin_phi = mp.mpf(2 * n - 1) / (2 * n - 5) * mp.sqrt(3 * (n - 4)) / mp.sqrt(5 * (n - 3))
        phi = mp.atan2(sin_phi, cos_phi)
        b = mp.sqrt(5 * (n - 3)) / ((2 * n - 1) * mp.sqrt(2 * n - 3))
        z0 = -mp.mpf(n - 3) / (2 * (2 * n - 1))
        t1 = z0 - b * mp.cos(phi / 3 - mp.pi / 3)
        t2 = z0 - b * mp.cos(phi / 3 + mp.pi / 3)
        t3 = z0 + b * mp.cos(phi / 3)
        w = mp.sqrt(5 * (n - 4) * (2 * n - 5)) / (2 * (2 * n - 3) * (2 * n - 5))
        w0 = -mp.mpf(n - 4) / (2 * (2 * n - 3))
        that1, that2 = w0 - w, w0 + w
        s = (2 * n - 1) * mp.sqrt(2 * n - 3)
        B = 2 * mp.sqrt(5 * (n - 3)) * mp.cos(phi / 3 - mp.pi / 3) + (n - 3) * mp.sqrt(2 * n - 3)
        norm = mp.factorial(n - 3) ** 2 * (2 * n - 11)
        # f_{n,5}(t1) with t1 = -B/(2s): (-t1)^(2n-11) p5(t1)
        lam = (B / (2 * s)) ** (2 * n - 11) * _p5(n, -B / (2 * s)) / norm
        bracket = ((n - 3) ** 2 * (n - 4) ** 2 * (n - 5) ** 2
                   + 5 * (n - 3) ** 2 * (n - 4) ** 2 * (2 * n - 5) * (2 * n - 11) * B / (2 * s)
                   - 10 * (n - 2) * (n - 3) ** 2 * (n - 4) * (2 * n - 5) * (2 * n - 11) * B ** 2 / ((2 * n - 1) ** 2 * (2 * n - 3))
                   + 10 * (n - 2) ** 2 * (n - 3) * (2 * n - 5) * (2 * n - 7) * (2 * n - 11) * B ** 3
                   / ((2 * n - 1) ** 3 * (2 * n - 3) * mp.sqrt(2 * n - 3))
                   - 5 * (n - 1) * (n - 3) * (2 * n - 5) ** 2 * (2 * n - 11) * B ** 4 / ((2 * n - 1) ** 4 * (2 * n - 3))
                   + (2 * n - 5) ** 2 * B ** 5 / (2 * (2 * n - 1) ** 4 * mp.sqrt(2 * n - 3)))
        lam_printed = (B / s) ** (2 * n - 11) / mp.mpf(2) ** (2 * n - 11) * bracket / norm

        def q1(t):
            return 4 * (2 * n - 3) * (2 * n - 5) * t ** 2 + 4 * (n - 3) * (2 * n - 5) * t + (n - 3) * (n - 4)

        return {
            "phi": +phi, "tan_phi": sin_phi / cos_phi,
            "t1": +t1, "t2": +t2, "t3": +t3, "that1": +that1, "that2": +that2,
            "B": +B, "lambda": +lam, "lambda_B_expansion_printed": +lam_printed,
            "q1_t1": +q1(t1),
        }
