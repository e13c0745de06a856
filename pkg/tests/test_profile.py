import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sobolev_constants.embedding.profile import (
    check_nk,
    direct_sum_value,
    profile_eval,
    profile_from_recurrence,
    profile_k2_t,
    profile_k3,
    profile_k5,
    t_of_a,
    t_power_derivative,
)
from sobolev_constants.ratpoly import Poly
from sobolev_constants.spline import build_extremal_spline

inner_a = st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100)


def test_k0_closed_form():
    for n in range(1, 8):
        p = profile_from_recurrence(n, 0)
        a = Fraction(2, 7)
        assert profile_eval(p, a) == (a * (1 - a)) ** (2 * n - 1) / (math.factorial(n - 1) ** 2 * (2 * n - 1))


def test_known_values():
    assert profile_eval(profile_from_recurrence(2, 1), Fraction(1, 2)) == Fraction(1, 16)
    p = profile_from_recurrence(3, 0)
    assert p.B == Poly([9]) and p.scale == Fraction(1, 180)


@pytest.mark.parametrize("n", range(1, 13))
def test_structure_theorem(n):
    for k in range(min(n, 7)):
        B = profile_from_recurrence(n, k).B
        assert B.degree() == k
        assert B.coeff(0) == (n - k) ** 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.data(), inner_a)
def test_three_routes_agree(n, data, a):
    k = data.draw(st.integers(0, n - 1))
    v = profile_eval(profile_from_recurrence(n, k), a)
    assert v == direct_sum_value(n, k, a)
    assert v == build_extremal_spline(n, k, a).norm_sq


@given(st.integers(2, 8), inner_a)
def test_symmetric_in_a(n, a):
    for k in range(n):
        p = profile_from_recurrence(n, k)
        assert profile_eval(p, a) == profile_eval(p, 1 - a)


def test_explicit_forms_match_recurrence():
    for n in range(3, 13):
        assert profile_k2_t(n) == profile_from_recurrence(n, 2).t_poly
    for n in range(4, 13):
        assert profile_k3(n) == profile_from_recurrence(n, 3)
    for n in range(6, 13):
        assert profile_k5(n) == profile_from_recurrence(n, 5)


def test_quintic_low_term():
    for n in range(6, 10):
        B = profile_k5(n).B * ((n - 3) * (n - 4)) ** 2
        assert B.coeff(0) == (n - 3) ** 2 * (n - 4) ** 2 * (n - 5) ** 2


def test_t_power_derivative_against_direct():
    a = Fraction(3, 11)
    for m in range(1, 7):
        base = (Poly([0, -1, 1])) ** m  # (a^2 - a)^m as a polynomial in a
        for k in range(m + 1):
            assert t_power_derivative(m, k).eval_at(a) == base.derivative(k)(a)


def test_rejections():
    with pytest.raises(ValueError):
        check_nk(1, 1)
    with pytest.raises(ValueError):
        check_nk(0, 0)
    with pytest.raises(ValueError):
        profile_eval(profile_from_recurrence(2, 0), 0)
    with pytest.raises(ValueError):
        profile_k3(3)
    with pytest.raises(ValueError):
        profile_k5(5)
    with pytest.raises(ValueError):
        t_power_derivative(2, 3)


def test_t_of_a():
    assert t_of_a(Fraction(1, 2)) == Fraction(-1, 4)


def test_to_dict_schema():
    d = profile_from_recurrence(5, 3).to_dict()
    assert set(d) == {"n", "k", "B_coeffs", "scale"}
    assert all(isinstance(c, str) for c in d["B_coeffs"])
