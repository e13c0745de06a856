import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sobolev_constants.ratpoly import PiecewisePoly, Poly
from sobolev_constants.spline import (
    SplineInvariantError,
    build_extremal_spline,
    build_h,
    check_spline,
    piece_identity_at,
    piece_identity_check,
    reproducing_defect,
    spline_from_dict,
    spline_norm_sq,
    spline_to_dict,
)

X = Poly.x()
A_GRID = [Fraction(1, 7), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)]
inner_a = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50)


def test_hat_function():
    s = build_extremal_spline(1, 0, Fraction(1, 2))
    assert s.g.left == X / 2
    assert s.g.right == (1 - X) / 2
    assert s.norm_sq == Fraction(1, 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_theorem_conditions_on_grid(n):
    for k in range(n):
        for a in A_GRID:
            s = build_extremal_spline(n, k, a)
            assert check_spline(n, k, s.g) == []
            assert s.g.jump(2 * n - k - 1) == (-1) ** (n - k - 1)
            assert piece_identity_at(n, k, a)


def test_piece_identity_default_samples():
    assert all(piece_identity_check(n, k) for n in range(1, 6) for k in range(n))


def test_piece_identity_needs_enough_samples():
    with pytest.raises(ValueError):
        piece_identity_check(3, 1, [Fraction(1, 2)])


def test_h_is_polynomial_in_x():
    h = build_h(3, 1, Fraction(1, 3))
    assert h.poly.degree() <= 2


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.data(), inner_a)
def test_reproducing_property(n, data, a):
    k = data.draw(st.integers(min_value=0, max_value=n - 1))
    s = build_extremal_spline(n, k, a)
    q = Poly(data.draw(st.lists(st.integers(-5, 5), min_size=1, max_size=4)))
    f = (X * (1 - X)) ** n * q  # every such f lies in H
    assert reproducing_defect(s, f) == 0
    assert spline_norm_sq(s) == s.g.left.derivative(k)(a)


def test_check_spline_catches_mutation():
    s = build_extremal_spline(3, 1, Fraction(1, 3))
    bad = PiecewisePoly(s.a, s.g.left + Poly.monomial(5, 1), s.g.right)
    assert check_spline(3, 1, bad)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        build_extremal_spline(2, 0, 0)
    with pytest.raises(ValueError):
        build_extremal_spline(2, 0, 1)
    with pytest.raises(ValueError):
        build_extremal_spline(1, 1, Fraction(1, 2))


def test_invariant_error_is_assertion():
    assert issubclass(SplineInvariantError, AssertionError)


def test_json_round_trip_bit_exact():
    s = build_extremal_spline(4, 2, Fraction(2, 7))
    text = s.to_json()
    back = spline_from_dict(json.loads(text))
    assert back == s
    assert back.to_json() == text
    d = spline_to_dict(s)
    assert set(d) == {"n", "k", "a", "left_coeffs", "right_coeffs", "norm_sq"}
    assert all(isinstance(c, str) for c in d["left_coeffs"] + d["right_coeffs"])
