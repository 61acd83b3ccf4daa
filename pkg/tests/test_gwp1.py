"""Degree-marker rational functions and their difference equation."""

import math
from fractions import Fraction

import pytest

from quantcurve.gwp1 import at_h_zero, burnside_check, shift_x, verify_recursion, x_d
from quantcurve.polyseries import HbarLaurent, RationalFunction


def H(*pairs):
    return HbarLaurent({e: Fraction(c) for e, c in pairs})


def test_degree_zero_is_one():
    assert x_d(0) == RationalFunction([HbarLaurent.const(1)])


def test_degree_one_closed_form():
    want = RationalFunction(
        [HbarLaurent.const(0), HbarLaurent.const(1)],
        [H((1, 1)), HbarLaurent.const(1)],
    )
    assert x_d(1) == want


def test_degree_two_by_hand():
    # both partitions of 2 give squared dimension 1 and weight 1/4
    x, one = [HbarLaurent.const(0), HbarLaurent.const(1)], HbarLaurent.const(1)
    h = H((1, 1))
    two_h = H((1, 2))
    row = RationalFunction([H((1, -1)), one], [h, one])          # (x-h)/(x+h)
    col = RationalFunction(
        [HbarLaurent.const(0), one], [h, one]
    ) * RationalFunction([h, one], [two_h, one])                  # x(x+h) etc
    want = (row + col) * RationalFunction.from_const(Fraction(1, 4))
    assert x_d(2) == want


def test_h_zero_slice_is_inverse_factorial():
    for d in range(0, 7):
        slice0 = at_h_zero(x_d(d))
        assert slice0 == RationalFunction.from_const(Fraction(1, math.factorial(d)))
        assert burnside_check(d)


def test_difference_equation_small():
    table = {}
    for d in range(1, 4):
        assert verify_recursion(d, table)["ok"]
    assert set(table) == {0, 1, 2, 3}


def test_recursion_needs_positive_degree():
    with pytest.raises(ValueError):
        verify_recursion(0)


def test_shift_roundtrip():
    f = x_d(2)
    assert shift_x(shift_x(f, 1), -1) == f


def test_h_zero_rejects_negative_powers():
    f = RationalFunction([H((-1, 1))], [HbarLaurent.const(1)])
    with pytest.raises(ValueError):
        at_h_zero(f)
