"""Metric ribbon graph counts read off the polynomial coefficients."""

import itertools
from fractions import Fraction

import pytest

from quantcurve.freeenergy import chi_mgn
from quantcurve.lattice import (
    base_from_F,
    euler_consistency,
    harer_zagier_chi,
    lattice_N,
    t_of_q_series,
)


def test_three_boundary_sphere_is_indicator():
    for p in itertools.product(range(1, 7), repeat=3):
        want = 1 if sum(p) % 2 == 0 else 0
        assert lattice_N(0, 3, p) == want


def test_one_boundary_torus_closed_form():
    # even perimeter 2k: (p^2 - 4)/48; odd perimeters are excluded by parity
    for p in range(2, 12, 2):
        assert lattice_N(1, 1, (p,)) == Fraction(p * p - 4, 48)
    assert lattice_N(1, 1, (3,)) == 0


def test_four_boundary_sphere_even_form():
    # all-even perimeters: quarter sum of squares minus one
    for p in itertools.product((2, 4, 6), repeat=4):
        want = Fraction(sum(x * x for x in p), 4) - 1
        assert lattice_N(0, 4, p) == want


def test_counts_are_symmetric():
    assert lattice_N(1, 2, (2, 4)) == lattice_N(1, 2, (4, 2))
    assert lattice_N(0, 4, (2, 2, 4, 6)) == lattice_N(0, 4, (6, 4, 2, 2))


def test_odd_total_vanishes():
    assert lattice_N(1, 2, (1, 2)) == 0
    assert lattice_N(0, 4, (1, 1, 1, 2)) == 0


def test_agrees_with_series_route():
    # same numbers from the q-expansion of the closed-form polynomials
    for g, n in [(0, 3), (1, 1), (1, 2)]:
        base = base_from_F(g, n, 4)
        for p, v in base.items():
            assert lattice_N(g, n, p) == v


def test_q_substitution_series():
    t = t_of_q_series(6)
    assert t.coefficient(0) == -1
    assert all(t.coefficient(k) == -2 for k in range(1, 7))


def test_euler_consistency_reports():
    for g, n in [(0, 3), (1, 1), (1, 2), (0, 4)]:
        rep = euler_consistency(g, n)
        assert rep["ok"], rep
        assert rep["chi"] == chi_mgn(g, n)


def test_chi_alias():
    for g, n in [(0, 3), (1, 1), (2, 1)]:
        assert harer_zagier_chi(g, n) == chi_mgn(g, n)


def test_unstable_rejected():
    with pytest.raises(ValueError):
        lattice_N(0, 2, (2, 2))
    with pytest.raises(ValueError):
        lattice_N(0, 3, (0, 2, 2))
