"""Anchors and invariants for the exact-arithmetic helpers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quantcurve.exactnum import (
    aut_order,
    bernoulli,
    dim_irrep,
    double_factorial,
    partitions_of,
    pochhammer,
    pochhammer_hbar,
    rat_from_str,
    rat_to_str,
)


def test_bernoulli_anchors():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(10) == Fraction(5, 66)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_odd_vanish():
    assert all(bernoulli(k) == 0 for k in range(3, 16, 2))


@given(st.integers(min_value=0, max_value=40))
def test_bernoulli_sum_rule(n):
    # sum_{k<=n} C(n+1,k) B_k = 0 for n >= 1 pins every value recursively
    total = sum(math.comb(n + 1, k) * bernoulli(k) for k in range(n + 1))
    assert total == (1 if n == 0 else 0)


def test_double_factorial_anchors():
    # odd arguments only; evens are rejected rather than silently wrong
    assert double_factorial(-1) == 1
    assert double_factorial(1) == 1
    assert double_factorial(5) == 15
    assert double_factorial(7) == 105
    with pytest.raises(ValueError):
        double_factorial(8)


@given(st.integers(min_value=0, max_value=15))
def test_double_factorial_step(d):
    k = 2 * d + 1
    assert double_factorial(k) == k * double_factorial(k - 2)


def test_partitions_small():
    assert partitions_of(0) == [()]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions_of(5)) == 7
    assert len(partitions_of(10)) == 42


@given(st.integers(min_value=0, max_value=12))
def test_partitions_are_descending_and_sum(m):
    for parts in partitions_of(m):
        assert sum(parts) == m
        assert all(a >= b for a, b in zip(parts, parts[1:]))


def test_partitions_max_part():
    assert partitions_of(5, max_part=2) == [(2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_aut_order():
    assert aut_order(()) == 1
    assert aut_order((3,)) == 1
    assert aut_order((2, 2, 1, 1, 1)) == 12
    assert aut_order((4, 4, 4)) == 6


def test_dim_irrep_anchors():
    # hook lengths by hand: rows (2,1) give hooks 3,1,1
    assert dim_irrep((1,)) == 1
    assert dim_irrep((2, 1)) == 2
    assert dim_irrep((3, 2)) == 5
    assert dim_irrep((2, 2, 1)) == 5
    assert dim_irrep((4, 3, 2, 1)) == 768


@given(st.integers(min_value=1, max_value=8))
def test_dim_irrep_burnside(d):
    # sum of squared dimensions over partitions of d is d!
    assert sum(dim_irrep(lam) ** 2 for lam in partitions_of(d)) == math.factorial(d)


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(Fraction(3), 0) == 1
    assert pochhammer(Fraction(-2), 4) == 0


def test_pochhammer_hbar_at_one():
    # substituting h = 1 turns the rising product (1/h)(1/h+1).. into n!
    for n in range(0, 7):
        coeffs = pochhammer_hbar(n)
        assert sum(coeffs.values()) == math.factorial(n)
        if n:
            assert min(coeffs) == -n and coeffs[-n] == 1


rationals = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=10**6
)


@given(rationals)
def test_rat_str_roundtrip(q):
    assert rat_from_str(rat_to_str(q)) == q


def test_rat_str_formats():
    assert rat_to_str(Fraction(-5, 3)) == "-5/3"
    assert rat_to_str(Fraction(7)) == "7"
    assert rat_from_str("7") == 7
    with pytest.raises(ValueError):
        rat_from_str("3.5")
