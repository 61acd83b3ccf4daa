"""Residue recursion on rational spectral curves.

Anchors: the classical table of psi-class averages, the closed genus-0
multinomial, and the string and dilaton moves, all of which are
independent of the residue computation that produces them here.
"""

import math
from fractions import Fraction

import pytest

from quantcurve.exactnum import partitions_of
from quantcurve.polyseries import LaurentPoly
from quantcurve.trres import (
    W_coeff,
    airy_curve,
    catalan_curve,
    intersection_numbers,
    kernel_prefactor,
    psi_intersection,
)
from quantcurve.freeenergy import F_coeff


def test_classical_anchors():
    assert psi_intersection(0, (0, 0, 0)) == 1
    assert psi_intersection(1, (1,)) == Fraction(1, 24)
    assert psi_intersection(1, (0, 2)) == Fraction(1, 24)
    assert psi_intersection(1, (1, 1)) == Fraction(1, 24)
    assert psi_intersection(0, (0, 0, 0, 1)) == 1
    assert psi_intersection(2, (4,)) == Fraction(1, 1152)
    assert psi_intersection(2, (0, 5)) == Fraction(1, 1152)


def test_dimension_mismatch_is_zero():
    assert psi_intersection(1, (0,)) == 0
    assert psi_intersection(0, (1, 1, 1)) == 0


def test_genus_zero_multinomial():
    # <tau_{d_1}..tau_{d_n}>_0 = (n-3)! / prod d_i! on the dimension shell
    for n in range(3, 7):
        for lam in partitions_of(n - 3, max_part=n - 3):
            dvec = tuple(lam) + (0,) * (n - len(lam))
            want = Fraction(math.factorial(n - 3))
            for d in dvec:
                want /= math.factorial(d)
            assert psi_intersection(0, dvec) == want


def test_string_equation():
    # appending tau_0 lowers one index each way
    cases = [(1, (1, 1)), (1, (0, 2)), (2, (4,)), (0, (0, 0, 0, 1))]
    for g, dvec in cases:
        lhs = psi_intersection(g, (0,) + dvec)
        rhs = sum(
            psi_intersection(g, dvec[:i] + (dvec[i] - 1,) + dvec[i + 1 :])
            for i in range(len(dvec))
            if dvec[i] > 0
        )
        assert lhs == rhs


def test_dilaton_equation():
    cases = [(1, (1,)), (2, (4,)), (1, (1, 1)), (0, (0, 0, 0))]
    for g, dvec in cases:
        lhs = psi_intersection(g, (1,) + dvec)
        assert lhs == (2 * g - 2 + len(dvec)) * psi_intersection(g, dvec)


def test_intersection_table_is_full_shell():
    table = intersection_numbers(1, 2)
    assert table == {(1, 1): Fraction(1, 24), (2, 0): Fraction(1, 24)}
    assert intersection_numbers(2, 1) == {(4,): Fraction(1, 1152)}


def test_parabolic_curve_forms():
    a = airy_curve()
    assert W_coeff(a, 0, 3) == LaurentPoly(3, {(0, 0, 0): Fraction(-1, 16)})
    assert W_coeff(a, 1, 1) == LaurentPoly(1, {(2,): Fraction(-1, 128)})
    assert kernel_prefactor(a) == LaurentPoly(1, {(4,): Fraction(1, 64)})


def test_vertex_count_curve_one_hole():
    want = LaurentPoly(
        1,
        {
            (-4,): Fraction(1, 128),
            (-2,): Fraction(-3, 128),
            (0,): Fraction(3, 128),
            (2,): Fraction(-1, 128),
        },
    )
    assert W_coeff(catalan_curve(), 1, 1) == want


def test_unstable_pairs_rejected():
    c = catalan_curve()
    with pytest.raises(ValueError):
        W_coeff(c, 0, 1)
    with pytest.raises(ValueError):
        W_coeff(c, 0, 2)


def test_forms_from_derivatives_of_polynomials():
    # the (g,n) form equals the n-fold derivative of the (g,n) polynomial
    for g, n in [(1, 1), (0, 4)]:
        f = F_coeff(g, n)
        for i in range(n):
            f = f.partial_derivative(i)
        assert W_coeff(catalan_curve(), g, n) == f


def test_forms_are_symmetric():
    assert W_coeff(catalan_curve(), 0, 4).is_symmetric()
    assert W_coeff(airy_curve(), 1, 2).is_symmetric()
