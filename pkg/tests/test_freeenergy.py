"""Genus-expanded generating polynomials and their structure checks."""

from fractions import Fraction

from quantcurve import catalan
from quantcurve.exactnum import bernoulli
from quantcurve.freeenergy import (
    F_coeff,
    F_diag,
    airy_highest_poly,
    check_properties,
    chi_mgn,
    f03,
    f11,
    laplace_coefficients,
    laplace_match,
    t_of_x_series,
)
from quantcurve.polyseries import LaurentPoly, TruncSeries


def test_euler_characteristic_anchors():
    assert chi_mgn(0, 3) == 1
    assert chi_mgn(0, 4) == -1
    assert chi_mgn(0, 5) == 2
    assert chi_mgn(1, 1) == Fraction(-1, 12)
    assert chi_mgn(1, 2) == Fraction(1, 12)
    assert chi_mgn(2, 1) == Fraction(1, 120)


def test_euler_characteristic_bernoulli_column():
    # one marked point: zeta(1 - 2g) = -B_{2g} / 2g
    for g in range(1, 6):
        assert chi_mgn(g, 1) == -bernoulli(2 * g) / (2 * g)


def test_euler_characteristic_point_removal():
    # forgetting a point scales chi by 2 - 2g - n
    for g in range(0, 3):
        for n in range(1, 5):
            if 2 * g - 2 + n <= 0:
                continue
            assert chi_mgn(g, n + 1) == (2 - 2 * g - n) * chi_mgn(g, n)


def test_one_point_genus_one_polynomial():
    want = LaurentPoly(
        1,
        {
            (-3,): Fraction(-1, 384),
            (-1,): Fraction(3, 128),
            (0,): Fraction(1, 24),
            (1,): Fraction(3, 128),
            (3,): Fraction(-1, 384),
        },
    )
    assert f11() == want
    assert F_coeff(1, 1) == want
    assert F_diag(1, 1) == want


def test_three_point_genus_zero_base():
    assert F_coeff(0, 3) == f03()
    # corner coefficients of the (0,3) polynomial
    assert f03().coefficient_of((-1, -1, -1)) == Fraction(-1, 16)
    assert f03().coefficient_of((1, 1, 1)) == Fraction(-1, 16)
    assert f03().coefficient_of((0, 0, 0)) == Fraction(-1, 8)


def test_polynomials_are_symmetric():
    assert F_coeff(0, 4).is_symmetric()
    assert F_coeff(1, 2).is_symmetric()


def test_reciprocity_and_vanishing_at_minus_one():
    for g, n in [(0, 3), (0, 4), (1, 1), (1, 2)]:
        f = F_coeff(g, n)
        assert f.reciprocal_vars() == f
        assert f.eval_all([Fraction(-1)] * n) == 0


def test_highest_part_is_homogeneous():
    for g, n in [(0, 3), (1, 1), (1, 2), (0, 4)]:
        top = airy_highest_poly(g, n)
        assert top.is_homogeneous()
        assert top.total_degree() == 3 * (2 * g - 2 + n)


def test_property_report_shape():
    rep = check_properties(1, 1)
    assert set(rep) == {
        "degree",
        "reciprocity",
        "vanish_at_minus_one",
        "diagonal_euler",
        "highest_airy",
    }
    assert all(rep.values())


def test_property_checks_small_grid():
    for g, n in [(0, 3), (0, 4), (1, 1), (1, 2)]:
        assert all(check_properties(g, n).values())


def test_inverse_variable_series():
    t = t_of_x_series(8)
    assert t.coefficient(0) == -1
    assert t.coefficient(1) == -2
    # t(x)^2 (x - 2) = x + 2, written with both sides scaled by s = 1/x
    one = TruncSeries.one(t.trunc)
    lhs = t * t * (one - TruncSeries(t.trunc, {1: Fraction(2)}))
    rhs = one + TruncSeries(t.trunc, {1: Fraction(2)})
    assert lhs.coeffs == rhs.coeffs


def test_laplace_coefficients_anchor():
    vals = laplace_coefficients(0, 3, 4)
    key = (2, 1, 1)
    want = Fraction(catalan.catalan_general(0, 3, key), 2 * 1 * 1)
    assert vals[key] == want


def test_laplace_match_small():
    assert laplace_match(0, 3, 4)
    assert laplace_match(1, 1, 4)
