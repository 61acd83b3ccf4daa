"""Acceptance gate: one test per shipped guarantee, each with a wall-clock cap.

Every check is exact rational arithmetic; the caps are generous on a
laptop and exist to catch accidental complexity regressions, not to
benchmark.  Run with -v to get one pass/fail line per criterion.
"""

import itertools
import math
import time
from contextlib import contextmanager
from fractions import Fraction

from quantcurve import catalan, freeenergy, gwp1, hurwitz, lattice, trres, wkb
from quantcurve.exactnum import partitions_of
from quantcurve.polyseries import LaurentPoly


@contextmanager
def capped(seconds):
    t0 = time.monotonic()
    yield
    elapsed = time.monotonic() - t0
    assert elapsed < seconds, f"took {elapsed:.1f}s, cap {seconds}s"


def stable_pairs(lo, hi):
    out = []
    for g in range(0, hi // 2 + 2):
        for n in range(1, hi + 3):
            if lo <= 2 * g - 2 + n <= hi:
                out.append((g, n))
    return out


def test_01_intersection_number_anchors():
    with capped(5):
        assert trres.psi_intersection(0, (0, 0, 0)) == 1
        assert trres.psi_intersection(1, (1,)) == Fraction(1, 24)
        assert trres.psi_intersection(1, (0, 2)) == Fraction(1, 24)
        assert trres.psi_intersection(1, (1, 1)) == Fraction(1, 24)
        assert trres.psi_intersection(0, (0, 0, 0, 1)) == 1


def test_02_rainbow_identity_through_m4():
    with capped(60):
        for m in range(1, 5):
            lhs, rhs = wkb.rainbow_check(m)
            assert lhs == rhs, m
        assert wkb.rainbow_check(2)[0] == Fraction(5, 16)


def test_03_nine_exponential_coefficients():
    want = [
        Fraction(-5, 48),
        Fraction(5, 64),
        Fraction(-1105, 9216),
        Fraction(565, 2048),
        Fraction(-82825, 98304),
        Fraction(19675, 6144),
        Fraction(-1282031525, 88080384),
        Fraction(80727925, 1048576),
        Fraction(-1683480621875, 3623878656),
    ]
    with capped(5):
        got = [wkb.airy_wkb_coefficient(m) for m in range(1, 10)]
        assert got == want


def test_04_polynomial_property_checks():
    with capped(120):
        for g, n in stable_pairs(1, 4):
            report = freeenergy.check_properties(g, n)
            assert all(report.values()), (g, n, report)


def test_05_descending_expansion_matches_counts():
    with capped(120):
        for g, n in stable_pairs(1, 3):
            assert freeenergy.laplace_match(g, n, 6), (g, n)


def test_06_forms_equal_polynomial_derivatives():
    with capped(60):
        curve = trres.catalan_curve()
        for g, n in stable_pairs(2, 3):
            f = freeenergy.F_coeff(g, n)
            for i in range(n):
                f = f.partial_derivative(i)
            assert trres.W_coeff(curve, g, n) == f, (g, n)
        # one-hole torus form: -(1/128) (t^2 - 1)^3 / t^4
        t2m1 = LaurentPoly(1, {(2,): Fraction(1), (0,): Fraction(-1)})
        cube = t2m1 * t2m1 * t2m1
        want = cube.exact_div_monomial((4,), Fraction(-128))
        assert trres.W_coeff(curve, 1, 1) == want


def test_07_transport_hierarchy_m3_to_m5():
    with capped(60):
        report = wkb.catalan_wkb_check(5)
        for m in (3, 4, 5):
            assert report[m], report


def test_08_wave_function_identity_and_shadow():
    with capped(60):
        report = wkb.catalan_psi_check(order=8, level_max=3)
        assert report["series_match"]
        assert report["shadow_match"]


def test_09_lattice_counts_vs_series_route():
    with capped(60):
        for g, n in [(0, 3), (1, 1), (0, 4), (1, 2)]:
            base = lattice.base_from_F(g, n, 6)
            for p, v in base.items():
                assert lattice.lattice_N(g, n, p) == v, (g, n, p)
        for p in itertools.product(range(1, 7), repeat=3):
            if sum(p) % 2 == 0:
                assert lattice.lattice_N(0, 3, p) == 1, p


def test_10_cover_counts_and_operator_checks():
    with capped(300):
        # descent vs direct factorization; genus up to 3 exercises every
        # branch of the recursion twice over
        for g in range(0, 4):
            for total in range(1, 6):
                for mu in partitions_of(total):
                    lhs = hurwitz.hurwitz(1, g, len(mu), mu)
                    assert lhs == hurwitz.brute_oracle(g, len(mu), mu), (g, mu)
        for r in (1, 2, 3):
            assert hurwitz.qc_series_check(r, 4, 2)["ok"], r
        assert hurwitz.q_operator_check(1, 3, 2)["ok"]


def test_11_degree_marker_recursion():
    with capped(30):
        table = {}
        for d in range(1, 7):
            assert gwp1.verify_recursion(d, table)["ok"], d
        x_over = gwp1.x_d(1)
        from quantcurve.polyseries import HbarLaurent, RationalFunction

        want = RationalFunction(
            [HbarLaurent.const(0), HbarLaurent.const(1)],
            [HbarLaurent.h(), HbarLaurent.const(1)],
        )
        assert x_over == want
        for d in range(0, 7):
            assert gwp1.at_h_zero(table.get(d) or gwp1.x_d(d)) == (
                RationalFunction.from_const(Fraction(1, math.factorial(d)))
            )


def test_12_operator_geometry_table():
    u, w = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    one = LaurentPoly.const(2, 1)
    two = LaurentPoly.const(2, 2)
    charts = {
        "airy": w * w - u ** 5,
        "catalan": u ** 4 - u * w + w * w,
        "hypergeometric": w * w + u * (u - two) * w * Fraction(4)
        - u * u * (u - one) * Fraction(4),
        "simple-pole": w * w - u * (u + one) * w + u ** 3 * (u + one),
    }
    genus = {"airy": 0, "catalan": 0, "hypergeometric": 0,
             "simple-pole": 0, "elliptic": 1}
    points = {
        "airy": {"infinity": ("irregular", Fraction(3, 2))},
        "catalan": {"infinity": ("irregular", Fraction(2))},
        "hypergeometric": {
            "0": ("regular", None),
            "1": ("regular", None),
            "infinity": ("regular", None),
        },
        "simple-pole": {
            "-1": ("regular", None),
            "infinity": ("irregular", Fraction(1)),
        },
        "elliptic": {
            "1": ("regular", None),
            "-1": ("regular", None),
            "infinity": ("irregular", Fraction(1)),
        },
    }
    with capped(5):
        by_name = {spec.name: wkb.analyze(spec) for spec in wkb.catalog()}
        assert set(by_name) == set(genus)
        for name, report in by_name.items():
            assert report["geometric_genus"] == genus[name], name
            assert report["points"] == points[name], name
            if name in charts:
                assert report["infinity_chart"] == charts[name], name
        assert not by_name["airy"]["nonsingular"]
        assert by_name["elliptic"]["nonsingular"]
