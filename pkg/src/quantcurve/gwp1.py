"""Degree markers of the stationary Gromov-Witten theory of the line.

X_d(x, h) is the partition-sum rational function

    X_d = sum over partitions lambda of d of (dim lambda / d!)^2
          prod_{i=1}^{len(lambda)} (x + (i - lambda_i) h) / (x + i h),

a bivariate rational function in (x, h); dim lambda is computed by the hook
length formula.  The whole tower is pinned down by the difference equation

    (x/h) (e^{-h d/dx} - 1) X_d + (1 + x/h)^{-1} e^{h d/dx} X_{d-1} = 0,

where e^{c h d/dx} acts on rational functions as the substitution
x -> x + c h.  Everything is verified by exact cross-multiplication; h is a
polynomial variable, never a number.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactnum import dim_irrep, partitions_of
from .polyseries import HbarLaurent, RationalFunction


def x_d(d: int) -> RationalFunction:
    """The degree-d rational function, with HbarLaurent coefficients."""
    if d < 0:
        raise ValueError("needs d >= 0")
    if d == 0:
        return RationalFunction.from_const(HbarLaurent.const(1))
    out = RationalFunction.from_const(0)
    fact = math.factorial(d)
    for lam in partitions_of(d):
        weight = Fraction(dim_irrep(lam), fact) ** 2
        term = RationalFunction.from_const(weight)
        for i, part in enumerate(lam, start=1):
            shift_num = HbarLaurent({0: Fraction(0), 1: Fraction(i - part)})
            shift_den = HbarLaurent({1: Fraction(i)})
            term = term * RationalFunction(
                [shift_num, HbarLaurent.const(1)], [shift_den, HbarLaurent.const(1)]
            )
        out = out + term
    return out


def shift_x(f: RationalFunction, steps: int) -> RationalFunction:
    """e^{steps * h d/dx} f, the substitution x -> x + steps * h."""
    inner = RationalFunction(
        [HbarLaurent({1: Fraction(steps)}), HbarLaurent.const(1)]
    )
    return f.compose(inner)


def at_h_zero(f: RationalFunction) -> RationalFunction:
    """The h = 0 slice, as a Fraction-coefficient rational function."""

    def slice0(c):
        if isinstance(c, HbarLaurent):
            if c.coeffs and c.min_exp() < 0:
                raise ValueError("negative h power has no h = 0 slice")
            return c.coeffs.get(0, Fraction(0))
        return c

    return RationalFunction(
        [slice0(c) for c in f.num], [slice0(c) for c in f.den]
    )


def verify_recursion(d: int, table: dict | None = None) -> dict:
    """Check the defining difference equation at degree d >= 1 exactly."""
    if d < 1:
        raise ValueError("the recursion starts at d = 1")
    if table is None:
        table = {}
    for k in (d - 1, d):
        if k not in table:
            table[k] = x_d(k)
    h = HbarLaurent.h()
    x_over_h = RationalFunction([HbarLaurent.const(0), HbarLaurent.const(1)], [h])
    drop = shift_x(table[d], -1) - table[d]
    raise_prev = shift_x(table[d - 1], +1)
    inv_factor = RationalFunction([h], [h, HbarLaurent.const(1)])
    res = x_over_h * drop + inv_factor * raise_prev
    return {"d": d, "ok": res.is_zero()}


def burnside_check(d: int) -> bool:
    """sum over lambda of (dim lambda)^2 = d!."""
    return sum(dim_irrep(lam) ** 2 for lam in partitions_of(d)) == math.factorial(d)
