"""Free energies of the Catalan spectral curve.

F_{g,n}(t_1, ..., t_n) is the n-variable generating function whose
(mu_1, ..., mu_n) coefficient in the 1/x-expansion is C_{g,n}(mu)/(mu_1
... mu_n), rewritten in the normalization coordinate t with

    x = 2 + 4/(t^2 - 1),    t(x) = -1 - 2/x - 2/x^2 - ... as x -> infinity.

In the stable range these are Laurent polynomials.  They are produced here
by a differential recursion on 2g - 2 + n: the t_1-derivative of F_{g,n}
is an explicit combination of lower free energies, and F_{g,n} itself is
recovered by integrating from t_1 = -1 (all F vanish at t_i = -1).

The recursion terms, writing D = (t_1^2-1)^3/t_1^2 and m for 2g-2+n:

  dF_{g,n}/dt_1 =
    -1/16 sum_j [ t_j/(t_1^2-t_j^2) (D d_1 F_{g,n-1}(t_1, rest)
                                     - D|_{t_j} d_j F_{g,n-1}(t_2..t_n)) ]
    -1/16 sum_j (t_1^2-1)^2/t_1^2 d_1 F_{g,n-1}(t_1, rest)
    -1/32 D [d_u d_v F_{g-1,n+1}(u, v, rest)]|_{u=v=t_1}
    -1/32 D sum_{stable} d_1 F_{g_1,|I|+1}(t_1, t_I) d_1 F_{g_2,|J|+1}(t_1, t_J)

where "stable" means 2g_1 + |I| - 1 > 0 and 2g_2 + |J| - 1 > 0, so only
Laurent-polynomial free energies ever appear on the right.  The division
by (t_1^2 - t_j^2) is exact one j at a time: the only source of a pole at
t_1 = -t_j is the j-th bracket, and the bracket vanishes there.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactnum import bernoulli, double_factorial
from .polyseries import LaurentPoly, TruncSeries, substitute_series

__all__ = [
    "f11",
    "f03",
    "F_coeff",
    "F_diag",
    "chi_mgn",
    "airy_highest_poly",
    "check_properties",
    "t_of_x_series",
    "laplace_coefficients",
    "laplace_match",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


def f11() -> LaurentPoly:
    """F_{1,1}(t) = -(1/384) (t+1)^4 (t - 4 + 1/t) / t^2."""
    t = LaurentPoly.var(1, 0)
    one = LaurentPoly.const(1, 1)
    p = (t + one) ** 4 * (t * t - t * 4 + one)
    return p.exact_div_monomial((3,), Fraction(-384))


def f03() -> LaurentPoly:
    """F_{0,3} = -(1/16) (t1+1)(t2+1)(t3+1) (1 + 1/(t1 t2 t3))."""
    one = LaurentPoly.const(3, 1)
    p = one
    for i in range(3):
        p = p * (LaurentPoly.var(3, i) + one)
    q = one + LaurentPoly.monomial(3, (-1, -1, -1), 1)
    return p * q * Fraction(-1, 16)


_F_CACHE: dict[tuple[int, int], LaurentPoly] = {}


def F_coeff(g: int, n: int) -> LaurentPoly:
    """The Laurent polynomial F_{g,n} for stable (g, n)."""
    if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
        raise ValueError(f"({g},{n}) is not stable")
    key = (g, n)
    hit = _F_CACHE.get(key)
    if hit is None:
        if key == (1, 1):
            hit = f11()
        elif key == (0, 3):
            hit = f03()
        else:
            hit = _recurse(g, n)
        _F_CACHE[key] = hit
    return hit


def _stable(g: int, m: int) -> bool:
    return 2 * g - 2 + m > 0


def _d_big(n: int) -> LaurentPoly:
    """(t_1^2 - 1)^3 / t_1^2 as an arity-n Laurent polynomial."""
    t2 = LaurentPoly.var(n, 0, 2)
    return (t2 - LaurentPoly.const(n, 1)) ** 3 * LaurentPoly.var(n, 0, -2)


def _recurse(g: int, n: int) -> LaurentPoly:
    rest = list(range(1, n))
    D = _d_big(n)
    rhs = LaurentPoly.zero(n)

    if n >= 2:
        d_small = (
            LaurentPoly.var(n, 0, 2) - LaurentPoly.const(n, 1)
        ) ** 2 * LaurentPoly.var(n, 0, -2)
        lower = F_coeff(g, n - 1)
        d_lower = lower.partial_derivative(0)
        full = lower.embed(n, rest)  # F_{g,n-1}(t_2, ..., t_n)
        for j in rest:
            keep = [0] + [k for k in rest if k != j]
            with_t1 = d_lower.embed(n, keep)  # d_1 F_{g,n-1}(t_1, rest\j)
            bracket = D * with_t1 - _d_big_at(n, j) * full.partial_derivative(j)
            bracket = bracket * LaurentPoly.var(n, j)
            rhs = rhs + bracket.exact_div_var_binomial(0, j, 2, _F1) * Fraction(-1, 16)
            rhs = rhs + d_small * with_t1 * Fraction(-1, 16)

    if g >= 1:
        up = F_coeff(g - 1, n + 1)
        mixed = up.partial_derivative(0).partial_derivative(1).subs_var(1, 0)
        mixed = mixed.drop_var(1)  # now (t_1, t_2, ..., t_n)
        rhs = rhs + D * mixed * Fraction(-1, 32)

    for g1 in range(0, g + 1):
        g2 = g - g1
        for size in range(0, n):
            for I in itertools.combinations(rest, size):
                J = [k for k in rest if k not in I]
                if not (_stable(g1, len(I) + 1) and _stable(g2, len(J) + 1)):
                    continue
                a = F_coeff(g1, len(I) + 1).partial_derivative(0).embed(n, [0, *I])
                b = F_coeff(g2, len(J) + 1).partial_derivative(0).embed(n, [0, *J])
                rhs = rhs + D * a * b * Fraction(-1, 32)

    out = _integrate_from_minus1(rhs)
    if not out.is_symmetric():
        raise ArithmeticError(f"F_({g},{n}) is not symmetric")
    return out


def _d_big_at(n: int, j: int) -> LaurentPoly:
    t2 = LaurentPoly.var(n, j, 2)
    return (t2 - LaurentPoly.const(n, 1)) ** 3 * LaurentPoly.var(n, j, -2)


def _integrate_from_minus1(p: LaurentPoly) -> LaurentPoly:
    """Integrate dt_1 from -1 to t_1.  The integrand must have no 1/t_1
    term; a log would mean the recursion produced garbage."""
    anti: dict = {}
    for e, c in p.terms.items():
        if e[0] == -1:
            raise ArithmeticError("1/t_1 term in a free-energy integrand")
        k = (e[0] + 1,) + e[1:]
        anti[k] = c / (e[0] + 1)
    q = LaurentPoly(p.arity, anti)
    return q - q.subs_value(0, Fraction(-1))


def F_diag(g: int, n: int) -> LaurentPoly:
    """F_{g,n}(t, t, ..., t) as a one-variable Laurent polynomial."""
    return F_coeff(g, n).embed(1, [0] * n)


# ---------------------------------------------------------------------------
# the five structural properties


def chi_mgn(g: int, n: int) -> Fraction:
    """Orbifold Euler characteristic of the moduli space M_{g,n}:

        chi(M_{g,1}) = zeta(1-2g) = -B_{2g}/(2g)  for g >= 1,
        chi(M_{g,n+1}) = (2 - 2g - n) chi(M_{g,n}),

    equivalently (-1)^(n-1) (2g-3+n)!/(2g-2)! zeta(1-2g), with the genus
    zero degeneration chi(M_{0,n}) = (-1)^(n-3) (n-3)!."""
    if g == 0:
        if n < 3:
            raise ValueError("need n >= 3 in genus zero")
        out = _F1 * (-1) ** (n - 3)
        for k in range(1, n - 2):
            out *= k
        return out
    if n < 1:
        raise ValueError("need n >= 1 for g >= 1")
    zeta = -bernoulli(2 * g) / (2 * g)
    num = _F1 * (-1) ** (n - 1)
    for k in range(2 * g - 1, 2 * g - 2 + n):  # (2g-3+n)!/(2g-2)!
        num *= k
    return num * zeta


def airy_highest_poly(g: int, n: int) -> LaurentPoly:
    """The homogeneous polynomial the top-degree part of F_{g,n} must equal:

        (-1)^n / 2^(2g-2+n) * sum over d_1 + ... + d_n = 3g-3+n of
        <tau_{d_1} ... tau_{d_n}> prod |2 d_i - 1|!! (t_i/2)^(2 d_i + 1).
    """
    from .trres import intersection_numbers

    table = intersection_numbers(g, n)
    total = 3 * g - 3 + n
    out: dict = {}
    front = Fraction((-1) ** n, 2 ** (2 * g - 2 + n))
    for comp in _compositions(total, n):
        val = table.get(tuple(sorted(comp, reverse=True)))
        if not val:
            continue
        c = front * val
        for d in comp:
            c *= Fraction(double_factorial(abs(2 * d - 1)), 2 ** (2 * d + 1))
        out[tuple(2 * d + 1 for d in comp)] = c
    return LaurentPoly(n, out)


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, n - 1):
            yield (head,) + tail


def check_properties(g: int, n: int) -> dict[str, bool]:
    """The five structural checks on F_{g,n}; all should come back True."""
    F = F_coeff(g, n)
    m = 2 * g - 2 + n
    top = 3 * m
    highest = LaurentPoly(n, {e: c for e, c in F.terms.items() if sum(e) == top})
    return {
        "degree": F.total_degree() == top,
        "reciprocity": F.reciprocal_vars() == F,
        "vanish_at_minus_one": F.subs_value(0, Fraction(-1)).is_zero(),
        "diagonal_euler": F.eval_all([1] * n) == (-1) ** n * chi_mgn(g, n),
        "highest_airy": highest == airy_highest_poly(g, n),
    }


# ---------------------------------------------------------------------------
# back to the x coordinate


def t_of_x_series(trunc: int) -> TruncSeries:
    """t(x) = (z+1)/(z-1) as a series in s = 1/x, where z = z(x) is the
    branch of z + 1/z = x with z ~ 1/x.  Starts -1 - 2s - 2s^2 - ..."""
    from .catalan import z_series

    z = z_series(trunc)
    one = TruncSeries.one(trunc)
    return (z + one) * (z - one).inverse()


def laplace_coefficients(
    g: int, n: int, mu_max: int
) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of prod x_i^(-mu_i) in F_{g,n}(t(x_1), ..., t(x_n)) for
    1 <= mu_i <= mu_max."""
    table = substitute_series(F_coeff(g, n), t_of_x_series(mu_max), mu_max)
    for mu in table:
        if any(m == 0 for m in mu):
            raise ArithmeticError("nonzero coefficient at mu_i = 0")
    return table


def laplace_match(g: int, n: int, mu_max: int) -> bool:
    """Compare the 1/x-expansion of F_{g,n} against C_{g,n}(mu)/prod(mu)."""
    from .catalan import catalan_general

    grid = laplace_coefficients(g, n, mu_max)
    for mu in itertools.product(range(1, mu_max + 1), repeat=n):
        want = Fraction(catalan_general(g, n, mu))
        for m in mu:
            want /= m
        if grid.get(mu, _F0) != want:
            return False
    return True
