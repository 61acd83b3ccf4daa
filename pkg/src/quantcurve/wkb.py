"""WKB expansions of second order quantum curves and their geometry.

A quantum curve here is an operator (h d/dx)^2 - s1(x) (h d/dx) + s2(x)
with rational coefficients.  Writing a solution as exp(sum_m h^{m-1} S_m(x))
turns P psi = 0 into the transport hierarchy

    (S_0')^2 - s1 S_0' + s2 = 0,
    2 S_0' S_1' + S_0'' - s1 S_1' = 0,
    S_m'' + sum_{a+b=m+1} S_a' S_b' - s1 S_{m+1}' = 0      (m >= 1),

and the h -> 0 shadow of the operator is the plane curve
y^2 - s1 y + s2 = 0.  This module verifies the hierarchy exactly for the
Catalan operator, whose S_m are principal specializations of the free
energies, expands the decaying Airy solution through two unrelated
formulas, and computes the geometry of the semiclassical curve:
compactified charts, the discriminant divisor, the geometric genus, and
the regular/irregular classification of the operator's singular points.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import catalan, freeenergy, trres
from .exactnum import aut_order, double_factorial, partitions_of, pochhammer_hbar
from .polyseries import (
    HbarLaurent,
    LaurentPoly,
    RationalFunction,
    TruncSeries,
    poly_derivative,
    poly_divmod,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_trim,
    poly_yun,
    substitute_series,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


class QuantumCurveSpec:
    """An operator (h d/dx)^2 - s1 (h d/dx) + s2 with rational coefficients.

    Optionally carries a rational parametrization (x(t), y(t)) of the
    semiclassical curve and the finite points where the coefficients are
    singular; both are used by the verification drivers below.
    """

    __slots__ = ("name", "s1", "s2", "x_of_t", "y_of_t", "marked_points")

    def __init__(
        self,
        name: str,
        s1: RationalFunction,
        s2: RationalFunction,
        x_of_t: RationalFunction | None = None,
        y_of_t: RationalFunction | None = None,
        marked_points: tuple = (),
    ):
        if (x_of_t is None) != (y_of_t is None):
            raise ValueError("a parametrization needs both x(t) and y(t)")
        if x_of_t is not None:
            on_curve = (
                y_of_t * y_of_t
                - s1.compose(x_of_t) * y_of_t
                + s2.compose(x_of_t)
            )
            if not on_curve.is_zero():
                raise ValueError(f"parametrization of {name!r} is not on the curve")
        self.name = name
        self.s1 = s1
        self.s2 = s2
        self.x_of_t = x_of_t
        self.y_of_t = y_of_t
        self.marked_points = tuple(Fraction(a) for a in marked_points)

    def __repr__(self) -> str:
        return f"QuantumCurveSpec({self.name!r})"


def _rf(num, den=(1,)) -> RationalFunction:
    return RationalFunction([Fraction(c) for c in num], [Fraction(c) for c in den])


def airy_operator() -> QuantumCurveSpec:
    """(h d/dx)^2 - x."""
    curve = trres.airy_curve()
    return QuantumCurveSpec(
        "airy", _rf([0]), _rf([0, -1]), curve.x_of_t, curve.y_of_t
    )


def catalan_operator() -> QuantumCurveSpec:
    """(h d/dx)^2 + x (h d/dx) + 1."""
    curve = trres.catalan_curve()
    return QuantumCurveSpec(
        "catalan", _rf([0, -1]), _rf([1]), curve.x_of_t, curve.y_of_t
    )


def hypergeometric_operator() -> QuantumCurveSpec:
    """(h d/dx)^2 + (2x-1)/(x(x-1)) (h d/dx) + 1/(4x(x-1))."""
    return QuantumCurveSpec(
        "hypergeometric",
        _rf([1, -2], [0, -1, 1]),
        _rf([1], [0, -4, 4]),
        marked_points=(0, 1),
    )


def simple_pole_operator() -> QuantumCurveSpec:
    """(h d/dx)^2 + (h d/dx) + 1/(x+1)."""
    return QuantumCurveSpec(
        "simple-pole", _rf([-1]), _rf([1], [1, 1]), marked_points=(-1,)
    )


def elliptic_operator() -> QuantumCurveSpec:
    """(h d/dx)^2 + 2x^2/(x^2-1) (h d/dx) - 1/(x^2-1); genus one shadow."""
    return QuantumCurveSpec(
        "elliptic",
        _rf([0, 0, -2], [-1, 0, 1]),
        _rf([-1], [-1, 0, 1]),
        marked_points=(-1, 1),
    )


def catalog() -> tuple[QuantumCurveSpec, ...]:
    return (
        airy_operator(),
        catalan_operator(),
        hypergeometric_operator(),
        simple_pole_operator(),
        elliptic_operator(),
    )


# ---------------------------------------------------------------------------
# semiclassical geometry


def _clear_poly(rf: RationalFunction, clear: list) -> list:
    """rf * clear as a dense polynomial; clear must absorb the denominator."""
    q, r = poly_divmod(poly_mul(rf.num, clear), rf.den)
    if r:
        raise ValueError("clearing factor does not absorb the denominator")
    return q


def _den_lcm(s1: RationalFunction, s2: RationalFunction) -> list:
    g = poly_gcd(s1.den, s2.den)
    lcm, _ = poly_divmod(poly_mul(s1.den, s2.den), g)
    return lcm


def _primitive(poly: LaurentPoly) -> LaurentPoly:
    """Integer coefficients with content one; the sign is pinned by making
    the top coefficient of the fiber-degree-two part positive."""
    num_gcd = 0
    den_lcm = 1
    for c in poly.terms.values():
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd)
    deg2 = {e[0]: c for e, c in poly.terms.items() if e[1] == 2}
    if not deg2:
        raise ValueError("curve has no fiber-degree-two part")
    if deg2[max(deg2)] < 0:
        scale = -scale
    return LaurentPoly(2, {e: c * scale for e, c in poly.terms.items()})


def semiclassical_poly(spec: QuantumCurveSpec) -> LaurentPoly:
    """The h -> 0 plane curve y^2 - s1 y + s2 = 0, cleared of denominators
    to a primitive polynomial in (x, y)."""
    lcm = _den_lcm(spec.s1, spec.s2)
    terms: dict[tuple[int, int], Fraction] = {}
    for i, c in enumerate(lcm):
        if c:
            terms[(i, 2)] = c
    for i, c in enumerate(_clear_poly(spec.s1, lcm)):
        if c:
            terms[(i, 1)] = -c
    for i, c in enumerate(_clear_poly(spec.s2, lcm)):
        if c:
            terms[(i, 0)] = c
    return _primitive(LaurentPoly(2, terms))


def infinity_chart_poly(affine: LaurentPoly) -> LaurentPoly:
    """The same curve near x = infinity: substitute x = 1/u, y = -u^2/w,
    clear the poles, and normalize.  The result is again fiber quadratic,
    with the roles of the w^2 and w^0 parts exchanged."""
    if affine.arity != 2:
        raise ValueError("expected a plane curve in two variables")
    raw: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in affine.terms.items():
        e = (2 * b - a, -b)
        s = raw.get(e, _F0) + c * (-1) ** b
        if s:
            raw[e] = s
        else:
            raw.pop(e, None)
    mu = min(e[0] for e in raw)
    mw = min(e[1] for e in raw)
    return _primitive(
        LaurentPoly(2, {(eu - mu, ew - mw): c for (eu, ew), c in raw.items()})
    )


def _fiber_reversed(poly: LaurentPoly) -> LaurentPoly:
    """The chart with the fiber coordinate inverted: w^2 * P(u, 1/w)."""
    return _primitive(
        LaurentPoly(2, {(i, 2 - j): c for (i, j), c in poly.terms.items()})
    )


def _fiber_quadratic_parts(poly: LaurentPoly) -> tuple[list, list, list]:
    """Dense (a, b, c) with poly = a(u) w^2 + b(u) w + c(u)."""
    parts: dict[int, dict[int, Fraction]] = {0: {}, 1: {}, 2: {}}
    for (i, j), c in poly.terms.items():
        if i < 0 or j < 0 or j > 2:
            raise ValueError("not a fiber-quadratic polynomial chart")
        parts[j][i] = c

    def dense(d: dict) -> list:
        if not d:
            return []
        out = [_F0] * (max(d) + 1)
        for i, c in d.items():
            out[i] = c
        return out

    return dense(parts[2]), dense(parts[1]), dense(parts[0])


def is_singular_chart(poly: LaurentPoly) -> bool:
    """Whether a(u) w^2 + b(u) w + c(u) = 0 has a singular point at finite
    coordinates, over the algebraic closure.

    Where a != 0, completing the square gives the double cover
    (2 a w + b)^2 = b^2 - 4 a c, so singular points lie over repeated roots
    of the discriminant.  Over a root of a the fiber equation is linear and
    a singular point forces b and c to vanish there too.
    """
    a, b, c = _fiber_quadratic_parts(poly)
    if not a:
        raise ValueError("fiber-degree-two part is zero")
    disc = poly_sub(poly_mul(b, b), poly_scale(poly_mul(a, c), 4))
    if not disc:
        return True
    rep = poly_gcd(disc, poly_derivative(disc)) if len(disc) > 1 else [_F1]
    # repeated discriminant roots shared with a carry no curve point unless
    # the whole fiber degenerates, which the gcd(a, b, c) test catches
    while True:
        g = poly_gcd(rep, a)
        if len(g) <= 1:
            break
        rep, _ = poly_divmod(rep, g)
    if len(rep) > 1:
        return True
    return len(poly_gcd(poly_gcd(a, b), c)) > 1


def compactified_nonsingular(spec: QuantumCurveSpec) -> bool:
    """Nonsingularity of the full compactified curve, checked on the four
    charts covering the fiberwise-compactified surface over the x line."""
    aff = semiclassical_poly(spec)
    inf = infinity_chart_poly(aff)
    charts = (aff, _fiber_reversed(aff), inf, _fiber_reversed(inf))
    return not any(is_singular_chart(p) for p in charts)


def discriminant(spec: QuantumCurveSpec) -> RationalFunction:
    """(s1/2)^2 - s2, with common polynomial factors cancelled."""
    r = spec.s1 * spec.s1 * Fraction(1, 4) - spec.s2
    g = poly_gcd(r.num, r.den)
    num, _ = poly_divmod(r.num, g)
    den, _ = poly_divmod(r.den, g)
    return RationalFunction(num, den)


def discriminant_profile(spec: QuantumCurveSpec) -> dict:
    """Divisor of the quadratic differential ((s1/2)^2 - s2) (dx)^2.

    Returns the finite zero and pole multiplicities (one entry per
    geometric point, so a squarefree factor of degree d contributes d
    copies), the pole order at infinity, the count of odd multiplicity
    points, and the genus of the double cover branched there.
    """
    r = discriminant(spec)
    if r.is_zero():
        raise ValueError("degenerate operator: the discriminant vanishes")
    zeros: list[int] = []
    for f, m in poly_yun(r.num):
        zeros += [m] * (len(f) - 1)
    poles: list[int] = []
    for f, m in poly_yun(r.den):
        poles += [m] * (len(f) - 1)
    # (dx)^2 alone has a pole of order four at infinity
    inf = 4 + (len(r.num) - 1) - (len(r.den) - 1)
    if sum(zeros) - sum(poles) - inf != -4:
        raise ArithmeticError("quadratic differential divisor must have degree -4")
    odd = sum(1 for m in zeros + poles if m % 2) + (inf % 2)
    if odd % 2:
        raise ArithmeticError("odd multiplicity points must pair up")
    return {
        "zeros": sorted(zeros),
        "poles": sorted(poles),
        "infinity_order": inf,
        "branch_points": odd,
        "geometric_genus": odd // 2 - 1,
    }


def _classify(k: int, ell) -> tuple[str, Fraction | None]:
    # regular (including regular singular) means at worst a simple pole in
    # s1 and a double pole in s2; beyond that the class is max(k, ell/2) - 1
    if k <= 1 and ell <= 2:
        return ("regular", None)
    return ("irregular", max(Fraction(k), Fraction(ell, 2)) - 1)


def _pole_order(rf: RationalFunction, a: Fraction) -> int:
    if rf.is_zero():
        return 0
    return max(0, rf.pole_order_at(a))


def classify_point(spec: QuantumCurveSpec, a) -> tuple[str, Fraction | None]:
    """Classify the operator at finite x = a from the pole orders of its
    coefficients: ("regular", None) or ("irregular", class)."""
    a = Fraction(a)
    return _classify(_pole_order(spec.s1, a), _pole_order(spec.s2, a))


def classify_infinity(spec: QuantumCurveSpec) -> tuple[str, Fraction | None]:
    """Classify the point x = infinity.

    In the chart u = 1/x the operator becomes (h d)^2 - t1 (h d) + t2 with
    t1 = -2 h u^{-1} - s1(1/u) u^{-2} and t2 = s2(1/u) u^{-4}.  The chart
    term is h-proportional, so it cannot cancel against s1; it forces the
    s1 pole order to be at least one, which never decides regularity.
    """
    k = 1
    if not spec.s1.is_zero():
        k = max(k, spec.s1.subs_inverse_var().pole_order_at(_F0) + 2)
    ell = 0
    if not spec.s2.is_zero():
        ell = max(0, spec.s2.subs_inverse_var().pole_order_at(_F0) + 4)
    return _classify(k, ell)


def analyze(spec: QuantumCurveSpec) -> dict:
    """Full geometric report for one operator: both compactified charts,
    nonsingularity, the discriminant profile, and the classification of the
    marked points and of infinity."""
    aff = semiclassical_poly(spec)
    report = {
        "name": spec.name,
        "affine": aff,
        "infinity_chart": infinity_chart_poly(aff),
        "nonsingular": compactified_nonsingular(spec),
    }
    report.update(discriminant_profile(spec))
    points = {str(a): classify_point(spec, a) for a in spec.marked_points}
    points["infinity"] = classify_infinity(spec)
    report["points"] = points
    return report


# ---------------------------------------------------------------------------
# the transport hierarchy for the Catalan operator


def _stable_pairs(level: int):
    """Stable (g, n) with 2g - 2 + n = level and n >= 1."""
    for g in range(0, level // 2 + 2):
        n = level + 2 - 2 * g
        if n < 1 or (g == 0 and n < 3):
            continue
        yield g, n


def _laurent1_to_rational(p: LaurentPoly) -> RationalFunction:
    if p.arity != 1:
        raise ValueError("univariate input required")
    if not p.terms:
        return RationalFunction.from_const(0)
    exps = [e for (e,) in p.terms]
    shift = min(min(exps), 0)
    num = [_F0] * (max(exps) - shift + 1)
    for (e,), c in p.terms.items():
        num[e - shift] = c
    den = [_F0] * (-shift) + [_F1]
    return RationalFunction(num, den)


def catalan_wkb_derivatives(m_max: int) -> list[RationalFunction]:
    """S_m'(x) for the Catalan operator, m = 0 .. m_max, as rational
    functions of the uniformizer t.

    S_0' is y(t) and S_1' solves the first transport equation; for m >= 2
    the primitive is known independently: S_m is the principal
    specialization sum of F_{g, n} over 2g - 2 + n = m - 1, weighted 1/n!.
    """
    curve = trres.catalan_curve()
    dtdx = RationalFunction.from_const(1) / curve.x_of_t.derivative()
    s1_t = _rf([0, -1]).compose(curve.x_of_t)
    out = [curve.y_of_t]
    if m_max >= 1:
        s0pp = out[0].derivative() * dtdx
        out.append(-s0pp / (out[0] * Fraction(2) - s1_t))
    for m in range(2, m_max + 1):
        total = RationalFunction.from_const(0)
        for g, n in _stable_pairs(m - 1):
            diag = _laurent1_to_rational(freeenergy.F_diag(g, n))
            total = total + diag * Fraction(1, math.factorial(n))
        out.append(total.derivative() * dtdx)
    return out


def catalan_wkb_check(m_max: int = 5) -> dict[int, bool]:
    """Exact verification of the transport hierarchy for the Catalan
    operator, everything expressed through t.

    Key 0 is the semiclassical equation, key 1 the transport equation for
    S_1', and key m >= 2 the equation that determines S_m' from lower data,
    here checked against the independently computed free energies.
    """
    if m_max < 2:
        raise ValueError("needs m_max >= 2")
    curve = trres.catalan_curve()
    dtdx = RationalFunction.from_const(1) / curve.x_of_t.derivative()
    s1_t = _rf([0, -1]).compose(curve.x_of_t)
    s2_t = RationalFunction.from_const(1)
    sp = catalan_wkb_derivatives(m_max)
    out: dict[int, bool] = {}
    out[0] = (sp[0] * sp[0] - s1_t * sp[0] + s2_t).is_zero()
    for m in range(1, m_max + 1):
        second = sp[m - 1].derivative() * dtdx
        quad = RationalFunction.from_const(0)
        for a in range(0, m + 1):
            quad = quad + sp[a] * sp[m - a]
        out[m] = (second + quad - s1_t * sp[m]).is_zero()
    return out


# ---------------------------------------------------------------------------
# the Airy expansion, two ways


def rainbow_lhs(m: int) -> Fraction:
    """Sum over stable (g, n) with 2g - 2 + n = m of

        (1/n!) sum <tau_{d_1} ... tau_{d_n}>_g prod (2 d_i - 1)!!

    with the inner sum over ordered tuples with sum d_i = 3g - 3 + n."""
    if m < 1:
        raise ValueError("needs 2g - 2 + n >= 1")
    total = _F0
    for g, n in _stable_pairs(m):
        for dvec, val in trres.intersection_numbers(g, n).items():
            weight = 1
            for d in dvec:
                weight *= double_factorial(2 * d - 1)
            # ordered tuples collapse to sorted keys with multiplicity
            # n!/aut, and the n! cancels the prefactor
            total += val * Fraction(weight, aut_order(dvec))
    return total


def gamma_partition_sum(m: int) -> Fraction:
    """sum over partitions lambda of m of
    (-1)^{len-1} (len-1)!/|Aut| prod (6 l_i)! / ((2 l_i)! (3 l_i)!)."""
    if m < 1:
        raise ValueError("needs m >= 1")
    total = _F0
    for lam in partitions_of(m):
        k = len(lam)
        prod = 1
        for part in lam:
            prod *= math.factorial(6 * part) // (
                math.factorial(2 * part) * math.factorial(3 * part)
            )
        total += Fraction((-1) ** (k - 1) * math.factorial(k - 1) * prod, aut_order(lam))
    return total


def rainbow_check(m: int) -> tuple[Fraction, Fraction]:
    """Both sides of the identity tying the intersection-number sum at
    level m to the closed partition sum; they must agree."""
    return rainbow_lhs(m), gamma_partition_sum(m) / Fraction(288**m)


def airy_wkb_coefficient(m: int, route: str = "gamma") -> Fraction:
    """The m-th coefficient of the exponential asymptotics of the decaying
    Airy solution: S_{m+1}(x) = coeff * x^{-3m/2}.

    Route "intersection" assembles it from psi-class intersection numbers,
    route "gamma" from the closed partition sum.
    """
    if m < 1:
        raise ValueError("needs m >= 1")
    if route == "intersection":
        return Fraction(-1, 2) ** m * rainbow_lhs(m)
    if route == "gamma":
        return Fraction((-1) ** m, 576**m) * gamma_partition_sum(m)
    raise ValueError(f"unknown route {route!r}")


def faber_zagier_coefficients(j_max: int, cross_check: int = 4) -> list[Fraction]:
    """a_1 .. a_{j_max} defined by
    sum_j a_j t^j = -log(sum_m (6m)!/((2m)!(3m)!) t^m).

    The first cross_check of them are recomputed through the intersection
    number sum, a_j = -288^j * rainbow_lhs(j), and must agree.
    """
    terms = [
        Fraction(math.factorial(6 * m), math.factorial(2 * m) * math.factorial(3 * m))
        for m in range(j_max + 1)
    ]
    lg = TruncSeries.from_coeffs(j_max, terms).log()
    out = [-lg.coefficient(j) for j in range(1, j_max + 1)]
    for j in range(1, min(j_max, cross_check) + 1):
        if out[j - 1] != -Fraction(288**j) * rainbow_lhs(j):
            raise ArithmeticError(f"expansion routes disagree at order {j}")
    return out


# ---------------------------------------------------------------------------
# the Catalan wave function


def catalan_psi_check(order: int = 8, level_max: int = 3) -> dict:
    """Compare the exponentiated free energies with the closed wave
    function of the Catalan operator.

    The left side is exp(sum h^{2g-2+n} F_{g,n}(x, ..., x)/n!), including
    the unstable terms with log x stripped from F_{0,1}; the right side is
    sum_n h^n (1/h)_{2n} / (2n)!! x^{-2n}.  Both are series in 1/x whose
    coefficients are Laurent polynomials in h.  The diagonal at
    2g - 2 + n = L only starts at x^{-(2L+2)}, so levels above level_max
    are invisible below x^{-(2 level_max + 4)} and the comparison through
    x^{-order} is exact.  Also checks the h = 1 specialization against the
    odd double factorial series.
    """
    if 2 * level_max + 4 <= order:
        raise ValueError("level_max too small for the requested order")
    # one spare order: z enters through x z = z shifted down once
    zs = catalan.z_series(order + 1)
    ts = freeenergy.t_of_x_series(order)

    # unstable part: (F_{0,1} + log x)/h and F_{0,2} diagonal / 2
    xz = zs.shift(-1)
    t_part = xz.log() - zs * zs * Fraction(1, 2)
    f02_diag = -(TruncSeries.one(order) - zs * zs).log()
    exponent = t_part.map_coeffs(lambda c: HbarLaurent({-1: c}))
    exponent = exponent + f02_diag.map_coeffs(lambda c: HbarLaurent({0: c / 2}))

    for level in range(1, level_max + 1):
        acc = TruncSeries.zero(order)
        for g, n in _stable_pairs(level):
            vals = substitute_series(freeenergy.F_diag(g, n), ts, order)
            diag = TruncSeries(order, {k[0]: v for k, v in vals.items()})
            acc = acc + diag * Fraction(1, math.factorial(n))
        if not acc.is_zero() and acc.valuation() < 2 * level + 2:
            raise ArithmeticError("diagonal valuation bound failed")
        exponent = exponent + acc.map_coeffs(
            lambda c, lv=level: HbarLaurent({lv: c})
        )

    lhs = exponent.exp()
    rhs: dict[int, HbarLaurent] = {}
    for n in range(0, order // 2 + 1):
        shifted = HbarLaurent({e + n: c for e, c in pochhammer_hbar(2 * n).items()})
        rhs[2 * n] = shifted / Fraction(2**n * math.factorial(n))
    series_match = all(
        rhs.get(k, HbarLaurent()) == lhs.coefficient(k) for k in range(0, order + 1)
    )

    # h = 1 shadow: x^{-1} exp(...) against sum (2n-1)!! x^{-(2n+1)}
    shadow = lhs.map_coeffs(
        lambda c: c.subs_one() if isinstance(c, HbarLaurent) else c
    ).shift(1)
    shadow_match = all(
        shadow.coefficient(2 * n + 1) == double_factorial(2 * n - 1)
        and shadow.coefficient(2 * n) == 0
        for n in range(0, (order + 1) // 2 + 1)
        if 2 * n + 1 <= order + 1
    )
    return {
        "order": order,
        "level_max": level_max,
        "series_match": series_match,
        "shadow_match": shadow_match,
    }


# ---------------------------------------------------------------------------
# direct series solutions at h = 1


def verify_ode_series(
    spec: QuantumCurveSpec, psi: TruncSeries, descending: bool = False
) -> int:
    """Check psi'' - s1 psi' + s2 psi = 0 for a truncated series solution.

    psi is a series in x (ascending) or in 1/x (descending).  Denominators
    are cleared, the operator applied term by term, and the residual must
    vanish identically; returns the order through which it is known to.
    """
    lcm = _den_lcm(spec.s1, spec.s2)
    p2 = lcm
    p1 = [-c for c in _clear_poly(spec.s1, lcm)]
    p0 = _clear_poly(spec.s2, lcm)

    def ddx(f: TruncSeries) -> TruncSeries:
        if descending:
            # d/dx = -u^2 d/du in the u = 1/x chart
            return -(f.derivative().shift(2))
        return f.derivative()

    def mul_x(f: TruncSeries, poly: list) -> TruncSeries:
        out = TruncSeries.zero(f.trunc)
        for i, c in enumerate(poly):
            if c:
                out = out + f.shift(-i if descending else i) * c
        return out

    d1 = ddx(psi)
    d2 = ddx(d1)
    res = mul_x(d2, p2) + mul_x(d1, p1) + mul_x(psi, p0)
    if not res.is_zero():
        bad = min(e for e in res.coeffs)
        raise ArithmeticError(f"series fails the operator at order {bad}")
    return res.trunc
