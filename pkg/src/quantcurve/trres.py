"""Topological recursion on genus-zero curves with the involution t -> -t.

A spectral curve here is a rational parametrization x(t), y(t) on P^1 with
x(-t) = x(t) and ramification over t = 0 and t = infinity.  The recursion
produces symmetric differentials

    W_{g,n} = w_{g,n}(t_1, ..., t_n) dt_1 ... dt_n

with w a Laurent polynomial whose only poles sit at t_i = 0; this module
stores and returns the coefficient functions w.  The base cases are

    w_{0,2}(a, b) = 1/(a - b)^2        (the Bergman kernel, never stored)

and the recursion kernel is 1/2 * [1/(t+t_1) + 1/(t-t_1)] dt_1 / (eta(-t) -
eta(t)) with eta = y dx.  Writing pref(t) for the scalar part of the kernel
(pref = t^4/64 for the Airy curve, (t^2-1)^3/(64 t^2) for the Catalan
curve), the recursion collapses to

    w_{g,n} = - sum of residues at t = +-t_1, ..., +-t_n of
              pref(t) * [1/(t+t_1) + 1/(t-t_1)] * E(t)

where E collects w_{g-1,n+1}(t, -t, rest) and the stable-or-(0,2) products
w_{g1}(t, t_I) w_{g2}(-t, t_J).  Residues are taken with t_2, ..., t_n as
exact symbolic Laurent variables; the intermediate fractions carry factored
denominators prod (t_i +- t_j) which must cancel completely at the end.
A surviving factor is a hard error, not something to truncate away.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import double_factorial
from .polyseries import ExactDivisionError, LaurentPoly, RationalFunction

__all__ = [
    "SpectralCurve",
    "airy_curve",
    "catalan_curve",
    "kernel_prefactor",
    "W_coeff",
    "intersection_numbers",
    "psi_intersection",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


class SpectralCurve:
    """Rational spectral curve data: x(t), y(t), with x even in t."""

    __slots__ = ("name", "x_of_t", "y_of_t")

    def __init__(self, name: str, x_of_t: RationalFunction, y_of_t: RationalFunction):
        if x_of_t.flip_sign_var() != x_of_t:
            raise ValueError("x(t) must be invariant under t -> -t")
        self.name = name
        self.x_of_t = x_of_t
        self.y_of_t = y_of_t

    def eta(self) -> RationalFunction:
        """eta(t) = y(t) x'(t), the dt-coefficient of y dx."""
        return self.y_of_t * self.x_of_t.derivative()


def airy_curve() -> SpectralCurve:
    """x = 4/t^2, y = -2/t; the curve of the Airy differential operator."""
    x = RationalFunction([4], [0, 0, 1])
    y = RationalFunction([-2], [0, 1])
    return SpectralCurve("airy", x, y)


def catalan_curve() -> SpectralCurve:
    """x = 2 + 4/(t^2 - 1) = z + 1/z with z = (t+1)/(t-1), y = -z.

    The Laplace dual of the generalized Catalan numbers; top-degree parts
    of its invariants reproduce the Airy curve.
    """
    x = RationalFunction([2, 0, 2], [-1, 0, 1])
    y = RationalFunction([-1, -1], [-1, 1])
    return SpectralCurve("catalan", x, y)


def kernel_prefactor(curve: SpectralCurve) -> LaurentPoly:
    """Scalar prefactor pref(t) = 1/(2 (eta(-t) + eta(t))) of the recursion
    kernel, as an arity-1 Laurent polynomial.

    The sign convention: eta(-t) here means the pullback of eta dt under
    the involution, whose dt-coefficient is -eta(-t); the recursion below
    uses  W = -sum Res [pref * kappa * E]  with this pref.
    """
    eta = curve.eta()
    denom = (eta.flip_sign_var() + eta) * 2
    pref = RationalFunction.from_const(1) / denom
    pref = _reduced(pref)
    coeffs = pref.as_laurent_coeffs()
    return LaurentPoly(1, {(e,): c for e, c in coeffs.items()})


def _reduced(r: RationalFunction) -> RationalFunction:
    """Cancel the polynomial gcd (Fraction coefficients only)."""
    from .polyseries import poly_divmod, poly_gcd

    g = poly_gcd(r.num, r.den)
    if len(g) <= 1:
        return r
    qn, rn = poly_divmod(r.num, g)
    qd, rd = poly_divmod(r.den, g)
    if rn or rd:
        raise ArithmeticError("gcd division left a remainder")
    return RationalFunction(qn, qd)


# ---------------------------------------------------------------------------
# symbolic fractions with factored (t_i +- t_j) denominators


class _SymFrac:
    """num / prod (t_i + eps t_j)^pow with i < j, as exact data.

    Only the residue engine builds these; every complete residue sum must
    reduce to a plain Laurent polynomial.
    """

    __slots__ = ("arity", "num", "den")

    def __init__(self, arity: int, num: LaurentPoly, den: dict | None = None):
        self.arity = arity
        self.num = num
        self.den = dict(den) if den else {}

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "_SymFrac":
        return cls(p.arity, p)

    def __mul__(self, other: "_SymFrac") -> "_SymFrac":
        den = dict(self.den)
        for k, v in other.den.items():
            den[k] = den.get(k, 0) + v
        return _SymFrac(self.arity, self.num * other.num, den)

    def scale(self, c: Fraction) -> "_SymFrac":
        return _SymFrac(self.arity, self.num * c, self.den)

    @staticmethod
    def factor_poly(arity: int, key: tuple[int, int, int]) -> LaurentPoly:
        i, j, eps = key
        return LaurentPoly.var(arity, i) + LaurentPoly.var(arity, j) * eps

    @classmethod
    def sum(cls, parts: list["_SymFrac"], arity: int) -> "_SymFrac":
        """Single common-denominator sum (avoids pairwise blowup)."""
        common: dict = {}
        for p in parts:
            for k, v in p.den.items():
                common[k] = max(common.get(k, 0), v)
        total = LaurentPoly.zero(arity)
        for p in parts:
            num = p.num
            for k, v in common.items():
                deficit = v - p.den.get(k, 0)
                if deficit:
                    num = num * cls.factor_poly(arity, k) ** deficit
            total = total + num
        return cls(arity, total, common)

    def reduce_to_laurent(self) -> LaurentPoly:
        """Divide out every denominator factor exactly; raises
        ExactDivisionError if a pole survives."""
        num = self.num
        for (i, j, eps), power in self.den.items():
            for _ in range(power):
                # (t_i + eps t_j) = t_i^1 - (-eps) t_j^1
                num = num.exact_div_var_binomial(i, j, 1, Fraction(-eps))
        return num


def _inv_linear(arity: int, point: tuple[int, int], form: tuple[int, int], r: int) -> "_SymFrac":
    """1 / L(p)^r where L = t - s*t_m and p = sigma*t_k, as a _SymFrac.

    point = (sigma, k), form = (s, m), k != m.  L(p) = sigma t_k - s t_m is
    normalized to unit * (t_i + eps t_j) with i < j and unit = +-1.
    """
    sigma, k = point
    s, m = form
    if k == m:
        raise ValueError("evaluation point coincides with the pole")
    if k < m:
        unit, key = sigma, (k, m, -sigma * s)
    else:
        unit, key = -s, (m, k, -s * sigma)
    c = Fraction(unit**r)
    return _SymFrac(arity, LaurentPoly.const(arity, c), {key: r})


# ---------------------------------------------------------------------------
# the recursion


_W_CACHE: dict[tuple[str, int, int], LaurentPoly] = {}


def W_coeff(curve: SpectralCurve, g: int, n: int) -> LaurentPoly:
    """Coefficient Laurent polynomial of W_{g,n} for stable (g, n).

    (0,1) is excluded by the recursion; (0,2) is the fixed Bergman kernel
    dt1 dt2/(t1 - t2)^2 and is not a Laurent polynomial, so asking for it
    here is an error too.
    """
    if g < 0 or n < 1:
        raise ValueError("need g >= 0, n >= 1")
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"({g},{n}) is unstable; only 2g-2+n > 0 is stored")
    key = (curve.name, g, n)
    hit = _W_CACHE.get(key)
    if hit is not None:
        return hit
    val = _compute_W(curve, g, n)
    _W_CACHE[key] = val
    return val


def _stable(g: int, m: int) -> bool:
    return 2 * g - 2 + m > 0


def _compute_W(curve: SpectralCurve, g: int, n: int) -> LaurentPoly:
    # working arity: slot 0 = t, slots 1..n = t_1..t_n
    N = n + 1
    pref1 = kernel_prefactor(curve)
    pref = pref1.embed(N, [0])
    dpref = pref.partial_derivative(0)

    # E(t) as a list of terms: (pole_factors, poly); pole factors are
    # ((s, m), 2) meaning 1/(t - s t_m)^2, at most two per term
    terms: list[tuple[list[tuple[tuple[int, int], int]], LaurentPoly]] = []

    if g >= 1:
        if (g - 1, n + 1) == (0, 2):
            # w02(t, -t) = 1/(2t)^2
            poly = LaurentPoly.monomial(N, (-2,) + (0,) * n, Fraction(1, 4))
            terms.append(([], poly))
        else:
            stored = W_coeff(curve, g - 1, n + 1)
            poly = stored.flip_sign(1).embed(N, [0, 0] + list(range(2, n + 1)))
            terms.append(([], poly))

    others = list(range(2, n + 1))
    for mask in range(1 << len(others)):
        I = [others[t] for t in range(len(others)) if mask >> t & 1]
        J = [others[t] for t in range(len(others)) if not mask >> t & 1]
        for g1 in range(0, g + 1):
            g2 = g - g1
            ok1 = _stable(g1, len(I) + 1) or (g1 == 0 and len(I) == 1)
            ok2 = _stable(g2, len(J) + 1) or (g2 == 0 and len(J) == 1)
            if not (ok1 and ok2):
                continue
            poles: list[tuple[tuple[int, int], int]] = []
            poly = LaurentPoly.const(N, 1)
            if g1 == 0 and len(I) == 1:
                poles.append(((1, I[0]), 2))  # 1/(t - t_j)^2
            else:
                stored = W_coeff(curve, g1, len(I) + 1)
                poly = poly * stored.embed(N, [0] + I)
            if g2 == 0 and len(J) == 1:
                poles.append(((-1, J[0]), 2))  # 1/(t + t_j)^2
            else:
                stored = W_coeff(curve, g2, len(J) + 1)
                poly = poly * stored.flip_sign(0).embed(N, [0] + J)
            terms.append((poles, poly))

    contributions: list[_SymFrac] = []

    def subs_t(p: LaurentPoly, sigma: int, k: int) -> LaurentPoly:
        q = p.flip_sign(0) if sigma < 0 else p
        return q.subs_var(0, k)

    # residues at +-t_1: kappa contributes the simple pole, everything else
    # is evaluated
    for sigma in (1, -1):
        for poles, poly in terms:
            val = _SymFrac.from_poly(subs_t(pref * poly, sigma, 1))
            for (s, m), r in poles:
                val = val * _inv_linear(N, (sigma, 1), (s, m), r)
            contributions.append(val)

    # residues at +-t_j, j >= 2: double pole from one Bergman factor
    for j in range(2, n + 1):
        for sigma in (1, -1):
            for poles, poly in terms:
                hot = [pf for pf in poles if pf[0] == (sigma, j)]
                if not hot:
                    continue
                cold = [pf for pf in poles if pf[0] != (sigma, j)]
                # order-1 jets (value, derivative) at t = sigma t_j
                jets: list[tuple[_SymFrac, _SymFrac]] = []
                # kappa = 1/(t - t_1) + 1/(t + t_1)
                ka = _inv_linear(N, (sigma, j), (1, 1), 1)
                kb = _inv_linear(N, (sigma, j), (-1, 1), 1)
                ka1 = _inv_linear(N, (sigma, j), (1, 1), 2).scale(Fraction(-1))
                kb1 = _inv_linear(N, (sigma, j), (-1, 1), 2).scale(Fraction(-1))
                jets.append(
                    (
                        _SymFrac.sum([ka, kb], N),
                        _SymFrac.sum([ka1, kb1], N),
                    )
                )
                jets.append(
                    (
                        _SymFrac.from_poly(subs_t(pref, sigma, j)),
                        _SymFrac.from_poly(subs_t(dpref, sigma, j)),
                    )
                )
                if poly.terms:
                    jets.append(
                        (
                            _SymFrac.from_poly(subs_t(poly, sigma, j)),
                            _SymFrac.from_poly(
                                subs_t(poly.partial_derivative(0), sigma, j)
                            ),
                        )
                    )
                for (s, m), r in cold:
                    jets.append(
                        (
                            _inv_linear(N, (sigma, j), (s, m), r),
                            _inv_linear(N, (sigma, j), (s, m), r + 1).scale(
                                Fraction(-r)
                            ),
                        )
                    )
                a0, a1 = jets[0]
                for b0, b1 in jets[1:]:
                    a0, a1 = a0 * b0, _SymFrac.sum([a0 * b1, a1 * b0], N)
                contributions.append(a1)

    total = _SymFrac.sum(contributions, N).scale(Fraction(-1))
    try:
        flat = total.reduce_to_laurent()
    except ExactDivisionError as exc:
        raise ExactDivisionError(
            f"W_({g},{n}) on {curve.name}: unexpected pole structure survives"
        ) from exc

    # project out the spent t slot
    out: dict = {}
    for e, c in flat.terms.items():
        if e[0] != 0:
            raise ArithmeticError("residue variable survived the residues")
        out[e[1:]] = c
    w = LaurentPoly(n, out)

    if not w.is_symmetric():
        raise ArithmeticError(f"W_({g},{n}) on {curve.name} is not symmetric")
    for e in w.terms:
        if any(x % 2 for x in e):
            raise ArithmeticError(f"W_({g},{n}) on {curve.name} has odd exponents")
    if curve.name == "airy":
        if w.terms and (not w.is_homogeneous() or w.total_degree() != 6 * g - 6 + 2 * n):
            raise ArithmeticError("Airy invariant degree is off")
        if any(x < 0 for e in w.terms for x in e):
            raise ArithmeticError("Airy invariants are polynomial")
    return w


# ---------------------------------------------------------------------------
# psi-class intersection numbers from the Airy invariants


def intersection_numbers(g: int, n: int) -> dict[tuple[int, ...], Fraction]:
    """All <tau_{d_1} ... tau_{d_n}>_g with sum d_i = 3g - 3 + n, keyed by
    the descending-sorted exponent tuple.

    Read off from the Airy w_{g,n}: integrating each variable from 0 turns
    the monomial data into the generating polynomial

      F_{g,n} = (-1)^n / 2^{2g-2+n} * sum <prod tau_{d_i}>
                prod (2 d_i - 1)!! (t_i/2)^{2 d_i + 1}.
    """
    w = W_coeff(airy_curve(), g, n)
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in w.terms.items():
        dvec = tuple(x // 2 for x in e)
        f_coeff = c
        for x in e:
            f_coeff /= x + 1
        scale = Fraction((-1) ** n) * Fraction(2) ** (2 * g - 2 + n)
        scale *= Fraction(2) ** (sum(e) + n)
        for d in dvec:
            scale /= double_factorial(2 * d - 1)
        key = tuple(sorted(dvec, reverse=True))
        val = f_coeff * scale
        prev = out.get(key)
        if prev is not None and prev != val:
            raise ArithmeticError("inconsistent symmetric coefficients")
        out[key] = val
    return out


def psi_intersection(g: int, dvec: tuple[int, ...]) -> Fraction:
    """<tau_{d_1} ... tau_{d_n}>_g; zero when the dimension count fails."""
    n = len(dvec)
    if n < 1:
        raise ValueError("need at least one insertion")
    if sum(dvec) != 3 * g - 3 + n:
        return _F0
    table = intersection_numbers(g, n)
    return table.get(tuple(sorted(dvec, reverse=True)), _F0)
