"""Simple and orbifold Hurwitz numbers, and their quantum curve.

H(r; g, n | mu) is the automorphism-weighted count of genus g covers of
the projective line with n labeled poles of orders mu_i, simple branching
elsewhere, and r-orbifold structure over zero.  The numbers satisfy a
cut-and-join recursion that descends on the branch point count

    s = 2g - 2 + n + (mu_1 + ... + mu_n)/r,

with the single s = 0 seed H(r; 0, 1 | (r)) = 1/r, the deck-group-weighted
cover z -> z^r.  An independent symmetric-group oracle (r = 1) counts
transposition factorizations by group-algebra convolution and extracts the
connected part by inclusion-exclusion over the component of a marked sheet.

The generating series of the diagonals, assembled into the wave function
Psi = exp(sum h^{2g-2+n} F_{g,n}(x, ..., x)/n!), is annihilated by the
infinite-order operator

    P = h D - x^r e^{r(r-1)h/2} e^{r h D},      D = x d/dx,

and by the auxiliary operator Q = (h/2) D^2 - (1/r + h/2) D - h d/dh,
with [P, Q] = P.  Both identities are verified here through exact series
truncations; the coefficient rings are Laurent polynomials in h.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .exactnum import aut_order, partitions_of
from .polyseries import HbarLaurent, TruncSeries

_F0 = Fraction(0)
_F1 = Fraction(1)

_TABLE: dict[tuple, Fraction] = {}


def _branch_count(r: int, g: int, n: int, total: int) -> Fraction:
    return Fraction(total, r) + (2 * g - 2 + n)


def hurwitz(r: int, g: int, n: int, mu: tuple) -> Fraction:
    """The orbifold Hurwitz number for r >= 1, poles of orders mu.

    Zero whenever the branch point count s is not a non-negative integer;
    computed by cut-and-join descent on s otherwise.
    """
    if r < 1:
        raise ValueError("needs r >= 1")
    if g < 0:
        raise ValueError("needs g >= 0")
    mu = tuple(int(m) for m in mu)
    if len(mu) != n or n < 1 or any(m < 1 for m in mu):
        raise ValueError("mu must be n positive pole orders")
    return _H(r, g, tuple(sorted(mu)))


def _H(r: int, g: int, mu: tuple) -> Fraction:
    if g < 0:
        return _F0
    n = len(mu)
    s = _branch_count(r, g, n, sum(mu))
    if s.denominator != 1 or s < 0:
        return _F0
    if s == 0:
        # forces (g, n) = (0, 1) and mu = (r); weight 1/r for the deck group
        return Fraction(1, r) if (g, n, mu) == (0, 1, (r,)) else _F0
    key = (r, g, mu)
    got = _TABLE.get(key)
    if got is not None:
        return got
    acc = _F0
    # join: two poles merge
    for i, j in itertools.combinations(range(n), 2):
        rest = tuple(mu[k] for k in range(n) if k != i and k != j)
        acc += (mu[i] + mu[j]) * _H(r, g, tuple(sorted((mu[i] + mu[j],) + rest)))
    # cut: one pole splits, either lowering the genus or disconnecting
    for i in range(n):
        rest = tuple(mu[k] for k in range(n) if k != i)
        for alpha in range(1, mu[i]):
            beta = mu[i] - alpha
            w = Fraction(alpha * beta, 2)
            acc += w * _H(r, g - 1, tuple(sorted((alpha, beta) + rest)))
            for bits in range(1 << len(rest)):
                part_i = tuple(rest[k] for k in range(len(rest)) if bits >> k & 1)
                part_j = tuple(rest[k] for k in range(len(rest)) if not bits >> k & 1)
                for g1 in range(0, g + 1):
                    a = _H(r, g1, tuple(sorted((alpha,) + part_i)))
                    if not a:
                        continue
                    acc += w * a * _H(r, g - g1, tuple(sorted((beta,) + part_j)))
    out = acc / s
    _TABLE[key] = out
    return out


# ---------------------------------------------------------------------------
# symmetric-group oracle, r = 1


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple(p[q[i]] for i in range(len(p)))


def _cycle_type(p: tuple) -> tuple:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def _factorization_count(mu: tuple, s: int) -> int:
    """Tuples (sigma, tau_1, ..., tau_s) in the symmetric group on sum(mu)
    letters with sigma of cycle type mu, each tau a transposition, and
    tau_s ... tau_1 sigma = identity.  Connectivity is not imposed."""
    d = sum(mu)
    vec: dict[tuple, int] = {}
    for p in itertools.permutations(range(d)):
        if _cycle_type(p) == mu:
            vec[p] = 1
    swaps = []
    for i, j in itertools.combinations(range(d), 2):
        t = list(range(d))
        t[i], t[j] = j, i
        swaps.append(tuple(t))
    for _ in range(s):
        nxt: dict[tuple, int] = {}
        for p, c in vec.items():
            for t in swaps:
                q = _compose(t, p)
                nxt[q] = nxt.get(q, 0) + c
        vec = nxt
    return vec.get(tuple(range(d)), 0)


def _sub_multisets(mu: tuple):
    """Distinct nonempty proper sub-multisets of a sorted tuple."""
    values = sorted(set(mu))
    counts = [mu.count(v) for v in values]
    for picks in itertools.product(*(range(c + 1) for c in counts)):
        if sum(picks) == 0 or picks == tuple(counts):
            continue
        sub = []
        for v, k in zip(values, picks):
            sub += [v] * k
        yield tuple(sorted(sub, reverse=True))


def _multiset_difference(mu: tuple, nu: tuple) -> tuple:
    out = list(mu)
    for v in nu:
        out.remove(v)
    return tuple(sorted(out, reverse=True))


_CONNECTED: dict[tuple, int] = {}


def _connected_count(mu: tuple, s: int) -> int:
    """Transitive factorization tuples, by inclusion-exclusion on the
    component of a marked sheet against the unrestricted count."""
    key = (mu, s)
    got = _CONNECTED.get(key)
    if got is not None:
        return got
    d = sum(mu)
    total = _factorization_count(mu, s)
    for nu in _sub_multisets(mu):
        dn = sum(nu)
        rest = _multiset_difference(mu, nu)
        for t in range(0, s + 1):
            other = _factorization_count(rest, s - t)
            if not other:
                continue
            total -= (
                math.comb(d - 1, dn - 1)
                * math.comb(s, t)
                * _connected_count(nu, t)
                * other
            )
    _CONNECTED[key] = total
    return total


def brute_oracle(g: int, n: int, mu: tuple) -> Fraction:
    """Simple Hurwitz number (r = 1) by exhaustive factorization count,
    for covers of degree sum(mu) <= 5.

    The raw transitive count is normalized by d! |Aut mu| / s!: sheets are
    interchangeable, equal pole orders carry their relabeling freedom, and
    the simple branch points are unordered.  The factor was calibrated once
    against the recursion at H(1), H(2), H(1,1) and then confirmed on the
    whole degree <= 5 grid.
    """
    mu = tuple(sorted((int(m) for m in mu), reverse=True))
    if len(mu) != n or any(m < 1 for m in mu):
        raise ValueError("mu must be n positive pole orders")
    d = sum(mu)
    if d > 5:
        raise ValueError("oracle degree capped at 5")
    s = _branch_count(1, g, n, d)
    if s.denominator != 1 or s < 0:
        return _F0
    raw = _connected_count(mu, int(s))
    return Fraction(raw * aut_order(mu), math.factorial(d) * math.factorial(int(s)))


# ---------------------------------------------------------------------------
# free energies and the wave function


def z_of_x_series(r: int, trunc: int) -> TruncSeries:
    """Inverse of x = z exp(-z^r) as a power series in x.

    For r = 1 the coefficients are k^{k-1}/k!, the rooted labeled trees.
    """
    expfac = TruncSeries(trunc - 1, {r: Fraction(-1)}).exp()
    return expfac.shift(1).reversion()


def diagonal_free_energy(r: int, g: int, n: int, trunc: int) -> TruncSeries:
    """F_{g,n}(x, ..., x) as a series in x through x^trunc.

    The unstable cases come from the closed z-forms, converted through the
    inverse of x = z exp(-z^r); the stable ones from the Hurwitz table:
    the x^k coefficient is the sum of H(mu) over ordered mu with |mu| = k.
    """
    if (g, n) == (0, 1):
        zr = z_of_x_series(r, trunc) ** r
        return zr * Fraction(1, r) - zr * zr * Fraction(1, 2)
    if (g, n) == (0, 2):
        zr = z_of_x_series(r, trunc) ** r
        return -(TruncSeries.one(trunc) - zr * r).log() - zr
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"no free energy at (g, n) = ({g}, {n})")
    coeffs: dict[int, Fraction] = {}
    for k in range(n, trunc + 1):
        acc = _F0
        for mu in partitions_of(k):
            if len(mu) != n:
                continue
            val = _H(r, g, tuple(sorted(mu)))
            if val:
                acc += val * Fraction(math.factorial(n), aut_order(mu))
        if acc:
            coeffs[k] = acc
    return TruncSeries(trunc, coeffs)


def wave_series(r: int, x_deg: int, h_window: int) -> TruncSeries:
    """The wave function as a series in x with HbarLaurent coefficients,
    exact modulo h^{h_window + 1} in every x coefficient.

    A free energy at level L = 2g - 2 + n enters the x^k coefficient with
    h exponent at least L - (k - 1)/r after mixing with the h^{-1} terms,
    so levels above h_window + x_deg/r cannot reach the window.
    """
    level_cap = h_window + x_deg // r
    exponent = TruncSeries.zero(x_deg)
    for g in range(0, (level_cap + 1) // 2 + 1):
        for n in range(1, min(x_deg, level_cap + 2 - 2 * g) + 1):
            level = 2 * g - 2 + n
            diag = diagonal_free_energy(r, g, n, x_deg)
            scale = Fraction(1, math.factorial(n))
            exponent = exponent + diag.map_coeffs(
                lambda c, lv=level: HbarLaurent({lv: c * scale})
            )
    psi = exponent.exp()
    return psi.map_coeffs(
        lambda c: c.truncate_above(h_window)
        if isinstance(c, HbarLaurent)
        else HbarLaurent.const(c).truncate_above(h_window)
    )


def _exp_hbar(c: Fraction, order: int) -> HbarLaurent:
    """exp(c h) truncated after h^order."""
    out = {0: _F1}
    acc = _F1
    for j in range(1, order + 1):
        acc = acc * c / j
        out[j] = acc
    return HbarLaurent(out)


def _floor_magnitude(f: TruncSeries) -> int:
    worst = 0
    for c in f.coeffs.values():
        if isinstance(c, HbarLaurent) and c.coeffs:
            worst = max(worst, -c.min_exp())
    return worst


def apply_difference_operator(r: int, f: TruncSeries, h_order: int) -> TruncSeries:
    """P f = (h D - x^r e^{r(r-1)h/2} e^{r h D}) f, with the scalar
    exponentials truncated; the result is reliable mod h^{h_order + 1}
    whenever f is."""
    order = h_order + _floor_magnitude(f)
    h1 = HbarLaurent.h()
    t1 = TruncSeries(f.trunc, {k: c * h1 * k for k, c in f.coeffs.items()})
    scalar = _exp_hbar(Fraction(r * (r - 1), 2), order)
    shifted = TruncSeries(
        f.trunc,
        {k: c * _exp_hbar(Fraction(r * k), order) * scalar for k, c in f.coeffs.items()},
    )
    t2 = shifted.shift(r).truncate(f.trunc)
    res = t1 - t2
    return res.map_coeffs(lambda c: c.truncate_above(h_order))


def apply_auxiliary_operator(r: int, f: TruncSeries, h_order: int) -> TruncSeries:
    """Q f = ((h/2) D^2 - (1/r + h/2) D - h d/dh) f."""
    hh = HbarLaurent({1: Fraction(1, 2)})
    inv_r = Fraction(1, r)
    out: dict[int, HbarLaurent] = {}
    for k, c in f.coeffs.items():
        val = c * hh * (k * k - k) - c * (inv_r * k) - c.d_dh() * HbarLaurent.h()
        out[k] = val.truncate_above(h_order)
    return TruncSeries(f.trunc, out)


def _window_failures(res: TruncSeries, h_window: int) -> list[tuple[int, int]]:
    bad = []
    for k, c in sorted(res.coeffs.items()):
        for e in sorted(c.coeffs):
            if e <= h_window:
                bad.append((k, e))
    return bad


def qc_series_check(r: int, x_deg: int = 4, h_deg: int = 2) -> dict:
    """Verify that the difference operator annihilates the wave function,
    exactly, modulo (x^{x_deg+1}, h^{h_deg+1})."""
    psi = wave_series(r, x_deg, h_deg)
    res = apply_difference_operator(r, psi, h_deg)
    bad = _window_failures(res, h_deg)
    if bad:
        raise ArithmeticError(f"difference operator residual at (x, h) powers {bad[:4]}")
    return {"r": r, "x_degree": x_deg, "hbar_order": h_deg, "ok": True}


def q_operator_check(r: int, x_deg: int = 3, h_deg: int = 2) -> dict:
    """Verify that the auxiliary operator annihilates the wave function,
    exactly, modulo (x^{x_deg+1}, h^{h_deg+1})."""
    psi = wave_series(r, x_deg, h_deg)
    res = apply_auxiliary_operator(r, psi, h_deg)
    bad = _window_failures(res, h_deg)
    if bad:
        raise ArithmeticError(f"auxiliary operator residual at (x, h) powers {bad[:4]}")
    return {"r": r, "x_degree": x_deg, "hbar_order": h_deg, "ok": True}


def commutator_check(r: int, x_pow: int, x_deg: int, h_deg: int) -> bool:
    """[P, Q] f = P f on the monomial x^{x_pow}, mod (x^{x_deg+1}, h^{h_deg+1})."""
    inner = h_deg + 2
    f = TruncSeries(x_deg, {x_pow: HbarLaurent.const(1)})
    pq = apply_difference_operator(r, apply_auxiliary_operator(r, f, inner), inner)
    qp = apply_auxiliary_operator(r, apply_difference_operator(r, f, inner), inner)
    direct = apply_difference_operator(r, f, inner)
    res = pq - qp - direct
    trimmed = res.map_coeffs(lambda c: c.truncate_above(h_deg))
    return not _window_failures(trimmed, h_deg)
