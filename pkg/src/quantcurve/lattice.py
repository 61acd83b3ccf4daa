"""Lattice point counts of the moduli space of curves.

N_{g,n}(p_1, ..., p_n) is the weighted count of integral ribbon graphs of
type (g, n) with face perimeters p (positive integers; the count is zero
when p_1 + ... + p_n is odd, and this implementation follows the
strictly-positive convention N = 0 whenever some p_i = 0; other value
assignments at p_i = 0 exist in the literature).

Two independent routes are implemented.  The generating-function route
substitutes t_i := -(1+q_i)/(1-q_i) into the free energy F_{g,n} and reads
N off the q-expansion.  The combinatorial route runs the count's own
recursion on p_1:

  p_1 N_{g,n}(p) = 1/2 sum_j [ sum_{q} q (p_1+p_j-q) N_{g,n-1}(q, rest)
                   + H(p_1-p_j) sum_q q (p_1-p_j-q) N_{g,n-1}(q, rest)
                   - H(p_j-p_1) sum_q q (p_j-p_1-q) N_{g,n-1}(q, rest) ]
    + 1/2 sum_{q_1+q_2 <= p_1} q_1 q_2 (p_1-q_1-q_2)
                 [ N_{g-1,n+1}(q_1, q_2, rest)
                   + sum_{stable} N_{g_1,|I|+1}(q_1, p_I) N_{g_2,|J|+1}(q_2, p_J) ]

with H the Heaviside step (1 for x > 0, else 0), each inner q-sum running
over the full 0..limit range (endpoints die on their own), and stability
meaning 2g_1 - 1 + |I| > 0 and 2g_2 - 1 + |J| > 0.  Base cases (0,3) and
(1,1) are taken from the generating-function route, so agreement of the
two routes at higher (g, n) is a real check, not a tautology.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .freeenergy import F_coeff, chi_mgn
from .polyseries import TruncSeries, substitute_series

__all__ = [
    "t_of_q_series",
    "base_from_F",
    "lattice_N",
    "harer_zagier_chi",
    "euler_consistency",
]

_F0 = Fraction(0)


def t_of_q_series(trunc: int) -> TruncSeries:
    """t(q) = -(1+q)/(1-q) = -(1 + 2q + 2q^2 + ...)."""
    one = TruncSeries.one(trunc)
    q = TruncSeries.x(trunc)
    return -(one + q) * (one - q).inverse()


def base_from_F(g: int, n: int, p_max: int) -> dict[tuple[int, ...], Fraction]:
    """All N_{g,n}(p) with 1 <= p_i <= p_max, read from the q-expansion of
    the free energy.  Raises if a coefficient violates the parity rule or
    sits at some q_i^0 (F must vanish at t_i = -1)."""
    table = substitute_series(F_coeff(g, n), t_of_q_series(p_max), p_max)
    out: dict[tuple[int, ...], Fraction] = {}
    for p, c in table.items():
        if any(x == 0 for x in p):
            raise ArithmeticError("constant term in a q variable")
        if sum(p) % 2:
            raise ArithmeticError(f"nonzero coefficient at odd-parity {p}")
        out[p] = c
    return out


_BASE_MAX = 24
_BASE: dict[tuple[int, int], dict[tuple[int, ...], Fraction]] = {}
_N_CACHE: dict[tuple[int, int, tuple[int, ...]], Fraction] = {}


def _base_lookup(g: int, n: int, p: tuple[int, ...]) -> Fraction:
    tab = _BASE.get((g, n))
    if tab is None:
        tab = base_from_F(g, n, _BASE_MAX)
        _BASE[(g, n)] = tab
    if max(p) > _BASE_MAX:
        raise ValueError(f"base table only reaches p_i = {_BASE_MAX}")
    return tab.get(p, _F0)


def lattice_N(g: int, n: int, p) -> Fraction:
    """N_{g,n}(p) by the recursion on p_1, for stable (g, n) and p_i >= 1."""
    p = tuple(int(x) for x in p)
    if len(p) != n:
        raise ValueError("p must have one entry per face")
    if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
        raise ValueError(f"({g},{n}) is not stable")
    if any(x < 1 for x in p):
        raise ValueError("perimeters must be positive")
    if sum(p) % 2:
        return _F0
    return _N(g, n, p)


def _N(g: int, n: int, p: tuple[int, ...]) -> Fraction:
    """Internal: 0 at any p_i = 0 or odd parity, memoized sorted.

    The parity cut matters for correctness, not just speed: the p_1
    recursion does not preserve the (trivially true) odd-parity vanishing
    on its own, so odd sub-lookups must short-circuit to zero."""
    if any(x == 0 for x in p) or sum(p) % 2:
        return _F0
    p = tuple(sorted(p, reverse=True))
    if (g, n) in ((0, 3), (1, 1)):
        return _base_lookup(g, n, p)
    key = (g, n, p)
    hit = _N_CACHE.get(key)
    if hit is None:
        hit = _recurse_N(g, n, p)
        _N_CACHE[key] = hit
    return hit


def _recurse_N(g: int, n: int, p: tuple[int, ...]) -> Fraction:
    p1 = p[0]
    rest = p[1:]
    acc = _F0

    for j in range(len(rest)):
        others = rest[:j] + rest[j + 1 :]
        pj = rest[j]
        for span, sign in ((p1 + pj, 1), (p1 - pj, 1), (pj - p1, -1)):
            if span <= 0:  # Heaviside on the difference terms
                continue
            for q in range(1, span):
                acc += sign * q * (span - q) * _N(g, n - 1, (q,) + others)

    for q1 in range(1, p1):
        for q2 in range(1, p1 - q1):
            w = q1 * q2 * (p1 - q1 - q2)
            if g >= 1:
                acc += w * _N(g - 1, n + 1, (q1, q2) + rest)
            for g1 in range(0, g + 1):
                g2 = g - g1
                for size in range(0, len(rest) + 1):
                    for I in itertools.combinations(range(len(rest)), size):
                        if 2 * g1 - 1 + size <= 0:
                            continue
                        if 2 * g2 - 1 + (len(rest) - size) <= 0:
                            continue
                        pI = tuple(rest[i] for i in I)
                        pJ = tuple(rest[i] for i in range(len(rest)) if i not in I)
                        acc += (
                            w
                            * _N(g1, size + 1, (q1,) + pI)
                            * _N(g2, len(rest) - size + 1, (q2,) + pJ)
                        )

    return acc / (2 * p1)


def harer_zagier_chi(g: int, n: int) -> Fraction:
    """Orbifold Euler characteristic of M_{g,n}; see chi_mgn."""
    return chi_mgn(g, n)


def euler_consistency(g: int, n: int) -> dict:
    """Assert F_{g,n}(1, ..., 1) = (-1)^n chi(M_{g,n}) and report both."""
    diag = F_coeff(g, n).eval_all([1] * n)
    chi = harer_zagier_chi(g, n)
    if diag != (-1) ** n * chi:
        raise ArithmeticError(
            f"diagonal {diag} != (-1)^{n} * chi {chi} at ({g},{n})"
        )
    return {"g": g, "n": n, "diagonal": diag, "chi": chi, "ok": True}
