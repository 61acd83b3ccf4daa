"""Generalized Catalan numbers.

C_{g,n}(mu) counts connected cell graphs of genus g with n labeled vertices
of degrees mu_1, ..., mu_n, one outgoing arrow at each vertex.  They obey an
edge-contraction recursion on s = 2g - 2 + n + sum(mu):

  C_{g,n}(mu) = sum_{j>=2} mu_j C_{g,n-1}(mu_1 + mu_j - 2, mu[^1,^j])
              + sum_{a+b = mu_1 - 2} [ C_{g-1,n+1}(a, b, mu[^1])
                + sum_{g1+g2=g, I|J = {2..n}} C_{g1,|I|+1}(a, mu_I)
                                            C_{g2,|J|+1}(b, mu_J) ]

seeded by C_{0,1}(0) = 1.  Any other zero or negative part gives 0, as does
odd total degree.  The one-vertex numbers C_{0,1}(2m) are the Catalan
numbers; the two-vertex numbers have a closed product formula.  Both closed
forms double as oracles for the recursion.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polyseries import TruncSeries

__all__ = [
    "catalan_closed",
    "c02_closed",
    "catalan_general",
    "z_series",
]

_MEMO: dict[tuple[int, tuple[int, ...]], int] = {}


def catalan_closed(m: int) -> int:
    """Catalan number C_m = binom(2m, m) / (m + 1)."""
    if m < 0:
        raise ValueError("need m >= 0")
    return math.comb(2 * m, m) // (m + 1)


def c02_closed(mu1: int, mu2: int) -> int:
    """Closed form for the two-vertex counts.

    C_{0,2}(mu1, mu2) =
      2 floor((mu1+1)/2) floor((mu2+1)/2) / (mu1 + mu2)
      * binom(mu1, floor(mu1/2)) * binom(mu2, floor(mu2/2))

    and 0 when mu1 + mu2 is odd (no graph has odd total degree).
    """
    if mu1 < 1 or mu2 < 1:
        raise ValueError("need positive degrees")
    if (mu1 + mu2) % 2:
        return 0
    num = (
        2
        * ((mu1 + 1) // 2)
        * ((mu2 + 1) // 2)
        * math.comb(mu1, mu1 // 2)
        * math.comb(mu2, mu2 // 2)
    )
    val, rem = divmod(num, mu1 + mu2)
    if rem:
        raise ArithmeticError("closed form did not divide evenly")
    return val


def catalan_general(g: int, n: int, mu: tuple[int, ...]) -> int:
    """C_{g,n}(mu) by the edge-contraction recursion, memoized on the
    sorted key.  mu entries must be nonnegative; zero entries are allowed
    and give 0 except for the seed C_{0,1}(0) = 1."""
    mu = tuple(int(x) for x in mu)
    if n != len(mu):
        raise ValueError("n must equal len(mu)")
    if g < 0 or n < 1:
        return 0
    if any(x < 0 for x in mu):
        raise ValueError("degrees must be nonnegative")
    key = (g, tuple(sorted(mu, reverse=True)))
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    val = _recursion_rhs(g, key[1])
    _MEMO[key] = val
    return val


def _recursion_rhs(g: int, mu: tuple[int, ...]) -> int:
    """One step of the recursion with mu[0] as the active vertex, exactly
    as stated; no symmetrization happens here (tests rely on that)."""
    n = len(mu)
    if g < 0 or n < 1:
        return 0
    if g == 0 and n == 1 and mu[0] == 0:
        return 1
    if any(x == 0 for x in mu):
        return 0
    if sum(mu) % 2:
        return 0
    total = 0
    rest = mu[1:]
    # contract an edge joining vertex 1 to vertex j
    for j in range(n - 1):
        merged = (mu[0] + rest[j] - 2,) + rest[:j] + rest[j + 1 :]
        if merged[0] >= 0:
            total += rest[j] * catalan_general(g, n - 1, merged)
    # contract a loop at vertex 1, splitting it
    for a in range(0, mu[0] - 1):
        b = mu[0] - 2 - a
        total += catalan_general(g - 1, n + 1, (a, b) + rest)
        for g1 in range(0, g + 1):
            g2 = g - g1
            for mask in range(1 << (n - 1)):
                mu_i = tuple(rest[t] for t in range(n - 1) if mask >> t & 1)
                mu_j = tuple(rest[t] for t in range(n - 1) if not mask >> t & 1)
                total += catalan_general(
                    g1, len(mu_i) + 1, (a,) + mu_i
                ) * catalan_general(g2, len(mu_j) + 1, (b,) + mu_j)
    return total


def z_series(trunc: int) -> TruncSeries:
    """The one-vertex generating series z(x) = sum_m C_m x^{-2m-1}, as an
    ascending series in the variable 1/x.  It satisfies x z = z^2 + 1, i.e.
    z is the branch of x = z + 1/z with z -> 0 as x -> infinity."""
    coeffs = {}
    m = 0
    while 2 * m + 1 <= trunc:
        coeffs[2 * m + 1] = Fraction(catalan_closed(m))
        m += 1
    return TruncSeries(trunc, coeffs)
