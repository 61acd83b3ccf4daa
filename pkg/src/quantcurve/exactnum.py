"""Exact rational scalars and small combinatorial primitives.

Everything downstream works over exact rationals; this module pins the
conventions.  Rationals are ``fractions.Fraction`` (always reduced, positive
denominator) and serialize as the string "p/q", with "/q" omitted when the
denominator is 1.  Integer partitions are descending tuples of positive
integers, serialized as plain int arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "rat_from_str",
    "rat_to_str",
    "double_factorial",
    "bernoulli",
    "partitions_of",
    "aut_order",
    "dim_irrep",
    "pochhammer",
    "pochhammer_hbar",
]


def rat_to_str(x: Fraction | int) -> str:
    """Serialize a rational as "p/q" ("p" when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    """Parse the "p/q" form produced by :func:`rat_to_str`."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def double_factorial(k: int) -> int:
    """k!! for odd k >= -1, with (-1)!! = 1.

    Only odd arguments are meaningful here: the values that occur are
    (2d - 1)!! for d >= 0.
    """
    if k % 2 == 0:
        raise ValueError(f"double_factorial needs odd k, got {k}")
    if k < -1:
        raise ValueError(f"double_factorial needs k >= -1, got {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n, convention B_1 = -1/2.

    Computed from sum_{k=0}^{n} C(n+1, k) B_k = 0, solved for B_n.
    """
    if n < 0:
        raise ValueError("Bernoulli numbers need n >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


def partitions_of(m: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of m as descending tuples, in reverse-lexicographic order.

    partitions_of(0) is [()]; p(6) = 11.
    """
    if m < 0:
        raise ValueError("partitions need m >= 0")
    if max_part is None:
        max_part = m
    if m == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions_of(m - first, first):
            out.append((first,) + rest)
    return out


def aut_order(parts: tuple[int, ...]) -> int:
    """Order of the automorphism group of a partition: prod over part
    values of (multiplicity)!.  Divides len(parts)!."""
    mult: dict[int, int] = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    out = 1
    for m in mult.values():
        out *= math.factorial(m)
    return out


def dim_irrep(parts: tuple[int, ...]) -> int:
    """Dimension of the irreducible S_d representation indexed by a
    partition of d, by the hook length formula.  dim of the empty
    partition is 1."""
    if any(p <= 0 for p in parts):
        raise ValueError("partition parts must be positive")
    if list(parts) != sorted(parts, reverse=True):
        raise ValueError("partition must be descending")
    d = sum(parts)
    if d == 0:
        return 1
    # hook(i,j) = (arm) + (leg) + 1 in the Young diagram
    cols = [0] * (parts[0] if parts else 0)
    for row in parts:
        for j in range(row):
            cols[j] += 1
    hooks = 1
    for i, row in enumerate(parts):
        for j in range(row):
            hooks *= (row - j - 1) + (cols[j] - i - 1) + 1
    dim, rem = divmod(math.factorial(d), hooks)
    if rem:
        raise ValueError("hook product does not divide d!")
    return dim


def pochhammer(a: Fraction, n: int) -> Fraction:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = Fraction(1)
    a = Fraction(a)
    for j in range(n):
        out *= a + j
    return out


def pochhammer_hbar(n: int) -> dict[int, Fraction]:
    """(1/h)_n as a Laurent polynomial in h, returned as {exponent: coeff}.

    (1/h)_n = h^{-n} prod_{j=0}^{n-1} (1 + j h); the lowest exponent is -n.
    """
    if n < 0:
        raise ValueError("pochhammer_hbar needs n >= 0")
    coeffs = {-n: Fraction(1)}
    for j in range(n):
        nxt: dict[int, Fraction] = {}
        for e, c in coeffs.items():
            nxt[e] = nxt.get(e, Fraction(0)) + c
            if j:
                nxt[e + 1] = nxt.get(e + 1, Fraction(0)) + c * j
        coeffs = nxt
    return {e: c for e, c in coeffs.items() if c}
