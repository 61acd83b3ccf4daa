"""Exact polynomial and series arithmetic.

Four rings cover everything downstream:

* :class:`LaurentPoly` -- sparse multivariate Laurent polynomials over
  Fraction, exponents in Z^arity.
* :class:`HbarLaurent` -- Laurent polynomials in a single deformation
  parameter h (finite principal part), used as a coefficient ring.
* :class:`TruncSeries` -- truncated power series in one variable with an
  explicit truncation order K and min-propagation under arithmetic.
  Coefficients are Fractions or HbarLaurent values.
* :class:`RationalFunction` -- quotients of dense univariate polynomials,
  reduced by content only; equality is decided by cross-multiplication,
  never by polynomial gcd.

No floating point anywhere; every operation either is exact or raises.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .kernels import add_terms, mul_terms, scale_terms, sub_terms

__all__ = [
    "ExactDivisionError",
    "LaurentPoly",
    "HbarLaurent",
    "TruncSeries",
    "RationalFunction",
    "residue_at",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_derivative",
    "poly_eval",
    "poly_compose",
    "poly_divmod",
    "poly_gcd",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def _as_coeff(c):
    if isinstance(c, (Fraction, HbarLaurent)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


# ---------------------------------------------------------------------------
# LaurentPoly


class LaurentPoly:
    """Sparse Laurent polynomial in `arity` variables over Fraction.

    Terms map exponent tuples to nonzero coefficients.  The canonical term
    order used for serialization and printing is graded lexicographic:
    ascending total degree, ties broken by the exponent tuple.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        clean: dict = {}
        if terms:
            for e, c in terms.items():
                c = _as_coeff(c)
                if not isinstance(c, Fraction):
                    raise TypeError("LaurentPoly coefficients must be Fraction")
                if len(e) != arity:
                    raise ValueError("exponent arity mismatch")
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, arity: int) -> "LaurentPoly":
        return cls(arity, {})

    @classmethod
    def const(cls, arity: int, c) -> "LaurentPoly":
        return cls(arity, {(0,) * arity: Fraction(c)})

    @classmethod
    def var(cls, arity: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * arity
        e[i] = power
        return cls(arity, {tuple(e): _F1})

    @classmethod
    def monomial(cls, arity: int, exps: Sequence[int], c) -> "LaurentPoly":
        return cls(arity, {tuple(exps): Fraction(c)})

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "LaurentPoly":
        out = object.__new__(cls)
        out.arity = arity
        out.terms = terms
        return out

    # -- basics

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return LaurentPoly._raw(self.arity, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return LaurentPoly._raw(self.arity, sub_terms(self.terms, other.terms))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly._raw(self.arity, scale_terms(self.terms, Fraction(other)))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return LaurentPoly._raw(self.arity, mul_terms(self.terms, other.terms, self.arity))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) == 1:
                ((e, c),) = self.terms.items()
                return LaurentPoly(
                    self.arity, {tuple(x * n for x in e): c**n}
                )
            raise ValueError("negative powers only for monomials")
        out = LaurentPoly.const(self.arity, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- structure queries

    def coefficient_of(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), _F0)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(e[i] for e in self.terms)

    def min_in(self, i: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return min(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient_in_var(self, i: int, e: int) -> "LaurentPoly":
        """Slice: the coefficient of (variable i)^e, exponent slot i zeroed."""
        out: dict = {}
        for exps, c in self.terms.items():
            if exps[i] == e:
                k = list(exps)
                k[i] = 0
                out[tuple(k)] = c
        return LaurentPoly._raw(self.arity, out)

    # -- substitutions

    def partial_derivative(self, i: int) -> "LaurentPoly":
        out: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                k = list(e)
                k[i] -= 1
                out[tuple(k)] = c * e[i]
        return LaurentPoly._raw(self.arity, out)

    def subs_value(self, i: int, value) -> "LaurentPoly":
        """Substitute a rational for variable i (slot keeps exponent 0)."""
        value = Fraction(value)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] < 0 and value == 0:
                raise ZeroDivisionError("substituting 0 into a negative power")
            if value == 0 and e[i] > 0:
                continue
            k = list(e)
            k[i] = 0
            k = tuple(k)
            c2 = c * value ** e[i]
            s = out.get(k, _F0) + c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.arity, out)

    def subs_var(self, i: int, j: int, sign: int = 1) -> "LaurentPoly":
        """Substitute variable i := sign * variable j (sign is +-1)."""
        if sign not in (1, -1):
            raise ValueError("sign must be +-1")
        out: dict = {}
        for e, c in self.terms.items():
            k = list(e)
            ei = k[i]
            k[i] = 0
            k[j] += ei
            if sign == -1 and ei % 2:
                c = -c
            k = tuple(k)
            s = out.get(k, _F0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.arity, out)

    def flip_sign(self, i: int) -> "LaurentPoly":
        """Variable i := -(variable i)."""
        return LaurentPoly._raw(
            self.arity,
            {e: (-c if e[i] % 2 else c) for e, c in self.terms.items()},
        )

    def embed(self, new_arity: int, positions: Sequence[int]) -> "LaurentPoly":
        """Map variable k of self to variable positions[k] of a wider ring."""
        if len(positions) != self.arity:
            raise ValueError("positions must list every variable")
        out: dict = {}
        for e, c in self.terms.items():
            k = [0] * new_arity
            for idx, ex in enumerate(e):
                k[positions[idx]] += ex
            k = tuple(k)
            s = out.get(k, _F0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(new_arity, out)

    def reciprocal_vars(self) -> "LaurentPoly":
        """Substitute 1/t_i for every variable (negate all exponents)."""
        return LaurentPoly._raw(
            self.arity, {tuple(-x for x in e): c for e, c in self.terms.items()}
        )

    def drop_var(self, i: int) -> "LaurentPoly":
        """Remove a variable that no term uses."""
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] != 0:
                raise ValueError(f"variable {i} still occurs")
            out[e[:i] + e[i + 1 :]] = c
        return LaurentPoly._raw(self.arity - 1, out)

    def eval_all(self, values: Sequence) -> Fraction:
        out = _F0
        vals = [Fraction(v) for v in values]
        for e, c in self.terms.items():
            term = c
            for i, ex in enumerate(e):
                if ex:
                    if vals[i] == 0 and ex < 0:
                        raise ZeroDivisionError("pole at evaluation point")
                    term *= vals[i] ** ex
            out += term
        return out

    def is_symmetric(self) -> bool:
        """Invariance under all variable permutations (checked on the
        adjacent transpositions, which generate the full group)."""
        for i in range(self.arity - 1):
            swapped = {}
            for e, c in self.terms.items():
                k = list(e)
                k[i], k[i + 1] = k[i + 1], k[i]
                swapped[tuple(k)] = c
            if swapped != self.terms:
                return False
        return True

    # -- exact division

    def exact_div_monomial(self, exps: Sequence[int], c=1) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            raise ZeroDivisionError
        shift = tuple(exps)
        return LaurentPoly._raw(
            self.arity,
            {
                tuple(x - s for x, s in zip(e, shift)): v / c
                for e, v in self.terms.items()
            },
        )

    def exact_div_var_binomial(self, i: int, j: int, k: int, c: Fraction) -> "LaurentPoly":
        """Exact division by (t_i^k - c * t_j^k); raises ExactDivisionError
        if a remainder survives.

        Long division from the top t_i-degree.  For an exact quotient q the
        bottom slice of self in t_i equals the bottom slice of q times the
        divisor's constant-in-t_i term, so the top degree of the working
        remainder can never drop below min_i(self) + k; that bound is the
        rejection certificate.
        """
        if i == j:
            raise ValueError("divisor variables must differ")
        c = Fraction(c)
        if not self.terms:
            return LaurentPoly.zero(self.arity)
        rem = dict(self.terms)
        qout: dict = {}
        floor = min(e[i] for e in rem)
        while rem:
            top = max(e[i] for e in rem)
            if top < floor + k:
                raise ExactDivisionError(
                    f"not divisible by t{i}^{k} - ({c}) t{j}^{k}"
                )
            slice_terms = [(e, v) for e, v in rem.items() if e[i] == top]
            for e, v in slice_terms:
                qe = list(e)
                qe[i] -= k
                qe = tuple(qe)
                qout[qe] = qout.get(qe, _F0) + v
                if not qout[qe]:
                    del qout[qe]
                # subtract v * t^qe * (t_i^k - c t_j^k)
                del rem[e]
                be = list(qe)
                be[j] += k
                be = tuple(be)
                nv = rem.get(be, _F0) + c * v
                if nv:
                    rem[be] = nv
                else:
                    rem.pop(be, None)
        return LaurentPoly._raw(self.arity, qout)

    # -- serialization and display

    def terms_sorted(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def to_json(self) -> dict:
        from .exactnum import rat_to_str

        return {
            "arity": self.arity,
            "terms": [
                {"exp": list(e), "coeff": rat_to_str(c)}
                for e, c in self.terms_sorted()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        from .exactnum import rat_from_str

        return cls(
            data["arity"],
            {tuple(t["exp"]): rat_from_str(t["coeff"]) for t in data["terms"]},
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPoly(0)"
        bits = []
        for e, c in self.terms_sorted()[:8]:
            mono = "*".join(
                f"t{i}^{x}" for i, x in enumerate(e) if x
            ) or "1"
            bits.append(f"{c}*{mono}")
        more = "" if len(self.terms) <= 8 else f" +{len(self.terms) - 8} terms"
        return f"LaurentPoly({' + '.join(bits)}{more})"


# ---------------------------------------------------------------------------
# HbarLaurent


class HbarLaurent:
    """Laurent polynomial in the deformation parameter h.

    Structurally an arity-1 LaurentPoly, but used as a coefficient ring, so
    it gets its own lightweight type with full scalar interop.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def const(cls, c) -> "HbarLaurent":
        return cls({0: Fraction(c)})

    @classmethod
    def h(cls, k: int = 1) -> "HbarLaurent":
        return cls({k: _F1})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = HbarLaurent.const(other)
        if not isinstance(other, HbarLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self) -> "HbarLaurent":
        return HbarLaurent({e: -c for e, c in self.coeffs.items()})

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return HbarLaurent.const(other)
        if isinstance(other, HbarLaurent):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            s = out.get(e, _F0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return HbarLaurent(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = e1 + e2
                s = out.get(e, _F0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return HbarLaurent(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return HbarLaurent({e: c / q for e, c in self.coeffs.items()})
        if isinstance(other, HbarLaurent) and len(other.coeffs) == 1:
            ((e0, c0),) = other.coeffs.items()
            return HbarLaurent(
                {e - e0: c / c0 for e, c in self.coeffs.items()}
            )
        raise TypeError("HbarLaurent division needs a monomial divisor")

    def __pow__(self, n: int) -> "HbarLaurent":
        if n < 0:
            if len(self.coeffs) == 1:
                ((e, c),) = self.coeffs.items()
                return HbarLaurent({e * n: c**n})
            raise ValueError("negative powers only for monomials")
        out = HbarLaurent.const(1)
        base = self
        for _ in range(n):
            out = out * base
        return out

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero element has no valuation")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero element has no degree")
        return max(self.coeffs)

    def coefficient(self, e: int) -> Fraction:
        return self.coeffs.get(e, _F0)

    def d_dh(self) -> "HbarLaurent":
        return HbarLaurent(
            {e - 1: c * e for e, c in self.coeffs.items() if e}
        )

    def subs_one(self) -> Fraction:
        return sum(self.coeffs.values(), _F0)

    def truncate_above(self, m: int) -> "HbarLaurent":
        return HbarLaurent({e: c for e, c in self.coeffs.items() if e <= m})

    def restrict(self, lo: int, hi: int) -> "HbarLaurent":
        return HbarLaurent(
            {e: c for e, c in self.coeffs.items() if lo <= e <= hi}
        )

    def to_json(self) -> list:
        from .exactnum import rat_to_str

        return [[e, rat_to_str(c)] for e, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data: list) -> "HbarLaurent":
        from .exactnum import rat_from_str

        return cls({int(e): rat_from_str(c) for e, c in data})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "HbarLaurent(0)"
        bits = [f"{c}*h^{e}" for e, c in sorted(self.coeffs.items())]
        return f"HbarLaurent({' + '.join(bits)})"


# ---------------------------------------------------------------------------
# TruncSeries


def _czero(sample):
    return HbarLaurent() if isinstance(sample, HbarLaurent) else _F0


class TruncSeries:
    """Power series in one variable, truncated after exponent `trunc`.

    Exponents may be negative (Laurent tails created by multiplying a series
    by a negative power of the variable).  Arithmetic propagates the minimum
    reliable truncation order; using coefficients past `trunc` is a bug and
    impossible by construction since they are never stored.
    """

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs: dict | None = None):
        self.trunc = trunc
        clean: dict = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _as_coeff(c)
                if e <= trunc and c:
                    clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, trunc: int) -> "TruncSeries":
        return cls(trunc, {})

    @classmethod
    def one(cls, trunc: int) -> "TruncSeries":
        return cls(trunc, {0: _F1})

    @classmethod
    def x(cls, trunc: int, power: int = 1) -> "TruncSeries":
        return cls(trunc, {power: _F1})

    @classmethod
    def from_coeffs(cls, trunc: int, seq: Iterable) -> "TruncSeries":
        return cls(trunc, {i: c for i, c in enumerate(seq)})

    def valuation(self) -> int:
        """Smallest stored exponent; for the zero series, trunc + 1 (the
        best that is known)."""
        if not self.coeffs:
            return self.trunc + 1
        return min(self.coeffs)

    def coefficient(self, e: int):
        if e > self.trunc:
            raise ValueError(f"coefficient {e} beyond truncation {self.trunc}")
        return self.coeffs.get(e, _F0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def agrees_with(self, other: "TruncSeries", upto: int) -> bool:
        if upto > min(self.trunc, other.trunc):
            raise ValueError("comparison beyond known coefficients")
        for e in range(min(self.valuation(), other.valuation()), upto + 1):
            a = self.coeffs.get(e)
            b = other.coeffs.get(e)
            if (a or b) and (a is None or b is None or a != b):
                return False
        return True

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.trunc, {e: -c for e, c in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, HbarLaurent)):
            other = TruncSeries(self.trunc, {0: other})
        if not isinstance(other, TruncSeries):
            return NotImplemented
        k = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.coeffs.items() if e <= k}
        for e, c in other.coeffs.items():
            if e > k:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncSeries(k, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, HbarLaurent)):
            other = TruncSeries(self.trunc, {0: other})
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HbarLaurent)):
            if not other:
                return TruncSeries(self.trunc, {})
            return TruncSeries(
                self.trunc, {e: c * other for e, c in self.coeffs.items()}
            )
        if not isinstance(other, TruncSeries):
            return NotImplemented
        # unknown terms of the product start at min(Ka+1+vb, Kb+1+va)
        k = min(
            self.trunc + other.valuation(), other.trunc + self.valuation()
        )
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > k:
                    continue
                p = c1 * c2
                s = out.get(e)
                s = p if s is None else s + p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncSeries(k, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by variable^k (k may be negative)."""
        return TruncSeries(
            self.trunc + k, {e + k: c for e, c in self.coeffs.items()}
        )

    def truncate(self, k: int) -> "TruncSeries":
        if k > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(k, {e: c for e, c in self.coeffs.items() if e <= k})

    def map_coeffs(self, fn: Callable) -> "TruncSeries":
        return TruncSeries(self.trunc, {e: fn(c) for e, c in self.coeffs.items()})

    def derivative(self) -> "TruncSeries":
        return TruncSeries(
            self.trunc - 1,
            {e - 1: c * e for e, c in self.coeffs.items() if e},
        )

    def integrate(self) -> "TruncSeries":
        """Termwise antiderivative with constant 0; a 1/x term is an error."""
        out: dict = {}
        for e, c in self.coeffs.items():
            if e == -1:
                raise ValueError("integral of x^-1 leaves the ring")
            out[e + 1] = c * Fraction(1, e + 1)
        return TruncSeries(self.trunc + 1, out)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncSeries.one(self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner); inner must have valuation >= 1."""
        if self.coeffs and min(self.coeffs) < 0:
            raise ValueError("compose needs a power series outer factor")
        if inner.coeffs and inner.valuation() < 1:
            raise ValueError("compose needs inner valuation >= 1")
        v = max(inner.valuation(), 1)
        k = min(inner.trunc, (self.trunc + 1) * v - 1)
        out = TruncSeries.zero(k)
        power = TruncSeries.one(k)
        for e in range(0, self.trunc + 1):
            c = self.coeffs.get(e)
            if c is not None:
                out = out + power * c
            if (e + 1) * v > k and e >= max(self.coeffs, default=0):
                break
            power = power * inner.truncate(min(k, inner.trunc))
        return out

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse of a series with invertible leading term.

        The valuation may be nonzero; the result is the matching Laurent
        tail.  Works for Fraction coefficients and for HbarLaurent leading
        coefficients that are monomials in h.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero series")
        v = self.valuation()
        lead = self.coeffs[v]
        if isinstance(lead, Fraction):
            lead_inv = 1 / lead
        else:
            lead_inv = HbarLaurent.const(1) / lead
        # reduce to 1 + u with u of positive valuation
        k = self.trunc - v
        u = TruncSeries(
            k, {e - v: c * lead_inv for e, c in self.coeffs.items() if e != v}
        )
        geom = TruncSeries.one(k)
        term = TruncSeries.one(k)
        for _ in range(k):
            term = term * (-u)
            if term.is_zero():
                break
            geom = geom + term
        return TruncSeries(
            k - v, {e - v: c * lead_inv for e, c in geom.coeffs.items()}
        )

    def log(self) -> "TruncSeries":
        """log of a series with constant term exactly 1."""
        if self.coefficient(0) != _F1 and self.coefficient(0) != HbarLaurent.const(1):
            raise ValueError("log needs constant term 1")
        if self.valuation() < 0:
            raise ValueError("log needs a power series")
        u = self - 1
        out = TruncSeries.zero(self.trunc)
        term = TruncSeries.one(self.trunc)
        for j in range(1, self.trunc + 1):
            term = term * u
            if term.is_zero():
                break
            out = out + term * Fraction((-1) ** (j + 1), j)
        return out

    def exp(self) -> "TruncSeries":
        """exp of a series with zero constant term."""
        if self.coefficient(0):
            raise ValueError("exp needs zero constant term")
        if self.valuation() < 0:
            raise ValueError("exp needs a power series")
        out = TruncSeries.one(self.trunc)
        term = TruncSeries.one(self.trunc)
        for j in range(1, self.trunc + 1):
            term = term * self * Fraction(1, j)
            if term.is_zero():
                break
            out = out + term
        return out

    def reversion(self) -> "TruncSeries":
        """Compositional inverse g with self(g) = x.

        Needs valuation exactly 1 and Fraction coefficients; the linear
        coefficient must be invertible (it is, over Q, whenever nonzero).
        """
        if self.valuation() != 1:
            raise ValueError("reversion needs valuation exactly 1")
        c1 = self.coeffs[1]
        if not isinstance(c1, Fraction):
            raise TypeError("reversion implemented over Fraction coefficients")
        k = self.trunc
        g = TruncSeries(k, {1: 1 / c1})
        for m in range(2, k + 1):
            err = self.compose(g).coefficient(m)
            if err:
                g = g + TruncSeries(k, {m: -err / c1})
        return g

    def to_json(self) -> dict:
        from .exactnum import rat_to_str

        def enc(c):
            return c.to_json() if isinstance(c, HbarLaurent) else rat_to_str(c)

        return {
            "trunc": self.trunc,
            "coeffs": [[e, enc(c)] for e, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncSeries":
        from .exactnum import rat_from_str

        def dec(c):
            return HbarLaurent.from_json(c) if isinstance(c, list) else rat_from_str(c)

        return cls(int(data["trunc"]), {int(e): dec(c) for e, c in data["coeffs"]})

    def __repr__(self) -> str:
        bits = [f"({c})*x^{e}" for e, c in sorted(self.coeffs.items())[:6]]
        return f"TruncSeries[{' + '.join(bits) or '0'} + O(x^{self.trunc + 1})]"


# ---------------------------------------------------------------------------
# dense univariate polynomials (coefficient lists, index = exponent)


def poly_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else _F0
        y = b[i] if i < len(b) else _F0
        out.append(x + y)
    return poly_trim(out)


def poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else _F0
        y = b[i] if i < len(b) else _F0
        out.append(x - y)
    return poly_trim(out)


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_scale(a: Sequence, c) -> list:
    if not c:
        return []
    return poly_trim([x * c for x in a])


def poly_derivative(a: Sequence) -> list:
    return poly_trim([a[i] * i for i in range(1, len(a))])


def poly_eval(a: Sequence, x):
    out = None
    for c in reversed(list(a)):
        out = c if out is None else out * x + c
    if out is None:
        return _F0
    return out


def poly_compose(a: Sequence, inner: Sequence) -> list:
    """a(inner) by Horner over polynomial arithmetic."""
    out: list = []
    for c in reversed(list(a)):
        out = poly_mul(out, list(inner))
        out = poly_add(out, [c])
    return out


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Quotient and remainder over Fraction coefficients."""
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q: list = [_F0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and poly_trim(r):
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[shift] = q[shift] + factor
        for i, c in enumerate(b):
            r[shift + i] = r[shift + i] - factor * c
        poly_trim(r)
    return poly_trim(q), poly_trim(r)


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Fraction coefficients."""
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_yun(a: Sequence) -> list[tuple[list, int]]:
    """Squarefree decomposition by Yun's algorithm.

    Returns [(b, m), ...] with a = lead * prod b^m, the b monic, squarefree,
    pairwise coprime, and nonconstant.  Constants decompose to [].
    """
    a = poly_trim(list(a))
    if not a:
        raise ZeroDivisionError("zero polynomial")
    a = [c / a[-1] for c in a]
    if len(a) == 1:
        return []
    g = poly_gcd(a, poly_derivative(a))
    c, _ = poly_divmod(a, g)
    t, _ = poly_divmod(poly_derivative(a), g)
    d = poly_sub(t, poly_derivative(c))
    out = []
    m = 1
    while len(c) > 1:
        p = poly_gcd(c, d)
        if len(p) > 1:
            out.append((p, m))
        c, _ = poly_divmod(c, p)
        t, _ = poly_divmod(d, p)
        d = poly_sub(t, poly_derivative(c))
        m += 1
    return out


def substitute_series(
    poly: "LaurentPoly", series: "TruncSeries", order: int
) -> dict[tuple[int, ...], Fraction]:
    """Expand poly(s(x_1), ..., s(x_n)) for a single series s, one variable
    per slot, keeping coefficients of prod x_i^{k_i} with 0 <= k_i <= order.

    The series must be invertible (nonzero constant term) whenever poly has
    negative exponents.  Substitution runs one slot at a time, so keys are
    mixed (expanded..., pending exponents...) tuples internally.
    """
    powers: dict[int, list] = {}
    for e in {x for term in poly.terms for x in term}:
        pe = series**e if e >= 0 else series.inverse() ** (-e)
        powers[e] = [pe.coefficient(k) for k in range(order + 1)]
    table: dict[tuple[int, ...], Fraction] = dict(poly.terms)
    for pos in range(poly.arity):
        nxt: dict[tuple[int, ...], Fraction] = {}
        for key, c in table.items():
            vec = powers[key[pos]]
            for m in range(order + 1):
                cm = vec[m]
                if not cm:
                    continue
                k = key[:pos] + (m,) + key[pos + 1 :]
                s = nxt.get(k, _F0) + c * cm
                if s:
                    nxt[k] = s
                else:
                    nxt.pop(k, None)
        table = nxt
    return table


# ---------------------------------------------------------------------------
# RationalFunction


class RationalFunction:
    """Quotient of dense univariate polynomials.

    The coefficient ring is Fraction or HbarLaurent.  Fractions are reduced
    by content (and the denominator's leading sign) only; structural gcd
    cancellation never happens, and equality is by cross-multiplication,
    so unreduced representatives compare correctly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence = (_F1,)):
        num = poly_trim([_as_coeff(c) for c in num])
        den = poly_trim([_as_coeff(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [_F1]
        elif all(isinstance(c, Fraction) for c in num + den):
            def content(p):
                g = 0
                l = 1
                for c in p:
                    g = math.gcd(g, c.numerator)
                    l = l * c.denominator // math.gcd(l, c.denominator)
                return Fraction(g, l) if g else _F1

            scale = content(num + den)
            if den[-1] < 0:
                scale = -scale
            num = [c / scale for c in num]
            den = [c / scale for c in den]
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, c) -> "RationalFunction":
        return cls([_as_coeff(c)])

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls([_F0, _F1])

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, HbarLaurent)):
            other = RationalFunction.from_const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return poly_sub(
            poly_mul(self.num, other.den), poly_mul(other.num, self.den)
        ) == []

    def __neg__(self) -> "RationalFunction":
        return RationalFunction([-c for c in self.num], self.den)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, HbarLaurent)):
            return RationalFunction.from_const(other)
        if isinstance(other, RationalFunction):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            poly_mul(self.num, o.num), poly_mul(self.den, o.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError
        return RationalFunction(
            poly_mul(self.num, o.den), poly_mul(self.den, o.num)
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return (RationalFunction.from_const(1) / self) ** (-n)
        out = RationalFunction.from_const(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            poly_sub(
                poly_mul(poly_derivative(self.num), self.den),
                poly_mul(self.num, poly_derivative(self.den)),
            ),
            poly_mul(self.den, self.den),
        )

    def eval(self, x):
        dv = poly_eval(self.den, x)
        if not dv:
            raise ZeroDivisionError("pole at evaluation point")
        return poly_eval(self.num, x) / dv

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        out = RationalFunction.from_const(0)
        power = RationalFunction.from_const(1)
        n = RationalFunction.from_const(0)
        for c in self.num:
            n = n + power * c
            power = power * inner
        power = RationalFunction.from_const(1)
        d = RationalFunction.from_const(0)
        for c in self.den:
            d = d + power * c
            power = power * inner
        out = n / d
        return out

    def flip_sign_var(self) -> "RationalFunction":
        """x := -x."""
        return RationalFunction(
            [c if i % 2 == 0 else -c for i, c in enumerate(self.num)],
            [c if i % 2 == 0 else -c for i, c in enumerate(self.den)],
        )

    def subs_inverse_var(self) -> "RationalFunction":
        """x := 1/u, returned as a rational function of u."""
        m = max(len(self.num), len(self.den)) - 1
        num = [_F0] * (m + 1)
        den = [_F0] * (m + 1)
        for i, c in enumerate(self.num):
            num[m - i] = c
        for i, c in enumerate(self.den):
            den[m - i] = c
        return RationalFunction(poly_trim(num), poly_trim(den))

    def pole_order_at(self, a: Fraction) -> int:
        """Order of the pole at x = a (negative means a zero of that order).

        Requires Fraction coefficients.  Counts (x - a) factors of the
        denominator minus those of the numerator via synthetic division.
        """

        def mult(p: list) -> int:
            if not p:
                raise ZeroDivisionError("zero polynomial")
            m = 0
            while True:
                q, r = poly_divmod(p, [-a, _F1])
                if r:
                    return m
                m += 1
                p = q

        return mult(list(self.den)) - mult(list(self.num)) if self.num else -(10**9)

    def pole_order_at_infinity(self) -> int:
        if not self.num:
            return -(10**9)
        return (len(self.num) - 1) - (len(self.den) - 1)

    def as_laurent_coeffs(self) -> dict[int, Fraction]:
        """The function as a Laurent polynomial {exp: coeff}, when the
        denominator is a monomial (after the constructor's normalization)."""
        nz = [i for i, c in enumerate(self.den) if c]
        if len(nz) != 1:
            raise ValueError("denominator is not a monomial")
        v = nz[0]
        lead = self.den[v]
        return {i - v: c / lead for i, c in enumerate(self.num) if c}

    def to_json(self) -> dict:
        from .exactnum import rat_to_str

        def enc(c):
            return c.to_json() if isinstance(c, HbarLaurent) else rat_to_str(c)

        return {
            "num": [enc(c) for c in self.num],
            "den": [enc(c) for c in self.den],
        }

    def __repr__(self) -> str:
        return f"RationalFunction({self.num} / {self.den})"


# ---------------------------------------------------------------------------
# structured residues at rational points


def residue_at(
    parts: Sequence[tuple[LaurentPoly, Fraction, int]], a: Fraction
) -> Fraction:
    """Residue at t = a of sum_k A_k(t) / (t - a_k)^{m_k}.

    Each part is (A_k, a_k, m_k) with A_k an arity-1 Laurent polynomial
    regular at every listed pole other than its own.  Only simple and
    double poles occur in this package: m = 1 gives A(a), m = 2 gives
    A'(a); higher multiplicities are rejected.
    """
    a = Fraction(a)
    out = _F0
    for numer, ak, m in parts:
        if numer.arity != 1:
            raise ValueError("residue_at needs univariate numerators")
        if Fraction(ak) != a:
            continue
        if m == 1:
            out += numer.eval_all([a])
        elif m == 2:
            out += numer.partial_derivative(0).eval_all([a])
        else:
            raise ValueError(f"pole multiplicity {m} not supported")
    return out
