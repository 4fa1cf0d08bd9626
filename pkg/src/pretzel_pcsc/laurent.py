"""Exact Laurent polynomial arithmetic in the variable s = t^(1/2).

Coefficients are arbitrary-precision Python integers from the start; bracket
state sums already overflow 64 bits for twist parameters around 31.  A power
t^e is stored as the s-exponent 2e, so a genuine knot polynomial has only
even s-exponents.  Odd s-exponents are legal values (links produce them) but
trip :class:`~pretzel_pcsc.errors.OddExponent` in the t-derivative, which is
a deliberate convention tripwire.

Exact rationals (used for w3) are plain :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import OddExponent

Rational = Fraction


class LaurentPoly:
    """A Laurent polynomial in s with integer coefficients.

    Instances are immutable: every operation returns a new polynomial.
    The empty coefficient mapping represents 0.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c != 0:
                    clean[int(e)] = int(c)
        self._coeffs = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, s_exp: int) -> "LaurentPoly":
        """coeff * s^s_exp"""
        return cls({s_exp: coeff})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e, c in pairs:
            acc[e] = acc.get(e, 0) + c
        return cls(acc)

    # -- inspection --------------------------------------------------

    def coeff(self, s_exp: int) -> int:
        return self._coeffs.get(s_exp, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    def to_pairs(self) -> list[list[int]]:
        """Canonical form for JSON output: [[s_exp, coeff], ...] ascending."""
        return [[e, self._coeffs[e]] for e in sorted(self._coeffs)]

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) - c
        return LaurentPoly(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return LaurentPoly()
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not defined for LaurentPoly")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    # -- specialisations ----------------------------------------------

    def substitute_inverse(self) -> "LaurentPoly":
        """s -> s^(-1), i.e. t -> t^(-1); used for mirror checks."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def t_derivative_at_one(self, k: int) -> int:
        """k-th derivative with respect to t, evaluated at t = 1.

        Requires every s-exponent to be even (the polynomial lives in
        Z[t, t^-1]); an odd exponent signals a link or a convention bug
        upstream and raises OddExponent.  k = 0 is evaluation at t = 1.
        """
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        total = 0
        for s_exp, c in self._coeffs.items():
            if s_exp % 2:
                raise OddExponent(
                    f"s-exponent {s_exp} is odd; not a polynomial in t"
                )
            e = s_exp // 2
            term = c
            for j in range(k):
                term *= e - j
            total += term
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({self._coeffs!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            if e == 0:
                mon = ""
            elif e == 1:
                mon = "s"
            else:
                mon = f"s^{e}"
            if mon and abs(c) == 1:
                term = ("-" if c < 0 else "") + mon
            else:
                term = f"{c}{mon}" if mon else str(c)
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out


#: -s - s^(-1): the Kauffman/Jones value of an extra unlink component.
UNLINK_FACTOR = LaurentPoly({1: -1, -1: -1})
