"""Integer Laurent polynomials in one variable.

Small self-contained arithmetic used by the invariant computations; the
variable name is cosmetic and only affects printing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Tuple


@dataclass(frozen=True)
class LaurentPolynomial:
    """An integer Laurent polynomial, stored sparsely by exponent."""

    coeffs: Tuple[Tuple[int, int], ...]  # sorted (exponent, coefficient)
    var: str = "t"

    @staticmethod
    def make(data: Dict[int, int], var: str = "t") -> "LaurentPolynomial":
        items = tuple(sorted((e, c) for e, c in data.items() if c != 0))
        return LaurentPolynomial(items, var)

    @staticmethod
    def zero(var: str = "t") -> "LaurentPolynomial":
        return LaurentPolynomial((), var)

    @staticmethod
    def one(var: str = "t") -> "LaurentPolynomial":
        return LaurentPolynomial(((0, 1),), var)

    @staticmethod
    def monomial(exp: int, coeff: int = 1, var: str = "t") -> "LaurentPolynomial":
        return LaurentPolynomial.make({exp: coeff}, var)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.make(d, self.var)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) - c
        return LaurentPolynomial.make(d, self.var)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.coeffs), self.var)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d: Dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPolynomial.make(d, self.var)

    def scale(self, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        """coeff * x**exp * self"""
        return LaurentPolynomial(
            tuple((e + exp, c * coeff) for e, c in self.coeffs), self.var
        )

    def reverse(self) -> "LaurentPolynomial":
        """Substitute x -> 1/x."""
        return LaurentPolynomial(
            tuple(sorted((-e, c) for e, c in self.coeffs)), self.var
        )

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[0][0]

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1][0]

    def span(self) -> int:
        return self.max_exp() - self.min_exp()

    def evaluate(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self.coeffs:
            total += c * x ** e
        return total

    def is_symmetric(self) -> bool:
        return self == self.reverse()

    def normalized_symmetric(self) -> "LaurentPolynomial":
        """Recentre exponents and fix the overall sign: the canonical
        representative up to units, with positive leading coefficient.
        Used for Alexander polynomials, which are symmetric after
        recentring."""
        if not self.coeffs:
            return self
        shift = -(self.min_exp() + self.max_exp())
        if shift % 2 != 0:
            # symmetric Laurent polynomials of odd span do not occur for
            # the invariants computed here; keep exponents integral by
            # shifting to minimal degree 0 instead
            shift = -2 * self.min_exp()
        p = LaurentPolynomial(
            tuple((e + shift // 2, c) for e, c in self.coeffs), self.var
        )
        if p.coeffs[-1][1] < 0:
            p = -p
        return p

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            if e == 0:
                term = str(abs(c))
            else:
                mono = self.var if e == 1 else "%s^%d" % (self.var, e)
                term = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append((" - " if c < 0 else " + ") + term)
        return "".join(parts)


def torus_jones(p: int, q: int) -> LaurentPolynomial:
    """Jones polynomial of the positive (p,q) torus knot, in the variable
    s = t^(1/2):  t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2).
    Shipped as an independent oracle for the torus-family entries.
    """
    num: Dict[int, int] = {}
    base = (p - 1) * (q - 1)  # exponent in s of the prefactor
    for e, c in ((0, 1), (2 * (p + 1), -1), (2 * (q + 1), -1), (2 * (p + q), 1)):
        num[base + e] = num.get(base + e, 0) + c
    # divide by 1 - t^2 = 1 - s^4
    out: Dict[int, int] = {}
    work = dict(num)
    while any(work.values()):
        e = min(ee for ee, cc in work.items() if cc != 0)
        c = work[e]
        out[e] = c
        work[e] = 0
        work[e + 4] = work.get(e + 4, 0) + c
    return LaurentPolynomial.make(out, "s")
