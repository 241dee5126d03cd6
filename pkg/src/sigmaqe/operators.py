"""Integer Laurent polynomials in the automorphism symbol.

These are the coefficients of terms over ordered difference abelian groups:
finite integer combinations of powers of the automorphism ``s``, with
negative powers allowed because the automorphism is invertible.  Multiplying
by a power of ``s`` never changes the sign of a value at a positive point,
so sign queries may normalize away the negative exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, strip


@dataclass(frozen=True)
class LaurentOperator:
    """Map from exponent (power of the automorphism) to integer coefficient.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients; the zero operator has an empty tuple.
    """

    coeffs: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentOperator":
        return LaurentOperator(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def constant(c: int) -> "LaurentOperator":
        return LaurentOperator.from_dict({0: c})

    @staticmethod
    def sigma_power(e: int) -> "LaurentOperator":
        return LaurentOperator.from_dict({e: 1})

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "LaurentOperator") -> "LaurentOperator":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentOperator.from_dict(d)

    def __neg__(self) -> "LaurentOperator":
        return LaurentOperator(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentOperator") -> "LaurentOperator":
        return self + (-other)

    def __mul__(self, other) -> "LaurentOperator":
        if isinstance(other, int):
            return LaurentOperator.from_dict({e: c * other for e, c in self.coeffs})
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentOperator.from_dict(d)

    __rmul__ = __mul__

    def shifted(self, m: int) -> "LaurentOperator":
        return LaurentOperator(tuple((e + m, c) for e, c in self.coeffs))

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero operator has no exponents")
        return self.coeffs[0][0]

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero operator has no exponents")
        return self.coeffs[-1][0]

    def as_shifted_poly(self) -> tuple[Poly, int]:
        """Write the operator as s^k * p(s) with p an ordinary polynomial
        having a nonzero constant term; returns (p, k)."""
        if not self.coeffs:
            return (), 0
        k = self.min_exp
        out = [0] * (self.max_exp - k + 1)
        for e, c in self.coeffs:
            out[e - k] = c
        return strip(out), k

    def eval_at(self, q: Fraction) -> Fraction:
        """Value of the operator with the automorphism specialized to
        multiplication by ``q``; requires q != 0 when negative powers occur."""
        total = Fraction(0)
        for e, c in self.coeffs:
            total += c * Fraction(q) ** e
        return total

    @property
    def is_unit(self) -> bool:
        """Units of the Laurent ring: plus or minus a power of s."""
        return len(self.coeffs) == 1 and abs(self.coeffs[0][1]) == 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for e, c in sorted(self.coeffs, reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                base = "s" if e == 1 else f"s^{e}"
                body = base if mag == 1 else f"{mag}*{base}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)


ZERO_OP = LaurentOperator(())
ONE_OP = LaurentOperator.constant(1)
SIGMA = LaurentOperator.sigma_power(1)


def op_from_poly(p: Poly) -> LaurentOperator:
    """Operator p(s) from a polynomial given constant term first."""
    return LaurentOperator.from_dict({e: c for e, c in enumerate(p)})
