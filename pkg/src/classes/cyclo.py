from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple, Union

import sympy

from src.errors import ValidationError


Rational = Union[int, Fraction]

_X = sympy.Symbol("x")


@lru_cache(maxsize=None)
def _modulus(m: int) -> sympy.Poly:
    """Phi_m over QQ."""
    if m < 1:
        raise ValidationError(f"root-of-unity order must be positive, got {m}")
    return sympy.Poly(sympy.cyclotomic_poly(m, _X), _X, domain=sympy.QQ)


def cyclotomic_coeffs(m: int) -> Tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    return tuple(int(c) for c in reversed(_modulus(m).all_coeffs()))


def phi(m: int) -> int:
    return int(sympy.totient(m))


def _to_poly(values: Sequence[Fraction]) -> sympy.Poly:
    coeffs = [sympy.Rational(v.numerator, v.denominator) for v in reversed(values)] or [sympy.Integer(0)]
    return sympy.Poly(coeffs, _X, domain=sympy.QQ)


def _from_poly(poly: sympy.Poly, m: int) -> Tuple[Fraction, ...]:
    """Power-basis coordinates of poly mod Phi_m, padded to phi(m)."""
    reduced = poly.rem(_modulus(m))
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(reduced.all_coeffs())]
    width = _modulus(m).degree()
    return tuple(coeffs[:width]) + (Fraction(0),) * (width - len(coeffs))


def _reduce(values: Sequence[Fraction], m: int) -> Tuple[Fraction, ...]:
    return _from_poly(_to_poly(values), m)


@dataclass(frozen=True)
class CycloRational:
    """
    An element of the cyclotomic field Q(zeta_m), dense in the power basis
    1, zeta, ..., zeta^(phi(m)-1).

    Attributes
    -----------
        m (int): order of zeta, prime to the characteristic p in every use.
        rep (tuple[Fraction, ...]): exactly phi(m) coordinates.

    Since p does not divide m the power basis is integral at p, so
    p-integrality of an element is p-integrality of its coordinates.
    """

    m: int
    rep: Tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(m: int, coeffs: Sequence[Rational]) -> "CycloRational":
        return CycloRational(m, _reduce([Fraction(c) for c in coeffs], m))

    @staticmethod
    def scalar(m: int, c: Rational) -> "CycloRational":
        return CycloRational.from_coeffs(m, [c])

    @staticmethod
    def zero(m: int) -> "CycloRational":
        return CycloRational.scalar(m, 0)

    @staticmethod
    def one(m: int) -> "CycloRational":
        return CycloRational.scalar(m, 1)

    @staticmethod
    def zeta(m: int, k: int) -> "CycloRational":
        exponent = k % m
        return CycloRational.from_coeffs(m, [0] * exponent + [1])

    def _coerce(self, other) -> "CycloRational":
        if isinstance(other, CycloRational):
            if other.m != self.m:
                raise ValidationError(f"cyclotomic operands of orders {self.m} and {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloRational.scalar(self.m, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.rep)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational(self.m, tuple(a + b for a, b in zip(self.rep, other.rep)))

    __radd__ = __add__

    def __neg__(self) -> "CycloRational":
        return CycloRational(self.m, tuple(-a for a in self.rep))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloRational(self.m, tuple(a * other for a in self.rep))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational(self.m, _from_poly(_to_poly(self.rep) * _to_poly(other.rep), self.m))

    __rmul__ = __mul__

    def inverse(self) -> "CycloRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        inverse = sympy.invert(_to_poly(self.rep), _modulus(self.m))
        return CycloRational(self.m, _from_poly(sympy.Poly(inverse, _X, domain=sympy.QQ), self.m))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic value by zero")
            return self * (Fraction(1) / other)
        return self * self._coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloRational.scalar(self.m, other)
        if not isinstance(other, CycloRational):
            return NotImplemented
        return self.m == other.m and self.rep == other.rep

    def __hash__(self) -> int:
        if all(a == 0 for a in self.rep[1:]):
            return hash(self.rep[0] if self.rep else 0)
        return hash((self.m, self.rep))

    @property
    def denominator(self) -> int:
        den = 1
        for a in self.rep:
            den = den * a.denominator // gcd(den, a.denominator)
        return den

    def is_p_integral(self, p: int) -> bool:
        return self.denominator % p != 0

    def residues(self, p: int, M: int) -> List[int]:
        """Coordinates reduced into Z/p^M; requires p-integrality."""
        if not self.is_p_integral(p):
            raise ValidationError(f"{self.text()} is not {p}-integral")
        modulus = p ** M
        return [a.numerator * pow(a.denominator, -1, modulus) % modulus for a in self.rep]

    def to_json(self) -> dict:
        den = self.denominator
        return {"num": [int(a * den) for a in self.rep], "den": den}

    def text(self) -> str:
        terms = []
        for i, a in enumerate(self.rep):
            if a:
                terms.append(str(a) if i == 0 else f"{a}*z^{i}")
        return "+".join(terms) if terms else "0"
