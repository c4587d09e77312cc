from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import galois
import sympy

from src.errors import GuardrailError, ValidationError


MAX_FIELD_ORDER: int = 2 ** 16


@lru_cache(maxsize=None)
def _prime_field(p: int):
    return galois.GF(p)


@lru_cache(maxsize=None)
def _field(p: int, r: int, modulus: Tuple[int, ...]):
    if r == 1:
        return _prime_field(p)
    irreducible = galois.Poly(list(modulus), field=_prime_field(p), order="asc")
    return galois.GF(p ** r, irreducible_poly=irreducible)


def conway_like_modulus(p: int, r: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible of degree r over F_p (constant term first)."""
    if r == 1:
        return (0, 1)
    gf = _prime_field(p)
    for index in range(p ** r):
        digits = [(index // p ** (r - 1 - j)) % p for j in range(r)]
        candidate = galois.Poly(digits + [1], field=gf, order="asc")
        if candidate.is_irreducible():
            return tuple(digits + [1])
    raise ValidationError(f"no irreducible polynomial of degree {r} over F_{p}")


@dataclass(frozen=True)
class FqContext:
    """
    The finite field F_q, q = p^r, in a fixed reproducible model.

    Attributes
    -----------
        p (int): the characteristic.
        r (int): the extension degree over F_p.
        modulus (tuple[int, ...]): the defining irreducible polynomial over F_p,
            lowest degree first. Field elements are integers in ``galois``'
            polynomial-basis representation with respect to this modulus.

    Methods
    -------
    create(q)
        builds the canonical context for q
    gf
        the ``galois`` field class backing the context
    """

    p: int
    r: int
    modulus: Tuple[int, ...]

    @staticmethod
    @lru_cache(maxsize=None)
    def create(q: int) -> "FqContext":
        if q < 2:
            raise ValidationError(f"field order must be a prime power >= 2, got {q}")
        if q > MAX_FIELD_ORDER:
            raise GuardrailError(f"field order {q} exceeds the desk-scale bound {MAX_FIELD_ORDER}")
        factors = sympy.factorint(q)
        if len(factors) != 1:
            raise ValidationError(f"field order must be a prime power, got {q}")
        ((p, r),) = factors.items()
        return FqContext(int(p), int(r), conway_like_modulus(int(p), int(r)))

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def gf(self):
        return _field(self.p, self.r, self.modulus)

    @property
    def is_prime_field(self) -> bool:
        return self.r == 1

    def element(self, value: int):
        return self.gf(value % self.q if self.r == 1 else value)

    def inverse(self, value: int) -> int:
        if value == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return int(self.gf(1) / self.gf(value))

    def poly(self, coeffs: Iterable[int]) -> "FqPoly":
        return FqPoly.from_coeffs(self, coeffs)

    def x(self) -> "FqPoly":
        return FqPoly(self, (0, 1))


def _strip(coeffs: Sequence[int]) -> Tuple[int, ...]:
    values = list(coeffs)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class FqPoly:
    """
    Dense polynomial over F_q in the variable t, lowest degree first.

    The zero polynomial has an empty coefficient tuple. Arithmetic is delegated
    to ``galois.Poly``; instances are immutable and hashable.
    """

    ctx: FqContext
    coeffs: Tuple[int, ...]

    @staticmethod
    def from_coeffs(ctx: FqContext, coeffs: Iterable[int]) -> "FqPoly":
        if ctx.is_prime_field:
            return FqPoly(ctx, _strip([int(c) % ctx.p for c in coeffs]))
        return FqPoly(ctx, _strip([int(c) for c in coeffs]))

    @staticmethod
    def from_galois(ctx: FqContext, poly) -> "FqPoly":
        return FqPoly(ctx, _strip(int(c) for c in poly.coeffs[::-1]))

    @staticmethod
    def one(ctx: FqContext) -> "FqPoly":
        return FqPoly(ctx, (1,))

    @staticmethod
    def zero(ctx: FqContext) -> "FqPoly":
        return FqPoly(ctx, ())

    def to_galois(self):
        return galois.Poly(list(self.coeffs) or [0], field=self.ctx.gf, order="asc")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.lead == 1

    def _check(self, other: "FqPoly") -> None:
        if other.ctx != self.ctx:
            raise ValidationError("polynomial operands live over different fields")

    def __add__(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly.from_galois(self.ctx, self.to_galois() + other.to_galois())

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly.from_galois(self.ctx, self.to_galois() - other.to_galois())

    def __neg__(self) -> "FqPoly":
        return FqPoly.from_galois(self.ctx, -self.to_galois())

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly.from_galois(self.ctx, self.to_galois() * other.to_galois())

    def scale(self, c: int) -> "FqPoly":
        gf = self.ctx.gf
        return FqPoly.from_galois(self.ctx, self.to_galois() * gf(c))

    def __divmod__(self, other: "FqPoly") -> Tuple["FqPoly", "FqPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        quotient, remainder = divmod(self.to_galois(), other.to_galois())
        return FqPoly.from_galois(self.ctx, quotient), FqPoly.from_galois(self.ctx, remainder)

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def __pow__(self, exponent: int) -> "FqPoly":
        if exponent < 0:
            raise ValidationError("negative powers of polynomials are not defined")
        return FqPoly.from_galois(self.ctx, self.to_galois() ** exponent)

    def pow_mod(self, exponent: int, modulus: "FqPoly") -> "FqPoly":
        self._check(modulus)
        return FqPoly.from_galois(self.ctx, pow(self.to_galois(), exponent, modulus.to_galois()))

    def monic(self) -> "FqPoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inverse(self.lead))

    def evaluate(self, value: int) -> int:
        return int(self.to_galois()(self.ctx.gf(value)))

    def text(self) -> str:
        return poly_text(self)

    def __str__(self) -> str:
        return poly_text(self)


def poly_text(f: FqPoly) -> str:
    """Canonical text form ``c0+c1*t+c2*t^2``; zero terms omitted, ``0`` for the zero polynomial."""
    if f.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*t")
        else:
            terms.append(f"{c}*t^{i}")
    return "+".join(terms)


@dataclass(frozen=True)
class FqExtContext:
    """
    The residue field F_q[t]/(modulus), of degree k over F_q.

    Elements are FqPoly residues; for the polynomial kernels of the
    factorization oracle they are mapped into a ``galois`` field.
    """

    base: FqContext
    k: int
    modulus: FqPoly

    @staticmethod
    def create(modulus: FqPoly) -> "FqExtContext":
        if not modulus.is_monic() or modulus.degree < 1:
            raise ValidationError(f"extension modulus must be monic of degree >= 1, got {modulus}")
        return FqExtContext(modulus.ctx, modulus.degree, modulus)

    @property
    def order(self) -> int:
        return self.base.q ** self.k

    @property
    def gf(self):
        if self.k == 1:
            return self.base.gf
        if not self.base.is_prime_field:
            raise GuardrailError("extension fields of degree > 1 are supported over prime F_q only")
        return _field(self.base.p, self.k, self.modulus.coeffs)

    def element(self, residue: FqPoly):
        """Image of an F_q[t] residue class in the ``galois`` model of the field."""
        reduced = residue % self.modulus
        if self.k == 1:
            root = int(-self.base.gf(self.modulus.coeffs[0]))
            return self.base.gf(reduced.evaluate(root))
        value = 0
        for i, c in enumerate(reduced.coeffs):
            value += c * self.base.p ** i
        return self.gf(value)

    def poly(self, residues: Sequence[FqPoly]):
        """Polynomial in x over this field from residues, lowest degree first."""
        gf = self.gf
        values = [int(self.element(c)) for c in residues] or [0]
        return galois.Poly(values, field=gf, order="asc")
