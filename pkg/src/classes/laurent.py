from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.classes.finite_field import FqContext, FqPoly
from src.errors import ValidationError


@dataclass(frozen=True)
class LaurentNum:
    """
    An element of F_inf = F_q((pi)), pi = 1/t, known up to O(pi^prec).

    Attributes
    -----------
        ctx (FqContext): coefficient field.
        val (int): valuation of the leading known term (equals ``prec`` for an
            effective zero).
        window (tuple[int, ...]): coefficients of pi^val, pi^(val+1), ...,
            pi^(prec-1); the first entry is nonzero unless the window is empty.
        prec (int): absolute precision; terms of valuation >= prec are unknown.

    Precision rule: a sum is known to the minimum of the operand precisions; a
    product a*b is known to min(val(a) + prec(b), val(b) + prec(a)); an inverse
    of a value known to relative precision R is known to relative precision R.

    A result is refused as precision exhausted when its precision does not
    reach the leading valuation its nonzero operands imply, or when an
    effective zero is multiplied by a value of negative valuation.
    """

    ctx: FqContext
    val: int
    window: Tuple[int, ...]
    prec: int

    @staticmethod
    def make(ctx: FqContext, val: int, coeffs: Sequence[int], prec: int) -> "LaurentNum":
        values = [int(c) for c in coeffs][: max(prec - val, 0)]
        shift = 0
        while shift < len(values) and values[shift] == 0:
            shift += 1
        values = values[shift:]
        if not values:
            return LaurentNum(ctx, prec, (), prec)
        return LaurentNum(ctx, val + shift, tuple(values), prec)

    @staticmethod
    def constant(ctx: FqContext, c: int, prec: int) -> "LaurentNum":
        return LaurentNum.make(ctx, 0, [c], prec)

    @staticmethod
    def one(ctx: FqContext, prec: int) -> "LaurentNum":
        return LaurentNum.constant(ctx, 1, prec)

    @staticmethod
    def zero(ctx: FqContext, prec: int) -> "LaurentNum":
        return LaurentNum(ctx, prec, (), prec)

    @staticmethod
    def pi(ctx: FqContext, prec: int) -> "LaurentNum":
        return LaurentNum.make(ctx, 1, [1], prec)

    @staticmethod
    def t(ctx: FqContext, prec: int) -> "LaurentNum":
        return LaurentNum.make(ctx, -1, [1], prec)

    @staticmethod
    def from_poly(f: FqPoly, prec: int) -> "LaurentNum":
        """The polynomial f(t) = f(1/pi), exact up to O(pi^prec)."""
        if f.is_zero():
            return LaurentNum.zero(f.ctx, prec)
        return LaurentNum.make(f.ctx, -f.degree, list(reversed(f.coeffs)), prec)

    def is_zero(self) -> bool:
        return not self.window

    def abs_value(self) -> float:
        """|x|_inf = q^(-val); 0.0 for an effective zero."""
        if self.is_zero():
            return 0.0
        return float(self.ctx.q) ** (-self.val)

    def coefficient(self, exponent: int) -> int:
        if exponent >= self.prec:
            raise ValidationError(f"coefficient of pi^{exponent} is beyond the precision O(pi^{self.prec})")
        index = exponent - self.val
        if index < 0 or index >= len(self.window):
            return 0
        return self.window[index]

    def dense(self, start: int, stop: int) -> List[int]:
        return [self.coefficient(e) for e in range(start, stop)]

    def _gf_window(self):
        return self.ctx.gf(list(self.window))

    def _same_field(self, other: "LaurentNum") -> None:
        if other.ctx != self.ctx:
            raise ValidationError("Laurent operands live over different fields")

    def __add__(self, other: "LaurentNum") -> "LaurentNum":
        self._same_field(other)
        prec = min(self.prec, other.prec)
        known = [x.val for x in (self, other) if not x.is_zero()]
        if known and prec <= min(known):
            raise ValidationError(
                f"precision exhausted: sum known only to O(pi^{prec}) but its terms start at pi^{min(known)}"
            )
        start = min(self.val, other.val, prec)
        if start >= prec:
            return LaurentNum.zero(self.ctx, prec)
        gf = self.ctx.gf
        a = gf(self.dense(start, prec))
        b = gf(other.dense(start, prec))
        return LaurentNum.make(self.ctx, start, [int(c) for c in a + b], prec)

    def __neg__(self) -> "LaurentNum":
        if self.is_zero():
            return self
        return LaurentNum(self.ctx, self.val, tuple(int(c) for c in -self._gf_window()), self.prec)

    def __sub__(self, other: "LaurentNum") -> "LaurentNum":
        return self + (-other)

    def __mul__(self, other: "LaurentNum") -> "LaurentNum":
        self._same_field(other)
        prec = min(self.val + other.prec, other.val + self.prec)
        if self.is_zero() or other.is_zero():
            factor = other if self.is_zero() else self
            if not factor.is_zero() and factor.val < 0:
                raise ValidationError(
                    f"precision exhausted: an O(pi^{(self if self.is_zero() else other).prec}) zero times a value of valuation {factor.val}"
                )
            return LaurentNum.zero(self.ctx, prec)
        product = np.convolve(self._gf_window(), other._gf_window())
        return LaurentNum.make(self.ctx, self.val + other.val, [int(c) for c in product], prec)

    def scale(self, c: int) -> "LaurentNum":
        if c == 0 or self.is_zero():
            return LaurentNum.zero(self.ctx, self.prec)
        scaled = self._gf_window() * self.ctx.gf(c)
        return LaurentNum(self.ctx, self.val, tuple(int(v) for v in scaled), self.prec)

    def shift(self, k: int) -> "LaurentNum":
        """Multiplication by pi^k (exact)."""
        return LaurentNum(self.ctx, self.val + k, self.window, self.prec + k)

    def invert(self) -> "LaurentNum":
        if self.is_zero():
            raise ZeroDivisionError("inversion of an effective zero Laurent value")
        relative = self.prec - self.val
        gf = self.ctx.gf
        c = self._gf_window()
        lead_inv = gf(1) / c[0]
        inverse = [lead_inv]
        for k in range(1, relative):
            acc = gf(0)
            for j in range(1, min(k, len(c) - 1) + 1):
                acc += c[j] * inverse[k - j]
            inverse.append(-lead_inv * acc)
        return LaurentNum.make(self.ctx, -self.val, [int(v) for v in inverse], -self.val + relative)

    def __pow__(self, exponent: int) -> "LaurentNum":
        if exponent < 0:
            return self.invert() ** (-exponent)
        if exponent == 0:
            return LaurentNum.one(self.ctx, self.prec - self.val)
        base = self
        result = None
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def truncate(self, prec: int) -> "LaurentNum":
        if prec >= self.prec:
            return self
        return LaurentNum.make(self.ctx, self.val, self.window, prec)

    def agrees_with(self, other: "LaurentNum") -> bool:
        """Equality on the common window of known coefficients."""
        self._same_field(other)
        prec = min(self.prec, other.prec)
        start = min(self.val, other.val, prec)
        return self.dense(start, prec) == other.dense(start, prec)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentNum):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.agrees_with(other)

    def __hash__(self) -> int:
        return hash((self.ctx, self.val, self.window, self.prec))

    def text(self) -> str:
        terms = []
        for i, c in enumerate(self.window):
            if c == 0:
                continue
            e = self.val + i
            terms.append(str(c) if e == 0 else f"{c}*pi^{e}")
        terms.append(f"O(pi^{self.prec})")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"val": self.val, "window": list(self.window), "prec": self.prec}
