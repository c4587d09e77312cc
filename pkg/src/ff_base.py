"""
Finite-field and polynomial kernels: monic enumeration, irreducibility by
distinct-degree filtration, q-power Frobenius maps, polynomial literals.

Monic polynomials of degree d are enumerated in lexicographic order of their
coefficient vectors (c_0, ..., c_{d-1}) with c_0 most significant, so the
stream can be split into independent index ranges.
"""
import re
from typing import Iterator, List, Optional, Tuple

import galois

from src.classes.finite_field import FqContext, FqExtContext, FqPoly, poly_text
from src.errors import ValidationError


POLY_GRAMMAR = "term ('+'|'-') term ...; term = [coef['*']]'t'['^'exp] | coef"

_TERM = re.compile(r"^(?:(\d+)\*?)?t(?:\^(\d+))?$|^(\d+)$")


def parse_poly(ctx: FqContext, text: str) -> FqPoly:
    """
    Parse a polynomial literal such as ``t^2+t+1`` or ``2*t+1``.

    Raises:
        ValidationError: on any token outside the grammar.
    """
    source = text.replace(" ", "")
    if not source:
        raise ValidationError(f"empty polynomial literal; grammar: {POLY_GRAMMAR}")
    tokens = re.findall(r"[+-]?[^+-]+", source)
    if "".join(tokens) != source:
        raise ValidationError(f"cannot parse polynomial '{text}'; grammar: {POLY_GRAMMAR}")
    coeffs = {}
    for token in tokens:
        sign = -1 if token.startswith("-") else 1
        body = token.lstrip("+-")
        match = _TERM.match(body)
        if not match:
            raise ValidationError(f"cannot parse term '{token}' of '{text}'; grammar: {POLY_GRAMMAR}")
        coef_t, exp_t, constant = match.groups()
        if constant is not None:
            exponent, coef = 0, int(constant)
        else:
            exponent = int(exp_t) if exp_t is not None else 1
            coef = int(coef_t) if coef_t is not None else 1
        if not ctx.is_prime_field and coef >= ctx.q:
            raise ValidationError(f"coefficient {coef} is not an element of F_{ctx.q}")
        gf = ctx.gf
        value = gf(coef % ctx.p if ctx.is_prime_field else coef)
        if sign < 0:
            value = -value
        coeffs[exponent] = int(gf(coeffs.get(exponent, 0)) + value)
    top = max(coeffs)
    return FqPoly.from_coeffs(ctx, [coeffs.get(i, 0) for i in range(top + 1)])


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.is_zero() and b.is_zero():
        return a
    return FqPoly.from_galois(a.ctx, galois.gcd(a.to_galois(), b.to_galois())).monic()


def monic_count(ctx: FqContext, d: int) -> int:
    return ctx.q ** d


def monic_from_index(ctx: FqContext, d: int, index: int) -> FqPoly:
    q = ctx.q
    digits = [(index // q ** (d - 1 - j)) % q for j in range(d)]
    return FqPoly(ctx, tuple(digits) + (1,))


def enumerate_monics(ctx: FqContext, d: int, start: int = 0, stop: Optional[int] = None) -> Iterator[FqPoly]:
    """Yield the monic polynomials of degree d with index in [start, stop)."""
    if d < 0:
        raise ValidationError(f"degree must be non-negative, got {d}")
    total = monic_count(ctx, d)
    stop = total if stop is None else min(stop, total)
    for index in range(start, stop):
        yield monic_from_index(ctx, d, index)


def frob_power(g, k: int, modulus, ext: Optional[FqExtContext] = None):
    """
    g^(q^k) mod modulus by k successive q-power maps, q the base field order.

    ``g`` and ``modulus`` are FqPoly over F_q, or ``galois.Poly`` over the
    field of ``ext`` when an extension context is given.
    """
    if isinstance(g, FqPoly):
        if modulus.is_zero():
            raise ZeroDivisionError("frob_power modulus is zero")
        q = g.ctx.q
        result = g % modulus
        for _ in range(k):
            result = result.pow_mod(q, modulus)
        return result
    q = ext.base.q if ext is not None else g.field.order
    result = g % modulus
    for _ in range(k):
        result = pow(result, q, modulus)
    return result


def is_irreducible(f: FqPoly) -> bool:
    """Distinct-degree test: f has no factor of degree i <= deg f / 2."""
    if not f.is_monic():
        raise ValidationError(f"is_irreducible expects a monic polynomial, got {f}")
    if f.degree < 1:
        raise ValidationError("is_irreducible expects degree >= 1")
    x = f.ctx.x()
    h = x % f
    for _ in range(1, f.degree // 2 + 1):
        h = frob_power(h, 1, f)
        if not poly_gcd(f, h - x).is_one():
            return False
    return True


def enumerate_monic_irreducibles(ctx: FqContext, d: int) -> Iterator[FqPoly]:
    for f in enumerate_monics(ctx, d):
        if d >= 1 and is_irreducible(f):
            yield f


def irreducibles_through(ctx: FqContext, max_degree: int, cache=None) -> List[FqPoly]:
    """All monic irreducibles of degree 1..max_degree, read through the enumeration cache."""
    found: List[FqPoly] = []
    for d in range(1, max_degree + 1):
        if cache is None:
            found.extend(enumerate_monic_irreducibles(ctx, d))
            continue
        key = {"kind": "irreducibles", "q": ctx.q, "modulus": list(ctx.modulus), "degree": d}
        payload = cache.get_or_compute(
            key, lambda d=d: [list(f.coeffs) for f in enumerate_monic_irreducibles(ctx, d)]
        )
        found.extend(FqPoly(ctx, tuple(c)) for c in payload)
    return found


def trial_division_irreducible(f: FqPoly) -> bool:
    """Brute-force oracle: no monic divisor of degree 1..deg f / 2."""
    for d in range(1, f.degree // 2 + 1):
        for g in enumerate_monics(f.ctx, d):
            if (f % g).is_zero():
                return False
    return True


def residue_key(f: FqPoly, length: int) -> Tuple[int, ...]:
    """Fixed-length coefficient tuple of a residue, used as a table key."""
    return tuple(f.coeffs) + (0,) * (length - len(f.coeffs))


__all__ = [
    "POLY_GRAMMAR", "parse_poly", "poly_text", "poly_gcd", "monic_count", "monic_from_index",
    "enumerate_monics", "frob_power", "is_irreducible", "enumerate_monic_irreducibles",
    "irreducibles_through", "trial_division_irreducible", "residue_key",
]
