"""
Special values at infinity: one-units <a> = a / t^deg(a), exponentials a^s for
s = (x, y), power sums over monic strata, partial sums of zeta_A with a
certified tail, and the coefficientwise check of the interpolation identity

    S'_d(y) = S_d(y) - <p>^y S_(d - deg p)(y),

whose left side comes from the Euler product of Psi_y(Theta).
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src import ff_base
from src.classes.finite_field import FqContext, FqPoly
from src.classes.laurent import LaurentNum
from src.errors import TheoremViolation, ValidationError


ZERO_STRATA_TO_STOP: int = 2
STOP_SAFETY_FACTOR: int = 1
STOP_SEARCH_MARGIN: int = 8


@dataclass(frozen=True)
class PAdicExponent:
    """
    y in Z_p, either an integer or a residue y0 mod p^M.

    Attributes
    -----------
        value (int): the integer, or the representative y0 in [0, p^M).
        M (int | None): None for an integer exponent.
    """

    value: int
    M: Optional[int] = None

    @staticmethod
    def residue(value: int, p: int, M: int) -> "PAdicExponent":
        if M < 1:
            raise ValidationError(f"residue exponent needs M >= 1, got {M}")
        return PAdicExponent(value % p ** M, M)

    @property
    def mode(self) -> str:
        return "integer" if self.M is None else "residue"

    def negated(self, p: int) -> "PAdicExponent":
        if self.M is None:
            return PAdicExponent(-self.value)
        return PAdicExponent.residue(-self.value, p, self.M)

    def to_json(self) -> dict:
        return {"mode": self.mode, "value": self.value, "M": self.M}


@dataclass(frozen=True)
class SPoint:
    """s = (x, y) with x in F_inf^* (None marks the formal variable) and y in Z_p."""

    x: Optional[LaurentNum]
    y: PAdicExponent

    @staticmethod
    def integer(ctx: FqContext, j: int, prec: int) -> "SPoint":
        """The image of the integer j: (t^j, j)."""
        return SPoint(LaurentNum.t(ctx, prec) ** j, PAdicExponent(j))

    def to_json(self) -> dict:
        return {"x": "formal" if self.x is None else self.x.text(), "y": self.y.to_json()}


def one_unit(a: FqPoly, prec: int) -> LaurentNum:
    """<a> = a t^-deg(a) = 1 + (terms in pi), known to O(pi^prec)."""
    if a.is_zero() or not a.is_monic():
        raise ValidationError(f"one_unit expects a monic polynomial, got {a}")
    return LaurentNum.make(a.ctx, 0, list(reversed(a.coeffs)), prec)


def _check_one_unit(u: LaurentNum) -> None:
    if u.val != 0 or u.window[0] != 1:
        raise ValidationError(f"{u.text()} is not a one-unit")


def unit_pow(u: LaurentNum, y: PAdicExponent) -> LaurentNum:
    """
    u^y for a one-unit u.

    A residue exponent y0 mod p^M is exact up to O(pi^(p^M)), since
    u^(p^M) = 1 + (u - 1)^(p^M) in characteristic p; asking for more
    precision than that is refused.
    """
    _check_one_unit(u)
    if y.M is not None:
        bound = u.ctx.p ** y.M
        if u.prec > bound:
            raise ValidationError(
                f"precision {u.prec} exceeds p^M = {bound}; a residue exponent mod {u.ctx.p}^{y.M} does not determine u^y"
            )
    return u ** y.value


def ideal_power(a: FqPoly, s: SPoint, prec: int) -> LaurentNum:
    """a^s = x^deg(a) <a>^y."""
    if s.x is None:
        raise ValidationError("a^s needs an evaluated x; the formal variable has no value")
    unit = unit_pow(one_unit(a, prec), s.y)
    if a.degree == 0:
        return unit
    return (s.x ** a.degree) * unit


def power_sum(ctx: FqContext, d: int, y: PAdicExponent, prec: int) -> LaurentNum:
    """S_d(y) = sum of <a>^y over monic a of degree d."""
    total = LaurentNum.zero(ctx, prec)
    for a in ff_base.enumerate_monics(ctx, d):
        total = total + unit_pow(one_unit(a, prec), y)
    return total


@dataclass(frozen=True)
class PowerSumTable:
    """
    S_d(y) over all monics of degree d and S'_d(y) over those prime to
    ``prime``, for d = 0..D, each at precision ``prec``.
    """

    q: int
    prime: str
    y: PAdicExponent
    prec: int
    full: Tuple[LaurentNum, ...]
    restricted: Tuple[LaurentNum, ...]

    @staticmethod
    def build(ctx: FqContext, prime: FqPoly, y: PAdicExponent, D: int, prec: int) -> "PowerSumTable":
        full, restricted = [], []
        for d in range(D + 1):
            total = LaurentNum.zero(ctx, prec)
            coprime = LaurentNum.zero(ctx, prec)
            for a in ff_base.enumerate_monics(ctx, d):
                w = unit_pow(one_unit(a, prec), y)
                total = total + w
                if not (a % prime).is_zero():
                    coprime = coprime + w
            full.append(total)
            restricted.append(coprime)
        return PowerSumTable(ctx.q, prime.text(), y, prec, tuple(full), tuple(restricted))

    @property
    def D(self) -> int:
        return len(self.full) - 1


@dataclass(frozen=True)
class ZetaPartial:
    """
    sum over d <= D of x^-d S_d(-y), with every later stratum of valuation
    at least ``tail_valuation``.
    """

    value: LaurentNum
    tail_valuation: int
    strata_valuations: Tuple[int, ...]

    def certified(self) -> LaurentNum:
        return self.value.truncate(self.tail_valuation)

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "text": self.value.text(),
            "tail_valuation": self.tail_valuation,
            "strata_valuations": list(self.strata_valuations),
        }


def zeta_partial(ctx: FqContext, s: SPoint, D: int, prec: int) -> ZetaPartial:
    """
    Partial sum of zeta_A(s) through degree D. Each stratum satisfies
    |S_d| <= 1, so the tail has valuation >= (D + 1) val(x^-1).
    """
    if s.x is None:
        raise ValidationError("single-point evaluation needs x; use interpolation_check for the formal variable")
    if s.x.is_zero() or s.x.val >= 0:
        raise ValidationError(f"zeta_A(s) converges only for |x| > 1, got val(x) = {s.x.val}")
    if D < 0:
        raise ValidationError(f"degree cutoff must be >= 0, got {D}")
    x_inv = s.x.invert()
    minus_y = s.y.negated(ctx.p)
    value = LaurentNum.one(ctx, prec)
    strata = [0]
    power = LaurentNum.one(ctx, x_inv.prec)
    for d in range(1, D + 1):
        power = power * x_inv
        term = power * power_sum(ctx, d, minus_y, prec)
        strata.append(term.val)
        value = value + term
    tail = (D + 1) * x_inv.val
    return ZetaPartial(value, tail, tuple(strata))


@dataclass(frozen=True)
class NegativeValue:
    """zeta_A(-j) as an exact polynomial, with the degrees that certify the stop."""

    j: int
    value: FqPoly
    strata: Tuple[FqPoly, ...]
    stopped_at: int

    def to_json(self) -> dict:
        nonzero = [d for d, s in enumerate(self.strata) if not s.is_zero()]
        return {
            "j": self.j,
            "value": self.value.text(),
            "strata": [s.text() for s in self.strata],
            "last_nonzero_degree": max(nonzero) if nonzero else None,
            "stopped_at": self.stopped_at,
        }


def zeta_at_negative_int(ctx: FqContext, j: int) -> NegativeValue:
    """
    sum of a^j over all monic a, stratum by stratum.

    Enumeration stops once two consecutive strata are zero and
    d > j * STOP_SAFETY_FACTOR; the vanishing degree is read off the strata,
    not assumed. Reaching d = j + 8 without stopping is an error.
    """
    if j < 1:
        raise ValidationError(f"j must be >= 1, got {j}")
    floor = j * STOP_SAFETY_FACTOR
    strata: List[FqPoly] = []
    value = FqPoly.zero(ctx)
    zeros = 0
    for d in range(j + STOP_SEARCH_MARGIN + 1):
        stratum = FqPoly.zero(ctx)
        for a in ff_base.enumerate_monics(ctx, d):
            stratum = stratum + a ** j
        strata.append(stratum)
        value = value + stratum
        zeros = zeros + 1 if stratum.is_zero() else 0
        if zeros >= ZERO_STRATA_TO_STOP and d > floor:
            return NegativeValue(j, value, tuple(strata), d)
    raise TheoremViolation(
        f"no {ZERO_STRATA_TO_STOP} consecutive zero strata by degree {j + STOP_SEARCH_MARGIN}",
        "zeta_A(-j) stopping rule",
    )


def euler_product_coefficients(
    ctx: FqContext, prime: FqPoly, y: PAdicExponent, D: int, prec: int, cache=None
) -> List[LaurentNum]:
    """u-coefficients of prod over irreducible q != p of (1 - <q>^y u^deg q)^-1, through u^D."""
    coeffs = [LaurentNum.one(ctx, prec)] + [LaurentNum.zero(ctx, prec) for _ in range(D)]
    for f in ff_base.irreducibles_through(ctx, D, cache):
        if f == prime:
            continue
        w = unit_pow(one_unit(f, prec), y)
        e = f.degree
        for d in range(e, D + 1):
            coeffs[d] = coeffs[d] + w * coeffs[d - e]
    return coeffs


@dataclass(frozen=True)
class InterpolationReport:
    q: int
    prime: str
    y: PAdicExponent
    D: int
    prec: int
    rows: Tuple[dict, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "prime": self.prime,
            "y": self.y.to_json(),
            "D": self.D,
            "P": self.prec,
            "degrees": list(self.rows),
            "ok": self.ok,
        }


def interpolation_check(
    ctx: FqContext, prime: FqPoly, y: PAdicExponent, D: int, prec: int, cache=None, table: Optional[PowerSumTable] = None
) -> InterpolationReport:
    """
    Compare, per degree, the Euler-product side with (1 - p^s) zeta_A(-s)
    read coefficientwise: S_d(y) - <p>^y S_(d - deg p)(y). Mismatches are
    report rows, never raised.
    """
    if not ff_base.is_irreducible(prime):
        raise ValidationError(f"prime {prime} must be monic irreducible")
    euler = euler_product_coefficients(ctx, prime, y, D, prec, cache)
    full = (table or PowerSumTable.build(ctx, prime, y, D, prec)).full
    twist = unit_pow(one_unit(prime, prec), y)
    rows = []
    for d in range(D + 1):
        rhs = full[d]
        if d >= prime.degree:
            rhs = rhs - twist * full[d - prime.degree]
        rows.append({"d": d, "ok": euler[d].agrees_with(rhs), "value": euler[d].text()})
    return InterpolationReport(ctx.q, prime.text(), y, D, prec, tuple(rows))


def euler_dirichlet_goss(
    ctx: FqContext, prime: FqPoly, y: PAdicExponent, D: int, prec: int, cache=None, table: Optional[PowerSumTable] = None
) -> dict:
    """Euler-product coefficients against direct sums over monics prime to p."""
    euler = euler_product_coefficients(ctx, prime, y, D, prec, cache)
    restricted = (table or PowerSumTable.build(ctx, prime, y, D, prec)).restricted
    failures = [d for d in range(D + 1) if not euler[d].agrees_with(restricted[d])]
    return {"q": ctx.q, "prime": prime.text(), "y": y.to_json(), "D": D, "P": prec, "failures": failures, "ok": not failures}
