"""
Ground truth for Carlitz covers computed without class field theory:
torsion polynomials, residual degrees by factoring them modulo a place,
place counts of F_n and the zeta numerator rebuilt from those counts.

Only ``ff_base`` is shared with the rest of the package; nothing here reads
Frobenius data from ``arith_provider``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
import sympy

from src import ff_base
from src.classes.finite_field import FqContext, FqExtContext, FqPoly
from src.errors import GuardrailError, TheoremViolation, ValidationError


MAX_TORSION_DEGREE: int = 3 ** 6
MAX_CENSUS_DEGREE: int = 12


@dataclass(frozen=True)
class AdditivePoly:
    """c_0 x + c_1 x^q + ... + c_k x^(q^k) with c_i in F_q[t]."""

    ctx: FqContext
    coeffs: Tuple[FqPoly, ...]

    @staticmethod
    def scalar(c: FqPoly) -> "AdditivePoly":
        return AdditivePoly(c.ctx, (c,))

    def __add__(self, other: "AdditivePoly") -> "AdditivePoly":
        size = max(len(self.coeffs), len(other.coeffs))
        zero = FqPoly.zero(self.ctx)
        pad_a = self.coeffs + (zero,) * (size - len(self.coeffs))
        pad_b = other.coeffs + (zero,) * (size - len(other.coeffs))
        return AdditivePoly(self.ctx, tuple(a + b for a, b in zip(pad_a, pad_b)))

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """(self o other)(x) = sum_i a_i (sum_j b_j x^(q^j))^(q^i)."""
        q = self.ctx.q
        zero = FqPoly.zero(self.ctx)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b ** (q ** i)
        return AdditivePoly(self.ctx, tuple(out))

    def dense(self) -> List[FqPoly]:
        """Coefficients of x^0 .. x^(q^k) as an ordinary polynomial in x."""
        q = self.ctx.q
        out = [FqPoly.zero(self.ctx)] * (q ** (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[q ** i] = c
        return out


def carlitz_additive(a: FqPoly) -> AdditivePoly:
    """Phi_a by Horner's rule in Phi_t = t x + x^q."""
    ctx = a.ctx
    if a.is_zero():
        return AdditivePoly.scalar(FqPoly.zero(ctx))
    phi_t = AdditivePoly(ctx, (ctx.x(), FqPoly.one(ctx)))
    result = AdditivePoly.scalar(FqPoly.from_coeffs(ctx, [a.coeffs[-1]]))
    for c in reversed(a.coeffs[:-1]):
        result = phi_t.compose(result) + AdditivePoly.scalar(FqPoly.from_coeffs(ctx, [c]))
    return result


def _x_divmod(num: Sequence[FqPoly], den: Sequence[FqPoly]) -> Tuple[List[FqPoly], List[FqPoly]]:
    """Division of polynomials in x over F_q[t] by a divisor monic in x."""
    if not den[-1].is_one():
        raise ValidationError("x-division needs a divisor monic in x")
    remainder = list(num)
    k = len(den) - 1
    zero = FqPoly.zero(den[0].ctx)
    quotient = [zero] * max(len(remainder) - k, 0)
    for i in range(len(remainder) - 1, k - 1, -1):
        c = remainder[i]
        if c.is_zero():
            continue
        quotient[i - k] = c
        for j, dj in enumerate(den):
            remainder[i - k + j] = remainder[i - k + j] - c * dj
    return quotient, remainder[:k]


def _check_prime(prime: FqPoly) -> None:
    if prime.degree < 1 or not prime.is_monic() or not ff_base.is_irreducible(prime):
        raise ValidationError(f"prime {prime} must be monic irreducible")


def carlitz_torsion_poly(prime: FqPoly, n: int) -> List[FqPoly]:
    """
    Phi_(p^n)(x) / Phi_(p^(n-1))(x), coefficients of x^0 .. x^top in F_q[t].

    The division and the composite Phi_(p^n) = Phi_p o Phi_(p^(n-1)) are
    both verified.
    """
    _check_prime(prime)
    if n < 1:
        raise ValidationError(f"level must be >= 1, got {n}")
    q = prime.ctx.q
    if q ** (n * prime.degree) > MAX_TORSION_DEGREE:
        raise GuardrailError(f"torsion degree {q}^{n * prime.degree} exceeds {MAX_TORSION_DEGREE}")
    lower = carlitz_additive(prime ** (n - 1))
    upper = carlitz_additive(prime ** n)
    if carlitz_additive(prime).compose(lower) != upper:
        raise TheoremViolation("Phi_(p^n) differs from Phi_p o Phi_(p^(n-1))", "torsion tower")
    quotient, remainder = _x_divmod(upper.dense(), lower.dense())
    if any(not r.is_zero() for r in remainder):
        raise TheoremViolation("Phi_(p^(n-1)) does not divide Phi_(p^n)", "torsion tower")
    return quotient


def frobenius_order_oracle(place: FqPoly, prime: FqPoly, n: int, torsion: Optional[List[FqPoly]] = None) -> int:
    """
    Residual degree of ``place`` in F_n: the common degree of the irreducible
    factors of the torsion polynomial over F_q[t]/place.
    """
    if (prime % place).is_zero():
        raise ValidationError(f"place {place} divides the conductor prime {prime}")
    torsion = torsion if torsion is not None else carlitz_torsion_poly(prime, n)
    reduced = FqExtContext.create(place).poly(torsion)
    _, degrees = reduced.distinct_degree_factors()
    if len(degrees) != 1:
        raise TheoremViolation(
            f"factors of degrees {list(degrees)} over F_q[t]/({place})", "Frobenius order oracle"
        )
    return int(degrees[0])


def extension_degree(prime: FqPoly, n: int) -> int:
    """[F_n : F] = #(A / p^n)^*, counted."""
    q, d = prime.ctx.q, prime.degree
    return q ** ((n - 1) * d) * (q ** d - 1)


@dataclass(frozen=True)
class SplittingReport:
    place: str
    e: int
    f: int
    g: int
    method: str

    def to_json(self) -> dict:
        return {"place": self.place, "e": self.e, "f": self.f, "g": self.g, "method": self.method}


def splitting_report(place, prime: FqPoly, n: int, torsion=None) -> SplittingReport:
    """(e, f, g) of ``place``, an irreducible or the label ``inf``."""
    _check_prime(prime)
    N = extension_degree(prime, n)
    q = prime.ctx.q
    if place == "inf":
        return SplittingReport("inf", q - 1, 1, N // (q - 1), "table")
    if place == prime:
        return SplittingReport(prime.text(), N, 1, 1, "table")
    f = frobenius_order_oracle(place, prime, n, torsion)
    return SplittingReport(place.text(), 1, f, N // f, "factorization")


@dataclass(frozen=True)
class PlaceCensus:
    """
    Places of F_n by degree, complete through ``m_max``.

    Attributes
    -----------
        counts (dict[int, int]): number of places of each degree <= m_max.
        N (tuple[int, ...]): N_1 .. N_m_max, N_m = sum of deg P over places with deg P | m.
        residual (dict[str, int]): oracle residual degree per unramified base place.
    """

    q: int
    prime: str
    level: int
    m_max: int
    counts: Dict[int, int]
    N: Tuple[int, ...]
    residual: Dict[str, int] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"m": range(1, self.m_max + 1), "places": [self.counts.get(m, 0) for m in range(1, self.m_max + 1)],
             "N_m": list(self.N)}
        )

    def to_json(self) -> List[dict]:
        return [{"m": m, "N_m": n} for m, n in zip(range(1, self.m_max + 1), self.N)]


def place_census(prime: FqPoly, n: int, m_max: int, cache=None) -> PlaceCensus:
    """
    Count the places of F_n of degree <= m_max from the base places: an
    unramified q gives [F_n:F]/f places of degree f deg q, p gives one place
    of degree deg p, infinity gives [F_n:F]/(q-1) places of degree 1.
    """
    _check_prime(prime)
    if m_max < 1 or m_max > MAX_CENSUS_DEGREE:
        raise GuardrailError(f"census degree must lie in 1..{MAX_CENSUS_DEGREE}, got {m_max}")
    ctx = prime.ctx
    q = ctx.q
    N_ext = extension_degree(prime, n) if n > 0 else 1
    counts: Dict[int, int] = {}

    def add(degree: int, number: int) -> None:
        if degree <= m_max:
            counts[degree] = counts.get(degree, 0) + number

    residual: Dict[str, int] = {}
    torsion = carlitz_torsion_poly(prime, n) if n > 0 else None
    for f in ff_base.irreducibles_through(ctx, m_max, cache):
        if n > 0 and f == prime:
            add(prime.degree, 1)
            continue
        order = frobenius_order_oracle(f, prime, n, torsion) if n > 0 else 1
        residual[f.text()] = order
        add(order * f.degree, N_ext // order)
    add(1, N_ext // (q - 1) if n > 0 else 1)
    N = tuple(sum(d * c for d, c in counts.items() if m % d == 0) for m in range(1, m_max + 1))
    return PlaceCensus(q, prime.text(), n, m_max, counts, N, residual)


def _series_from_counts(N: Sequence[int], length: int) -> List[Fraction]:
    """Z(u) = exp(sum N_m u^m / m): z_k = (1/k) sum_(i<=k) N_i z_(k-i)."""
    z = [Fraction(1)]
    for k in range(1, length):
        z.append(sum(Fraction(N[i - 1]) * z[k - i] for i in range(1, k + 1)) / k)
    return z


def _counts_from_numerator(P: Sequence[int], q: int, length: int) -> List[int]:
    """N_1 .. N_length of Z(u) = P(u) / ((1 - u)(1 - q u))."""
    z = []
    for k in range(length + 1):
        z.append(sum(P[i] * ((q ** (k - i + 1) - 1) // (q - 1)) for i in range(min(k, len(P) - 1) + 1)))
    N = []
    for k in range(1, length + 1):
        N.append(k * z[k] - sum(N[i - 1] * z[k - i] for i in range(1, k)))
    return N


def numerator_from_counts(N: Sequence[int], q: int, g: int) -> List[int]:
    """
    P through degree g from N_1 .. N_g, completed by P(u) = q^g u^2g P(1/(qu)).
    """
    if len(N) < g:
        raise ValidationError(f"need N_1..N_{g}, have {len(N)}")
    z = _series_from_counts(N, g + 1)
    low = []
    for k in range(g + 1):
        c = z[k] - (1 + q) * (z[k - 1] if k >= 1 else 0) + q * (z[k - 2] if k >= 2 else 0)
        if c.denominator != 1:
            raise TheoremViolation(f"P coefficient {k} = {c} is not an integer", "zeta from census")
        low.append(int(c))
    P = low + [0] * g
    for i in range(g):
        P[2 * g - i] = q ** (g - i) * low[i]
    return P


def weil_bounds_ok(P: Sequence[int], q: int, g: int) -> bool:
    """a_i^2 <= C(2g, i)^2 q^i for every coefficient."""
    return all(a * a <= comb(2 * g, i) ** 2 * q ** i for i, a in enumerate(P))


def conductor_genus(prime: FqPoly, n: int) -> int:
    """
    Genus from the conductor-discriminant formula:
    2g - 2 = -2[F_n:F] + deg p * sum_chi c(chi) + #(chi odd),
    where c(chi) is the least level the character factors through and chi
    is odd when it is nontrivial on F_q^*.
    """
    q, d = prime.ctx.q, prime.degree
    sizes = [1] + [extension_degree(prime, k) for k in range(1, n + 1)]
    N = sizes[-1]
    finite = d * sum(k * (sizes[k] - sizes[k - 1]) for k in range(1, n + 1))
    odd = N - N // (q - 1)
    twice = -2 * N + finite + odd + 2
    if twice % 2:
        raise TheoremViolation(f"odd value {twice} for 2g", "conductor-discriminant genus")
    return twice // 2


def _consistent(census: PlaceCensus, q: int, g: int) -> bool:
    if g + 1 > census.m_max:
        return True
    P = numerator_from_counts(census.N, q, g)
    return _counts_from_numerator(P, q, census.m_max) == list(census.N)


@dataclass(frozen=True)
class ZetaReport:
    q: int
    prime: str
    level: int
    N: Tuple[int, ...]
    P: Tuple[int, ...]
    g: int
    h: int
    v_p_h: int
    weil_ok: bool
    diagnostics: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "P": list(self.P),
            "g": self.g,
            "h": self.h,
            "v_p_h": self.v_p_h,
            "weil_bounds_ok": self.weil_ok,
            "diagnostics": list(self.diagnostics),
        }


def genus(prime: FqPoly, n: int, cache=None) -> Tuple[int, Tuple[str, ...]]:
    """
    The conductor genus, checked against the census through degree g + 1
    when that is within the guardrail. A census-consistent value replaces
    an inconsistent one, with a diagnostic; no consistent value is an error.
    """
    q = prime.ctx.q
    g = conductor_genus(prime, n)
    if g + 1 > MAX_CENSUS_DEGREE:
        return g, (f"census check skipped: degree {g + 1} exceeds {MAX_CENSUS_DEGREE}",)
    census = place_census(prime, n, g + 1, cache)
    if _consistent(census, q, g):
        return g, ()
    wide = place_census(prime, n, MAX_CENSUS_DEGREE, cache)
    for candidate in range(MAX_CENSUS_DEGREE):
        if _consistent(wide, q, candidate):
            return candidate, (f"conductor genus {g} inconsistent with the census; using {candidate}",)
    raise TheoremViolation(f"no genus below {MAX_CENSUS_DEGREE} fits the place census", "genus")


def zeta_from_census(prime: FqPoly, n: int, cache=None) -> ZetaReport:
    """P(u), genus and class number h = P(1) of F_n from its place census."""
    q = prime.ctx.q
    g, diagnostics = genus(prime, n, cache)
    m_max = min(max(g + 1, 1), MAX_CENSUS_DEGREE)
    census = place_census(prime, n, m_max, cache)
    P = numerator_from_counts(census.N, q, g)
    predicted = _counts_from_numerator(P, q, m_max)
    if predicted != list(census.N):
        raise TheoremViolation(
            f"functional-equation completion predicts {predicted}, census gives {list(census.N)}", "zeta from census"
        )
    h = sum(P)
    if h <= 0:
        raise TheoremViolation(f"P(1) = {h} is not positive", "zeta from census")
    v = int(sympy.multiplicity(prime.ctx.p, h))
    return ZetaReport(q, prime.text(), n, census.N, tuple(P), g, h, v, weil_bounds_ok(P, q, g), diagnostics)


def reciprocity_table(prime: FqPoly, n: int, max_degree: int, predicted, cache=None) -> List[dict]:
    """
    Oracle residual degree against a predicted one for every irreducible
    place prime to p of degree <= max_degree; ``predicted`` maps a place to
    its claimed order.
    """
    torsion = carlitz_torsion_poly(prime, n)
    rows = []
    for f in ff_base.irreducibles_through(prime.ctx, max_degree, cache):
        if f == prime:
            continue
        factored = frobenius_order_oracle(f, prime, n, torsion)
        claim = predicted(f)
        rows.append({"place": f.text(), "f_factored": factored, "f_predicted": claim, "ok": factored == claim})
    return rows
