"""
Stickelberger series of a cover, computed as an Euler product over the
unramified place stream and, for Carlitz covers, as a Dirichlet sum over
monic polynomials; their character parts, the substitution u = g, trivial
zeros at g = 1 and compatibility under level projection.
"""
import multiprocessing
from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src import ff_base
from src.arith_provider import character_group, classify_character, level_map, ray_class_group, ray_group_of
from src.classes.abelian_group import AbelianGroup, Element
from src.classes.cover import CharacterData, CoverDescription
from src.classes.cyclo import CycloRational
from src.classes.group_ring_elem import GroupRingElem
from src.classes.series import ChiTheta, GammaPoly, ThetaSeries
from src.errors import TheoremViolation, ValidationError
from src.group_ring import apply_character_H, level_projection, norm_element


def default_degree(level: int, prime_degree: int) -> int:
    return max(level * prime_degree + 2, 6)


def _rows_to_elems(group: AbelianGroup, rows: np.ndarray) -> Tuple[GroupRingElem, ...]:
    elements = list(group.elements())
    return tuple(
        GroupRingElem.from_dict(group, {elements[i]: int(row[i]) for i in np.flatnonzero(row)})
        for row in rows
    )


def theta_euler(cd: CoverDescription, D: int) -> ThetaSeries:
    """
    prod over unramified w of (1 - Fr_w^-1 u^deg w)^-1 to O(u^(D+1)).

    Each local factor is applied in place: c_j += Fr_w^-1 c_(j - deg w) for
    ascending j, which expands the geometric series.
    """
    if D < 0:
        raise ValidationError(f"truncation degree must be >= 0, got {D}")
    group = cd.G_tilde
    elements = list(group.elements())
    index = {e: i for i, e in enumerate(elements)}
    coeffs = np.zeros((D + 1, group.order), dtype=np.int64)
    coeffs[0, index[group.identity()]] = 1
    for w in cd.places_through(D):
        sigma = group.neg(cd.frob(w))
        target = np.array([index[group.add(e, sigma)] for e in elements])
        for j in range(w.degree, D + 1):
            shifted = np.zeros(group.order, dtype=np.int64)
            shifted[target] = coeffs[j - w.degree]
            coeffs[j] += shifted
    return ThetaSeries(group, D, _rows_to_elems(group, coeffs), "euler")


def _dirichlet_chunk(task: Tuple[int, Tuple[int, ...], int, int, int, int]) -> Tuple[int, Dict[Element, int]]:
    q, prime, level, d, start, stop = task
    rcg = ray_class_group(q, prime, level)
    group = rcg.G_tilde
    counts: Counter = Counter()
    for a in ff_base.enumerate_monics(rcg.ctx, d, start, stop):
        element = rcg.classify(a)
        if element is not None:
            counts[group.neg(element)] += 1
    return d, dict(counts)


def theta_dirichlet(cd: CoverDescription, D: int, workers: int = 1) -> ThetaSeries:
    """
    c_d = sum over monic a of degree d prime to p of [a]^-1.

    The enumeration of each degree is split into index ranges; with more than
    one worker the ranges run on a process pool. Merging is addition, so the
    result does not depend on the worker count.
    """
    rcg = ray_group_of(cd)
    if rcg.G_tilde.invariants != cd.G_tilde.invariants:
        raise ValidationError("cover group does not match its ray class group")
    carlitz = cd.carlitz
    tasks = []
    chunks = max(workers, 1) * 4
    for d in range(D + 1):
        total = ff_base.monic_count(rcg.ctx, d)
        step = max(1, -(-total // chunks))
        for start in range(0, total, step):
            tasks.append((carlitz.q, carlitz.prime, carlitz.level, d, start, min(start + step, total)))
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_dirichlet_chunk, tasks)
    else:
        parts = [_dirichlet_chunk(task) for task in tasks]
    merged: List[Counter] = [Counter() for _ in range(D + 1)]
    for d, counts in parts:
        merged[d].update(counts)
    group = cd.G_tilde
    coeffs = tuple(GroupRingElem.from_dict(group, dict(c)) for c in merged)
    return ThetaSeries(group, D, coeffs, "dirichlet")


def _is_norm_multiple(x: GroupRingElem) -> bool:
    if len(x.terms) != x.group.order:
        return False
    first = x.terms[0][1]
    return all(c == first for _, c in x.terms)


# Degrees past D0 that must confirm the tail before it counts as verified.
MIN_TAIL_CONFIRMATIONS: int = 2


def _carlitz_tail(cd: CoverDescription, m: int, D0: int, d: int) -> GroupRingElem:
    """|H| q^(d - D0) n(G): the chi_0 coefficient of a Carlitz cover in degree d >= D0."""
    return norm_element(cd.G, cd.G.elements(), m).scale(cd.H.order * cd.q ** (d - D0))


def _tail_ok(coeffs: Sequence[GroupRingElem], D0: int, trivial: bool, cd: CoverDescription) -> bool:
    if not trivial:
        return all(coeffs[d].is_zero() for d in range(D0, len(coeffs)))
    if cd.carlitz is not None:
        m = coeffs[0].m
        return all((coeffs[d] - _carlitz_tail(cd, m, D0, d)).is_zero() for d in range(D0, len(coeffs)))
    if not _is_norm_multiple(coeffs[D0]):
        return False
    return all((coeffs[d] - coeffs[d - 1].scale(cd.q)).is_zero() for d in range(D0 + 1, len(coeffs)))


def chi_theta(theta: ThetaSeries, cd: CoverDescription, character: CharacterData) -> ChiTheta:
    """
    chi applied to each coefficient, then the tail checked: zero from D0 for
    chi != chi_0, q-geometric from D0 for chi_0. On Carlitz covers the chi_0
    tail is compared with its closed form |H| q^(d - D0) n(G).

    D0 is the declared stabilization degree of the cover; for file covers
    without one it is the smallest degree after which the tail has the
    required shape. Either way the series must reach D0 + 1 (D0 + 2 when
    D0 is detected) before the tail is verified.
    """
    coeffs = tuple(apply_character_H(cd, c, character.chi) for c in theta.coeffs)
    D = theta.D
    q = cd.q
    warnings = []
    if cd.stabilization_degree is not None:
        D0 = cd.stabilization_degree
        if D < D0 + MIN_TAIL_CONFIRMATIONS - 1:
            verified = False
            warnings.append(f"D={D} does not reach past the stabilization degree {D0}; tail not verified")
        else:
            verified = _tail_ok(coeffs, D0, character.trivial, cd)
            if not verified:
                warnings.append(f"{character.tag}: tail does not stabilize at declared D0={D0}")
    else:
        candidates = range(D - MIN_TAIL_CONFIRMATIONS + 1)
        D0 = next((d for d in candidates if _tail_ok(coeffs, d, character.trivial, cd)), None)
        verified = D0 is not None
        if not verified:
            warnings.append(f"{character.tag}: no stabilization detected within D={D}")
    return ChiTheta(character, cd.G, q, coeffs, D0, verified, tuple(warnings))


def substitute_gamma(ct: ChiTheta) -> GammaPoly:
    """u -> g; chi_0 keeps its q-geometric tail as N(g) / (1 - q g)."""
    if not ct.verified:
        raise ValidationError(
            f"{ct.character.tag}: tail not verified (D={ct.D}, D0={ct.D0}); raise the degree bound"
        )
    m = ct.coeffs[0].m
    if not ct.character.trivial:
        return GammaPoly.make(ct.group, m, ct.coeffs[: ct.D0], ct.q)
    numerator = [ct.coeffs[0]] + [ct.coeffs[d] - ct.coeffs[d - 1].scale(ct.q) for d in range(1, ct.D0 + 1)]
    return GammaPoly.make(ct.group, m, numerator, ct.q, geometric_tail=True)


def integral_gamma(theta: ThetaSeries, cd: CoverDescription) -> GammaPoly:
    """
    Theta over Z[H x G] as N(g) / (1 - q g), with N_d = c_d - q c_(d-1)
    checked to vanish for D0 < d <= D.
    """
    q = cd.q
    c = theta.coeffs
    numerator = [c[0]] + [c[d] - c[d - 1].scale(q) for d in range(1, theta.D + 1)]

    def vanishes_after(D0: int) -> bool:
        return all(n.is_zero() for n in numerator[D0 + 1:])

    D0 = cd.stabilization_degree
    if D0 is None:
        D0 = next((d for d in range(theta.D - MIN_TAIL_CONFIRMATIONS + 1) if vanishes_after(d)), None)
    if D0 is None or theta.D < D0 + 1 or not vanishes_after(D0):
        raise ValidationError(f"integral Stickelberger series not stabilized within D={theta.D} (D0={D0})")
    return GammaPoly.make(theta.group, 1, numerator[: D0 + 1], q, geometric_tail=True)


def _divide_one_minus_g(coeffs: Sequence[GroupRingElem], group: AbelianGroup, m: int) -> Tuple[List[GroupRingElem], bool]:
    """Synthetic division by (1 - g): quotient coefficients are prefix sums."""
    quotient = []
    running = GroupRingElem.zero(group, m)
    for c in coeffs[:-1]:
        running = running + c
        quotient.append(running)
    total = running + coeffs[-1] if coeffs else running
    return quotient, total.is_zero()


def trivial_zero_order(f: GammaPoly) -> Tuple[int, GammaPoly]:
    """Largest k with (1 - g)^k dividing f, and f / (1 - g)^k."""
    if f.is_zero():
        raise ValidationError("trivial-zero order of the zero polynomial is undefined")
    k = 0
    current = f
    while True:
        quotient, exact = _divide_one_minus_g(current.numerator, f.group, f.m)
        if not exact:
            return k, current
        current = current.with_numerator(quotient)
        k += 1


def divide_by_one_minus_g(f: GammaPoly, times: int, case: str) -> GammaPoly:
    current = f
    for _ in range(times):
        quotient, exact = _divide_one_minus_g(current.numerator, f.group, f.m)
        if not exact:
            raise TheoremViolation(f"division by (1-g)^{times} leaves a remainder", case)
        current = current.with_numerator(quotient)
    return current


def _invert_scalar(c):
    if isinstance(c, CycloRational):
        return c.inverse()
    return Fraction(1) / Fraction(c)


def series_quotient(numerator: Sequence[GroupRingElem], divisor: Sequence[GroupRingElem], case: str) -> List[GroupRingElem]:
    """
    Exact long division of polynomials in g over a group ring.

    The divisor's leading coefficient must be a single term c * sigma with c
    invertible; any remainder raises TheoremViolation tagged with ``case``.
    """
    divisor = list(divisor)
    while divisor and divisor[-1].is_zero():
        divisor.pop()
    if not divisor:
        raise ValidationError("division by the zero polynomial")
    lead = divisor[-1]
    if len(lead.terms) != 1:
        raise ValidationError(f"leading coefficient {lead.text()} is not a unit multiple of a group element")
    (sigma, c), = lead.terms
    group = lead.group
    inverse = GroupRingElem.basis(group, group.neg(sigma), _invert_scalar(c), lead.m)
    k = len(divisor) - 1
    remainder = list(numerator)
    quotient = [GroupRingElem.zero(group, lead.m) for _ in range(max(len(remainder) - k, 0))]
    for i in range(len(remainder) - 1, k - 1, -1):
        coef = remainder[i] * inverse
        if coef.is_zero():
            continue
        quotient[i - k] = coef
        for j, dj in enumerate(divisor):
            remainder[i - k + j] = remainder[i - k + j] - coef * dj
    if any(not r.is_zero() for r in remainder):
        raise TheoremViolation("exact division left a nonzero remainder", case)
    return quotient


def gamma_quotient(f: GammaPoly, divisor: Sequence[GroupRingElem], case: str) -> GammaPoly:
    return f.with_numerator(series_quotient(f.numerator, divisor, case))


def evaluate_at_gamma_one(f: GammaPoly) -> GroupRingElem:
    return f.at_one()


def projection_compat_check(low: CoverDescription, high: CoverDescription, D: int) -> dict:
    """
    Compare Theta at level n with the projection of Theta at level n + m,
    integrally and per character of H. Failures are listed, never raised.
    """
    theta_low = theta_euler(low, D)
    theta_high = theta_euler(high, D)
    mapping = level_map(ray_group_of(high), ray_group_of(low))
    failures = [
        d for d in range(D + 1)
        if not (level_projection(theta_high.coeffs[d], low.G_tilde, mapping) - theta_low.coeffs[d]).is_zero()
    ]
    g_mapping = {
        g: low.split(mapping[high.join(high.H.identity(), g)])[1] for g in high.G.elements()
    }
    characters = []
    for chi in character_group(low.H):
        kind_low = classify_character(low, chi)
        ct_low = chi_theta(theta_low, low, kind_low)
        ct_high = chi_theta(theta_high, high, classify_character(high, chi))
        bad = [
            d for d in range(D + 1)
            if not (level_projection(ct_high.coeffs[d], low.G, g_mapping) - ct_low.coeffs[d]).is_zero()
        ]
        characters.append({"chi": list(chi), "type": kind_low.type, "ok": not bad, "failures": bad})
    return {
        "levels": [low.carlitz.level, high.carlitz.level],
        "D": D,
        "integral": {"ok": not failures, "failures": failures},
        "characters": characters,
        "ok": not failures and all(c["ok"] for c in characters),
    }
