"""
Group-ring operations on top of ``GroupRingElem``: characters of the H factor,
idempotents, norm elements, corestriction, level projections, and ideals of
W[G] compared after truncation modulo p^M.

W is the p-localization of Q(zeta_m), m = exponent(H). An ideal of
R = (W/p^M)[G] is handled through the Z/p^M-module spanned by
gen * zeta^i * g, so R is flattened to (Z/p^M)^(|G| phi(m)).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import sympy

from src import howell
from src.arith_provider import character_value
from src.classes.abelian_group import AbelianGroup, Element
from src.classes.cover import CoverDescription
from src.classes.cyclo import CycloRational, phi
from src.classes.group_ring_elem import GroupRingElem
from src.errors import ValidationError


def chi_scalar(m: int, k: int):
    """zeta_m^k as a coefficient of a ring with m-th roots of unity."""
    if m == 1:
        return 1
    return CycloRational.zeta(m, k)


def apply_character_H(cd: CoverDescription, x: GroupRingElem, chi: Sequence[int]) -> GroupRingElem:
    """(h, g) -> chi(h) g, extended linearly; lands in W[G] with m = exponent(H)."""
    if x.group != cd.G_tilde:
        raise ValidationError("apply_character_H expects an element of Z[H x G]")
    m = cd.H.exponent
    acc: Dict[Element, object] = {}
    for e, c in x.terms:
        h, g = cd.split(e)
        value = chi_scalar(m, character_value(cd.H, chi, h)) * c
        acc[g] = acc[g] + value if g in acc else value
    return GroupRingElem.from_dict(cd.G, acc, m)


def idempotent(H: AbelianGroup, chi: Sequence[int]) -> GroupRingElem:
    """e_chi = (1/|H|) sum chi(delta^-1) delta."""
    m = H.exponent
    weight = Fraction(1, H.order)
    terms = {h: chi_scalar(m, -character_value(H, chi, h)) * weight for h in H.elements()}
    return GroupRingElem.from_dict(H, terms, m)


def norm_element(group: AbelianGroup, subgroup, m: int = 1) -> GroupRingElem:
    return GroupRingElem.norm(group, subgroup, m)


def embed_H(cd: CoverDescription, x: GroupRingElem) -> GroupRingElem:
    return x.push_forward(cd.G_tilde, lambda h: cd.join(h, cd.G.identity()))


def embed_G(cd: CoverDescription, x: GroupRingElem) -> GroupRingElem:
    return x.push_forward(cd.G_tilde, lambda g: cd.join(cd.H.identity(), g))


def chi_component(cd: CoverDescription, chi: Sequence[int], x: GroupRingElem) -> GroupRingElem:
    """e_chi * x for x in W[G], as an element of W[H x G]."""
    m = cd.H.exponent
    return embed_H(cd, idempotent(cd.H, chi)) * embed_G(cd, x.with_m(m))


def corestriction(x: GroupRingElem, group: AbelianGroup, projection: Callable[[Element], Element]) -> GroupRingElem:
    """Send each class of G/I to the sum of its lifts in G; ``projection`` is G -> G/I."""
    fibres: Dict[Element, List[Element]] = {}
    for e in group.elements():
        fibres.setdefault(x.group.reduce(projection(e)), []).append(e)
    acc = {}
    for e, c in x.terms:
        for lift in fibres.get(e, []):
            acc[lift] = c
    return GroupRingElem.from_dict(group, acc, x.m)


def level_projection(x: GroupRingElem, target: AbelianGroup, mapping: Dict[Element, Element]) -> GroupRingElem:
    """Reduce representatives modulo p^n; ``mapping`` comes from ``arith_provider.level_map``."""
    if set(mapping) != set(x.group.elements()):
        raise ValidationError("level projection mapping does not cover the source group")
    return x.push_forward(target, lambda e: mapping[e])


def local_idempotents(m: int, p: int, M: int) -> List[CycloRational]:
    """
    Primitive idempotents of (Z/p^M)[zeta_m], integer coordinates in [0, p^M).

    Phi_m factors mod p into distinct irreducibles; CRT idempotents mod p are
    lifted with e -> 3e^2 - 2e^3, which doubles the p-adic precision per step.
    """
    if m % p == 0:
        raise ValidationError(f"p={p} divides the root-of-unity order {m}")
    if phi(m) == 1:
        return [CycloRational.one(m)]
    x = sympy.Symbol("x")
    cyclotomic = sympy.Poly(sympy.cyclotomic_poly(m, x), x, modulus=p)
    _, factors = cyclotomic.factor_list()
    modulus = p ** M
    idempotents = []
    for f, _ in factors:
        cofactor = cyclotomic.quo(f)
        e = (cofactor * cofactor.invert(f)).rem(cyclotomic)
        coeffs = [int(c) % p for c in reversed(e.all_coeffs())]
        lifted = CycloRational.from_coeffs(m, coeffs)
        precision = 1
        while precision < M:
            lifted = 3 * lifted * lifted - 2 * lifted * lifted * lifted
            lifted = CycloRational.from_coeffs(m, lifted.residues(p, M))
            precision *= 2
        idempotents.append(CycloRational.from_coeffs(m, [c % modulus for c in lifted.residues(p, M)]))
    return idempotents


@dataclass(frozen=True)
class IdealHandle:
    """
    An ideal of (W/p^M)[group] given by generators.

    Attributes
    -----------
        group (AbelianGroup): the group G.
        m (int): coefficients in Q(zeta_m); 1 for Z_(p).
        p (int), M (int): the truncation W/p^M.
        generators (tuple[GroupRingElem, ...]): p-integral generators.
    """

    group: AbelianGroup
    m: int
    p: int
    M: int
    generators: Tuple[GroupRingElem, ...] = field(default=())

    @staticmethod
    def make(group: AbelianGroup, m: int, p: int, M: int, generators: Sequence[GroupRingElem]) -> "IdealHandle":
        gens = []
        for gen in generators:
            if gen.group != group:
                raise ValidationError("ideal generator lives over a different group")
            gen = gen.with_m(m) if gen.m != m else gen
            if not gen.is_p_integral(p):
                raise ValidationError(f"ideal generator {gen.text()} is not {p}-integral")
            gens.append(gen)
        return IdealHandle(group, m, p, M, tuple(gens))

    @property
    def width(self) -> int:
        return self.group.order * phi(self.m)

    def spanning_rows(self) -> List[np.ndarray]:
        rows = []
        zetas = [chi_scalar(self.m, i) for i in range(phi(self.m))]
        for gen in self.generators:
            for z in zetas:
                scaled = gen.scale(z)
                for g in self.group.elements():
                    rows.append(scaled.translate(g).residue_vector(self.p, self.M))
        return rows

    def howell(self):
        return howell.howell_form(self.spanning_rows(), self.p, self.M, self.width)

    def times(self, factor: GroupRingElem) -> "IdealHandle":
        return IdealHandle.make(self.group, self.m, self.p, self.M, [g * factor.with_m(self.m) for g in self.generators])


def _same_ring(a: IdealHandle, b: IdealHandle) -> None:
    if (a.group, a.m, a.p, a.M) != (b.group, b.m, b.p, b.M):
        raise ValidationError("ideals live in different truncated rings")


def ideal_contains(ideal: IdealHandle, x: GroupRingElem) -> bool:
    if x.group != ideal.group:
        raise ValidationError("element lives over a different group")
    x = x.with_m(ideal.m) if x.m != ideal.m else x
    basis, pivots = ideal.howell()
    return howell.in_span(x.residue_vector(ideal.p, ideal.M), basis, pivots, ideal.p, ideal.M)


def ideal_subset(a: IdealHandle, b: IdealHandle) -> bool:
    """a is contained in b."""
    _same_ring(a, b)
    basis, pivots = b.howell()
    return all(howell.in_span(row, basis, pivots, b.p, b.M) for row in a.spanning_rows())


def ideal_equal(a: IdealHandle, b: IdealHandle) -> bool:
    return ideal_subset(a, b) and ideal_subset(b, a)


def ideal_equal_per_factor(a: IdealHandle, b: IdealHandle) -> List[bool]:
    """Equality after multiplying by each primitive idempotent of W/p^M."""
    _same_ring(a, b)
    results = []
    for e in local_idempotents(a.m, a.p, a.M):
        unit = GroupRingElem.basis(a.group, a.group.identity(), e if a.m > 1 else e.rep[0], a.m)
        results.append(ideal_equal(a.times(unit), b.times(unit)))
    return results


def quotient_length(ideal: IdealHandle) -> int:
    """Z_p-length of R/(I + p^M R)."""
    _, pivots = ideal.howell()
    return howell.quotient_length(pivots, ideal.width, ideal.M)
