"""
Galois and ramification data of abelian covers of F_q(t).

The Carlitz provider computes everything for F_n = F(Carlitz p^n-torsion):
the ray class group (A/p^n)^* split as H x G_n with a Teichmuller lift of
(A/p)^*, the ramified places p and infinity, and the Frobenius classes of
the unramified places through a degree bound. File covers come in through
``src.cover_file`` and share the ``CoverDescription`` type.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from src import ff_base
from src.classes.abelian_group import MAX_GROUP_ORDER, AbelianGroup, Element, decompose, quotient
from src.classes.cover import (
    INFINITY_LABEL,
    CarlitzData,
    CharacterData,
    CoverDescription,
    RamifiedPlace,
    UnramifiedPlace,
)
from src.classes.finite_field import FqContext, FqPoly
from src.errors import GuardrailError, ValidationError


@dataclass(frozen=True)
class RayUnit:
    """A class in (A/p^n)^*, represented by its reduced residue."""

    rep: FqPoly
    prime: FqPoly
    level: int

    @staticmethod
    def make(rep: FqPoly, prime: FqPoly, level: int) -> "RayUnit":
        modulus = prime ** level
        reduced = rep % modulus
        if (reduced % prime).is_zero():
            raise ValidationError(f"{rep} is not prime to {prime}")
        return RayUnit(reduced, prime, level)

    @property
    def modulus(self) -> FqPoly:
        return self.prime ** self.level

    def __mul__(self, other: "RayUnit") -> "RayUnit":
        if (other.prime, other.level) != (self.prime, self.level):
            raise ValidationError("ray units of different moduli")
        return RayUnit((self.rep * other.rep) % self.modulus, self.prime, self.level)

    def __pow__(self, exponent: int) -> "RayUnit":
        if exponent < 0:
            raise ValidationError("negative powers of ray units are taken through the group table")
        return RayUnit(self.rep.pow_mod(exponent, self.modulus), self.prime, self.level)

    def is_one(self) -> bool:
        return self.rep.is_one()

    def key(self) -> Tuple[int, ...]:
        return ff_base.residue_key(self.rep, self.level * self.prime.degree)


@dataclass(frozen=True)
class HGSplit:
    h_part: RayUnit
    g_part: RayUnit


def split_orders(prime: FqPoly, level: int) -> Tuple[int, int]:
    """(|H|, |G_n|) = (q^d - 1, q^(d(n-1)))."""
    q, d = prime.ctx.q, prime.degree
    return q ** d - 1, q ** (d * (level - 1))


def hg_split(x: RayUnit) -> HGSplit:
    """
    Split x into its prime-to-p part and its p-part.

    h_part = x^(|G| beta) with beta = |G|^-1 mod |H|, g_part = x^(|H| alpha)
    with alpha = |H|^-1 mod |G|; their product is x.
    """
    order_h, order_g = split_orders(x.prime, x.level)
    beta = pow(order_g, -1, order_h) if order_h > 1 else 0
    alpha = pow(order_h, -1, order_g) if order_g > 1 else 0
    return HGSplit(x ** (order_g * beta), x ** (order_h * alpha))


def _residues(ctx: FqContext, width: int) -> Iterable[FqPoly]:
    for digits in product(range(ctx.q), repeat=width):
        yield FqPoly.from_coeffs(ctx, digits)


class RayClassGroup:
    """
    (A/p^n)^* with an explicit isomorphism to H x G_n.

    H is cyclic, generated by the Teichmuller lift of the first primitive
    residue mod p; G_n = (1 + pA)/(1 + p^n A) is decomposed into cyclic
    factors. ``table`` maps residue keys to exponent vectors of H x G_n.
    """

    def __init__(self, prime: FqPoly, level: int):
        if level < 1:
            raise ValidationError(f"level must be >= 1, got {level}")
        self.ctx = prime.ctx
        self.prime = prime
        self.level = level
        self.modulus = prime ** level
        self.width = level * prime.degree
        self.order_H, self.order_G = split_orders(prime, level)
        if self.order_H * self.order_G > MAX_GROUP_ORDER:
            raise GuardrailError(
                f"|G~_n| = {self.order_H * self.order_G} exceeds {MAX_GROUP_ORDER} for prime {prime}, level {level}"
            )
        self.h_generator = self._teichmuller_generator()
        self.H = AbelianGroup((self.order_H,), ("h",))

        one = FqPoly.one(self.ctx)
        units = {}
        for b in _residues(self.ctx, self.width - prime.degree):
            unit = RayUnit.make(one + prime * b, prime, level)
            units[unit.key()] = unit
        identity = RayUnit.make(one, prime, level).key()
        group, dlog, basis = decompose(
            sorted(units), lambda a, b: (units[a] * units[b]).key(), identity
        )
        self.G = AbelianGroup(group.invariants, tuple(f"g{i}" for i in range(group.rank)))
        self.g_basis = [units[k] for k in basis]

        self.table: Dict[Tuple[int, ...], Element] = {}
        self.lifts: Dict[Element, RayUnit] = {}
        h_power = RayUnit.make(one, prime, level)
        for k in range(self.order_H):
            for key, vector in dlog.items():
                x = h_power * units[key]
                element = (k,) + tuple(vector)
                self.table[x.key()] = element
                self.lifts[element] = x
            h_power = h_power * self.h_generator

    def _teichmuller_generator(self) -> RayUnit:
        d = self.prime.degree
        order = self.order_H
        one = FqPoly.one(self.ctx)
        if order == 1:
            return RayUnit.make(one, self.prime, self.level)
        cofactors = [order // ell for ell in sympy.factorint(order)]
        for x in _residues(self.ctx, d):
            if x.is_zero():
                continue
            if all(not x.pow_mod(c, self.prime).is_one() for c in cofactors):
                unit = RayUnit.make(x, self.prime, self.level)
                return hg_split(unit).h_part
        raise ValidationError(f"(A/{self.prime})^* has no generator; is the prime irreducible?")

    @property
    def G_tilde(self) -> AbelianGroup:
        return AbelianGroup.product_of(self.H, self.G)

    def classify(self, a: FqPoly) -> Optional[Element]:
        """Exponent vector of [a mod p^n], or None when a is not prime to p."""
        return self.table.get(ff_base.residue_key(a % self.modulus, self.width))

    def lift(self, element: Element) -> RayUnit:
        return self.lifts[self.G_tilde.reduce(element)]


@lru_cache(maxsize=32)
def ray_class_group(q: int, prime: Tuple[int, ...], level: int) -> RayClassGroup:
    ctx = FqContext.create(q)
    return RayClassGroup(FqPoly(ctx, tuple(prime)), level)


def ray_group_of(cd: CoverDescription) -> RayClassGroup:
    if cd.carlitz is None:
        raise ValidationError("cover has no Carlitz ray class data; ideals cannot be enumerated")
    return ray_class_group(cd.carlitz.q, cd.carlitz.prime, cd.carlitz.level)


def level_map(high: RayClassGroup, low: RayClassGroup) -> Dict[Element, Element]:
    """The projection G~_{n+m} -> G~_n on exponent vectors."""
    if high.prime != low.prime or high.level < low.level:
        raise ValidationError("level projection needs the same prime and a lower target level")
    return {e: low.classify(x.rep) for e, x in high.lifts.items()}


def carlitz_provider(ctx: FqContext, prime: FqPoly, n: int, D: int, cache=None) -> CoverDescription:
    """
    Cover data of F_n / F for the Carlitz module and the prime p.

    S = {p, inf}: p totally ramified, inertia at infinity the image of F_q^*,
    Fr_inf = 1; unramified places are the monic irreducibles other than p
    of degree <= D with Frobenius [q mod p^n].
    """
    if not prime.is_monic() or prime.degree < 1 or not ff_base.is_irreducible(prime):
        raise ValidationError(f"prime {prime} must be monic irreducible")
    if D < 1:
        raise ValidationError(f"degree bound must be >= 1, got {D}")
    rcg = ray_class_group(ctx.q, prime.coeffs, n)
    H, G = rcg.H, rcg.G
    g_identity = G.identity()
    h_generators = ((1,),) if rcg.order_H > 1 else ()
    g_generators = tuple(tuple(int(i == j) for i in range(G.rank)) for j in range(G.rank))

    constant = int(ctx.gf.primitive_element)
    const_class = rcg.classify(FqPoly.from_coeffs(ctx, [constant]))
    const_h, const_g = const_class[:1], const_class[1:]
    if any(const_g):
        raise ValidationError("constants must lie in the prime-to-p factor")

    S = (
        RamifiedPlace(prime.text(), prime.degree, h_generators, g_generators, (0,), g_identity, True),
        RamifiedPlace(INFINITY_LABEL, 1, (tuple(const_h),) if any(const_h) else (), (), (0,), g_identity, False),
    )
    places = []
    for f in ff_base.irreducibles_through(ctx, D, cache):
        if f == prime:
            continue
        element = rcg.classify(f)
        places.append(UnramifiedPlace(f.degree, element[:1], element[1:], f.text()))
    return CoverDescription(
        p=ctx.p,
        r=ctx.r,
        H=H,
        G=G,
        gal_F1_over_HA=((1,),) if rcg.order_H > 1 else ((0,),),
        S=S,
        degree_bound=D,
        places=tuple(places),
        stabilization_degree=n * prime.degree,
        carlitz=CarlitzData(ctx.q, prime.coeffs, n),
    )


def character_group(H: AbelianGroup) -> List[Tuple[int, ...]]:
    return [tuple(c) for c in product(*(range(n) for n in H.invariants))]


def character_value(H: AbelianGroup, chi: Sequence[int], h: Sequence[int]) -> int:
    """k with chi(h) = zeta_m^k, m = exponent(H)."""
    m = H.exponent
    return sum(c * x * (m // n) for c, x, n in zip(chi, h, H.invariants)) % m


def classify_character(cd: CoverDescription, chi: Sequence[int]) -> CharacterData:
    """Type 1 if chi(I_inf) != 1, type 2 if trivial there but not on Gal(F_1/H_A), type 3 otherwise."""
    H = cd.H
    chi = H.reduce(chi)
    if not cd.gal_F1_over_HA:
        raise ValidationError("cover description lacks the Gal(F_1/H_A) subgroup marker")

    def trivial_on(gens) -> bool:
        return all(character_value(H, chi, h) == 0 for h in gens)

    inf = cd.infinity
    if inf is not None and not trivial_on(inf.inertia_H):
        kind = 1
    elif not trivial_on(cd.gal_F1_over_HA):
        kind = 2
    else:
        kind = 3
    frob = character_value(H, chi, cd.totally_ramified.frob_H)
    return CharacterData(chi, H.exponent, kind, frob, not any(chi))


def cover_quotient(cd: CoverDescription, W: Sequence[str]) -> CoverDescription:
    """
    Cover data of K^W / F: the group (H x G)/I_W, with the places of W moved
    into the unramified stream carrying their projected Frobenius.
    """
    labels = set(W)
    v1 = cd.totally_ramified
    if v1.label in labels:
        raise ValidationError(f"W must avoid the totally ramified place {v1.label}")
    chosen = [cd.place(label) for label in sorted(labels)]
    span_H = cd.H.span([h for v in chosen for h in v.inertia_H])
    span_G = cd.G.span([g for v in chosen for g in v.inertia_G])
    H, to_H = quotient(cd.H, span_H)
    G, to_G = quotient(cd.G, span_G)

    def project_H(gens):
        return tuple(x for x in (to_H[h] for h in gens) if any(x))

    def project_G(gens):
        return tuple(x for x in (to_G[g] for g in gens) if any(x))

    S = tuple(
        RamifiedPlace(v.label, v.degree, project_H(v.inertia_H), project_G(v.inertia_G),
                      to_H[v.frob_H], to_G[v.frob_G], v.totally_ramified)
        for v in cd.S if v.label not in labels
    )
    restored = [UnramifiedPlace(v.degree, to_H[v.frob_H], to_G[v.frob_G], v.label) for v in chosen]
    places = [UnramifiedPlace(w.degree, to_H[w.frob_H], to_G[w.frob_G], w.label) for w in cd.places]
    places = sorted(places + restored, key=lambda w: w.degree)
    gal = tuple(to_H[h] for h in cd.gal_F1_over_HA)
    return CoverDescription(
        p=cd.p,
        r=cd.r,
        H=H,
        G=G,
        gal_F1_over_HA=gal,
        S=S,
        degree_bound=cd.degree_bound,
        places=tuple(places),
        stabilization_degree=cd.stabilization_degree,
        carlitz=cd.carlitz if not labels else None,
    )


def quotient_projection(cd: CoverDescription, W: Sequence[str]):
    """The projection H x G -> (H x G)/I_W matching ``cover_quotient``."""
    chosen = [cd.place(label) for label in sorted(set(W))]
    _, to_H = quotient(cd.H, cd.H.span([h for v in chosen for h in v.inertia_H]))
    _, to_G = quotient(cd.G, cd.G.span([g for v in chosen for g in v.inertia_G]))

    def project(x: Element) -> Element:
        h, g = cd.split(x)
        return tuple(to_H[h]) + tuple(to_G[g])

    return project
