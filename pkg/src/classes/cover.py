from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from src.classes.abelian_group import AbelianGroup, Element
from src.errors import ValidationError


INFINITY_LABEL = "inf"


@dataclass(frozen=True)
class RamifiedPlace:
    """
    A place of S with its inertia images and a Frobenius class.

    Attributes
    -----------
        label (str): place name; ``inf`` marks the place at infinity.
        degree (int): residue degree d_v over F_q.
        inertia_H, inertia_G (tuple): generators of pi_H(I_v) and pi_G(I_v).
        frob_H, frob_G (tuple[int, ...]): a Frobenius lift, meaningful modulo inertia.
        totally_ramified (bool): marks the place v_1.
    """

    label: str
    degree: int
    inertia_H: Tuple[Element, ...]
    inertia_G: Tuple[Element, ...]
    frob_H: Element
    frob_G: Element
    totally_ramified: bool = False


@dataclass(frozen=True)
class UnramifiedPlace:
    degree: int
    frob_H: Element
    frob_G: Element
    label: str = ""


@dataclass(frozen=True)
class CarlitzData:
    """Parameters of a Carlitz cyclotomic cover: F_q, the prime (coefficients, constant first) and the level."""

    q: int
    prime: Tuple[int, ...]
    level: int


@dataclass(frozen=True)
class CoverDescription:
    """
    Galois and ramification data of an abelian cover with group H x G.

    The inertia group of a place is taken to be pi_H(I_v) x pi_G(I_v); the
    unramified place stream is complete through ``degree_bound``.
    """

    p: int
    r: int
    H: AbelianGroup
    G: AbelianGroup
    gal_F1_over_HA: Tuple[Element, ...]
    S: Tuple[RamifiedPlace, ...]
    degree_bound: int
    places: Tuple[UnramifiedPlace, ...]
    stabilization_degree: Optional[int] = None
    carlitz: Optional[CarlitzData] = field(default=None, compare=True)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def G_tilde(self) -> AbelianGroup:
        return AbelianGroup.product_of(self.H, self.G)

    def join(self, h: Element, g: Element) -> Element:
        return tuple(h) + tuple(g)

    def split(self, x: Element) -> Tuple[Element, Element]:
        return tuple(x[: self.H.rank]), tuple(x[self.H.rank:])

    @property
    def totally_ramified(self) -> RamifiedPlace:
        marked = [v for v in self.S if v.totally_ramified]
        if len(marked) != 1:
            raise ValidationError(f"expected exactly one totally ramified place, found {len(marked)}")
        return marked[0]

    @property
    def S_prime(self) -> Tuple[RamifiedPlace, ...]:
        v1 = self.totally_ramified
        return tuple(v for v in self.S if v.label != v1.label)

    @property
    def infinity(self) -> Optional[RamifiedPlace]:
        for v in self.S:
            if v.label == INFINITY_LABEL:
                return v
        return None

    def place(self, label: str) -> RamifiedPlace:
        for v in self.S:
            if v.label == label:
                return v
        raise ValidationError(f"no place labelled '{label}' in S")

    def inertia(self, v: RamifiedPlace) -> frozenset:
        """I_v as a subgroup of H x G."""
        gens = [self.join(h, self.G.identity()) for h in v.inertia_H]
        gens += [self.join(self.H.identity(), g) for g in v.inertia_G]
        return self.G_tilde.span(gens)

    def inertia_G_trivial(self, v: RamifiedPlace) -> bool:
        return all(not any(g) for g in v.inertia_G)

    def frob(self, v) -> Element:
        return self.join(v.frob_H, v.frob_G)

    def places_through(self, D: int) -> List[UnramifiedPlace]:
        if D > self.degree_bound:
            raise ValidationError(f"place stream is complete only through degree {self.degree_bound}, asked for {D}")
        return [w for w in self.places if w.degree <= D]

    def with_places(self, places: Tuple[UnramifiedPlace, ...], degree_bound: int) -> "CoverDescription":
        return replace(self, places=places, degree_bound=degree_bound)


@dataclass(frozen=True)
class CharacterData:
    """
    A character of H with its classification.

    Attributes
    -----------
        chi (tuple[int, ...]): exponents on the generators of H.
        value_order (int): m = exponent(H); values are powers of zeta_m.
        type (int): 1, 2 or 3.
        frob_p_value (int): exponent k with chi(Fr_{v_1,H}) = zeta_m^k.
        trivial (bool): chi is chi_0.
    """

    chi: Tuple[int, ...]
    value_order: int
    type: int
    frob_p_value: int
    trivial: bool

    @property
    def tag(self) -> str:
        return "chi0" if self.trivial else f"chi{list(self.chi)}"

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi),
            "m": self.value_order,
            "type": self.type,
            "frob_p_exponent": self.frob_p_value,
            "trivial": self.trivial,
        }
