from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from src.classes.abelian_group import AbelianGroup
from src.classes.cover import CharacterData
from src.classes.group_ring_elem import GroupRingElem


@dataclass(frozen=True)
class ThetaSeries:
    """
    A Stickelberger series truncated at u^D.

    Attributes
    -----------
        group (AbelianGroup): H x G of the cover.
        D (int): truncation degree.
        coeffs (tuple[GroupRingElem, ...]): c_0 .. c_D over Z[H x G].
        method (str): ``euler`` or ``dirichlet``.
    """

    group: AbelianGroup
    D: int
    coeffs: Tuple[GroupRingElem, ...]
    method: str

    def coefficient(self, d: int) -> GroupRingElem:
        return self.coeffs[d]

    def to_json(self) -> List[list]:
        return [c.to_json() for c in self.coeffs]


@dataclass(frozen=True)
class ChiTheta:
    """
    chi(Theta) over W[G], with the stabilization status of its tail.

    For chi != chi_0 a verified tail is zero from D0 on; for chi_0 it is
    q-geometric, b_d = q^(d - D0) b_D0 with b_D0 a multiple of n(G).
    """

    character: CharacterData
    group: AbelianGroup
    q: int
    coeffs: Tuple[GroupRingElem, ...]
    D0: Optional[int]
    verified: bool
    warnings: Tuple[str, ...] = field(default=())

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        out = {
            "character": self.character.to_json(),
            "coefficients": [c.to_json() for c in self.coeffs],
            "stabilization": {"D0": self.D0, "verified": self.verified},
        }
        if self.character.trivial and self.verified:
            out["closed_form"] = {
                "polynomial_part": [c.to_json() for c in self.coeffs[: self.D0]],
                "tail_coefficient": self.coeffs[self.D0].to_json(),
                "ratio": self.q,
                "D0": self.D0,
            }
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


@dataclass(frozen=True)
class GammaPoly:
    """
    A polynomial in g = gamma^-1 over a group ring, or such a polynomial over
    (1 - q g) when ``geometric_tail`` is set.

    Attributes
    -----------
        group (AbelianGroup): the group of the coefficient ring.
        m (int): coefficients in Q(zeta_m).
        numerator (tuple[GroupRingElem, ...]): N_0 .. N_k, no trailing zeros.
        q (int): the ratio of the geometric tail.
        geometric_tail (bool): the value is N(g) / (1 - q g).
    """

    group: AbelianGroup
    m: int
    numerator: Tuple[GroupRingElem, ...]
    q: int
    geometric_tail: bool = False

    @staticmethod
    def make(group: AbelianGroup, m: int, coeffs, q: int, geometric_tail: bool = False) -> "GammaPoly":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        return GammaPoly(group, m, tuple(coeffs), q, geometric_tail)

    @property
    def degree(self) -> int:
        return len(self.numerator) - 1

    def is_zero(self) -> bool:
        return not self.numerator

    def with_numerator(self, coeffs) -> "GammaPoly":
        return GammaPoly.make(self.group, self.m, coeffs, self.q, self.geometric_tail)

    def numerator_at_one(self) -> GroupRingElem:
        total = GroupRingElem.zero(self.group, self.m)
        for c in self.numerator:
            total = total + c
        return total

    def at_one(self) -> GroupRingElem:
        value = self.numerator_at_one()
        if self.geometric_tail:
            value = value.scale(Fraction(1, 1 - self.q))
        return value

    def scale(self, x: GroupRingElem) -> "GammaPoly":
        return self.with_numerator([c * x for c in self.numerator])

    def to_json(self) -> dict:
        return {
            "numerator": [c.to_json() for c in self.numerator],
            "geometric_tail": self.geometric_tail,
            "denominator": f"1-{self.q}*g" if self.geometric_tail else "1",
        }
