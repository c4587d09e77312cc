from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

from src.classes.abelian_group import AbelianGroup, Element
from src.classes.cyclo import CycloRational, phi
from src.errors import ValidationError


Scalar = Union[int, Fraction, CycloRational]


def _is_zero(c: Scalar) -> bool:
    return c.is_zero() if isinstance(c, CycloRational) else c == 0


def coerce_scalar(c: Scalar, m: int) -> Scalar:
    """Bring a scalar into the coefficient field Q(zeta_m); m = 1 means Q."""
    if m == 1:
        if isinstance(c, CycloRational):
            if any(c.rep[1:]):
                raise ValidationError(f"{c.text()} is not rational")
            return c.rep[0]
        return c
    if isinstance(c, CycloRational):
        if c.m != m:
            raise ValidationError(f"coefficient of order {c.m} in a ring of order {m}")
        return c
    return CycloRational.scalar(m, c)


@dataclass(frozen=True)
class GroupRingElem:
    """
    A sparse element of Q(zeta_m)[group], m = 1 for rational coefficients.

    Attributes
    -----------
        group (AbelianGroup): the finite group.
        terms (tuple): (element, coefficient) pairs sorted by element, no
            zero coefficients.
        m (int): coefficient field Q(zeta_m).
    """

    group: AbelianGroup
    terms: Tuple[Tuple[Element, Scalar], ...]
    m: int = 1

    @staticmethod
    def from_dict(group: AbelianGroup, mapping: Mapping[Element, Scalar], m: int = 1) -> "GroupRingElem":
        terms = []
        for e in sorted(mapping):
            c = coerce_scalar(mapping[e], m)
            if not _is_zero(c):
                terms.append((group.reduce(e), c))
        return GroupRingElem(group, tuple(terms), m)

    @staticmethod
    def zero(group: AbelianGroup, m: int = 1) -> "GroupRingElem":
        return GroupRingElem(group, (), m)

    @staticmethod
    def basis(group: AbelianGroup, e: Element, c: Scalar = 1, m: int = 1) -> "GroupRingElem":
        return GroupRingElem.from_dict(group, {group.reduce(e): c}, m)

    @staticmethod
    def one(group: AbelianGroup, m: int = 1) -> "GroupRingElem":
        return GroupRingElem.basis(group, group.identity(), 1, m)

    @staticmethod
    def norm(group: AbelianGroup, subgroup: Iterable[Element], m: int = 1) -> "GroupRingElem":
        return GroupRingElem.from_dict(group, {e: 1 for e in subgroup}, m)

    def as_dict(self) -> Dict[Element, Scalar]:
        return dict(self.terms)

    def coefficient(self, e: Element) -> Scalar:
        return self.as_dict().get(self.group.reduce(e), coerce_scalar(0, self.m))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "GroupRingElem") -> None:
        if other.group != self.group:
            raise ValidationError(
                f"group mismatch: {list(self.group.invariants)} vs {list(other.group.invariants)}"
            )
        if other.m != self.m:
            raise ValidationError(f"coefficient rings Q(zeta_{self.m}) and Q(zeta_{other.m}) differ")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return GroupRingElem.from_dict(self.group, acc, self.m)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.group, tuple((e, -c) for e, c in self.terms), self.m)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        acc: Dict[Element, Scalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = self.group.add(e1, e2)
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return GroupRingElem.from_dict(self.group, acc, self.m)

    def scale(self, c: Scalar) -> "GroupRingElem":
        c = coerce_scalar(c, self.m)
        return GroupRingElem.from_dict(self.group, {e: a * c for e, a in self.terms}, self.m)

    def translate(self, sigma: Element) -> "GroupRingElem":
        return GroupRingElem.from_dict(self.group, {self.group.add(e, sigma): c for e, c in self.terms}, self.m)

    def augmentation(self) -> Scalar:
        total = coerce_scalar(0, self.m)
        for _, c in self.terms:
            total = total + c
        return total

    def push_forward(self, target: AbelianGroup, mapping: Callable[[Element], Element], m: int = None) -> "GroupRingElem":
        """Image under the group homomorphism ``mapping``, summing coefficients over fibres."""
        m = self.m if m is None else m
        acc: Dict[Element, Scalar] = {}
        for e, c in self.terms:
            image = target.reduce(mapping(e))
            c = coerce_scalar(c, m)
            acc[image] = acc[image] + c if image in acc else c
        return GroupRingElem.from_dict(target, acc, m)

    def with_m(self, m: int) -> "GroupRingElem":
        return GroupRingElem.from_dict(self.group, {e: c for e, c in self.terms}, m)

    def is_p_integral(self, p: int) -> bool:
        for _, c in self.terms:
            if isinstance(c, CycloRational):
                if not c.is_p_integral(p):
                    return False
            elif Fraction(c).denominator % p == 0:
                return False
        return True

    def residue_vector(self, p: int, M: int) -> np.ndarray:
        """Coordinates in (Z/p^M)^(|group| * phi(m)), block per group element."""
        width = phi(self.m)
        modulus = p ** M
        vector = np.zeros(self.group.order * width, dtype=np.int64)
        for e, c in self.terms:
            base = self.group.index(e) * width
            if isinstance(c, CycloRational):
                values = c.residues(p, M)
            else:
                value = Fraction(c)
                if value.denominator % p == 0:
                    raise ValidationError(f"coefficient {value} is not {p}-integral")
                values = [value.numerator * pow(value.denominator, -1, modulus) % modulus]
            vector[base:base + width] = values
        return vector

    def to_json(self) -> List[dict]:
        out = []
        for e, c in self.terms:
            if isinstance(c, CycloRational):
                coeff = c.to_json()
            else:
                value = Fraction(c)
                coeff = {"num": [value.numerator], "den": value.denominator}
            out.append({"element": list(e), "coeff": coeff})
        return out

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            value = c.text() if isinstance(c, CycloRational) else str(c)
            parts.append(f"({value})*{list(e)}")
        return " + ".join(parts)
