from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple

import sympy

from src.errors import GuardrailError, TheoremViolation, ValidationError


Element = Tuple[int, ...]

MAX_GROUP_ORDER: int = 10 ** 4


@dataclass(frozen=True)
class AbelianGroup:
    """
    A finite abelian group Z/d_1 x ... x Z/d_k with elements as exponent vectors.

    Attributes
    -----------
        invariants (tuple[int, ...]): orders of the cyclic factors.
        labels (tuple[str, ...]): optional names of the generators.

    Methods
    -------
    add(a, b), neg(a), mul(a, k)
        the group law on reduced exponent vectors
    elements()
        every element, in mixed-radix order
    element_order(a)
        order of a
    span(generators)
        the subgroup generated by a list of elements
    """

    invariants: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if any(d < 1 for d in self.invariants):
            raise ValidationError(f"group invariants must be positive, got {list(self.invariants)}")
        if prod(self.invariants) > MAX_GROUP_ORDER:
            raise GuardrailError(f"group of order {prod(self.invariants)} exceeds {MAX_GROUP_ORDER}")

    @staticmethod
    def trivial() -> "AbelianGroup":
        return AbelianGroup(())

    @staticmethod
    def product_of(first: "AbelianGroup", second: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(first.invariants + second.invariants, first.labels + second.labels)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def exponent(self) -> int:
        return lcm(*self.invariants) if self.invariants else 1

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """The chain d_1 | d_2 | ... | d_k of the same group, trivial factors dropped."""
        powers: Dict[int, List[int]] = {}
        for d in self.invariants:
            for p, e in sympy.factorint(d).items():
                powers.setdefault(p, []).append(p ** e)
        width = max((len(v) for v in powers.values()), default=0)
        factors = [1] * width
        for stack in powers.values():
            for i, power in enumerate(sorted(stack, reverse=True)):
                factors[i] *= power
        return tuple(reversed(factors))

    def identity(self) -> Element:
        return (0,) * self.rank

    def reduce(self, vector: Sequence[int]) -> Element:
        if len(vector) != self.rank:
            raise ValidationError(f"element {list(vector)} does not match group invariants {list(self.invariants)}")
        return tuple(int(v) % d for v, d in zip(vector, self.invariants))

    def contains(self, vector: Sequence[int]) -> bool:
        return len(vector) == self.rank and all(0 <= v < d for v, d in zip(vector, self.invariants))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.invariants))

    def mul(self, a: Element, k: int) -> Element:
        return tuple((x * k) % d for x, d in zip(a, self.invariants))

    def elements(self) -> Iterator[Element]:
        return product(*(range(d) for d in self.invariants))

    def element_order(self, a: Element) -> int:
        return lcm(*(d // gcd(x, d) for x, d in zip(a, self.invariants))) if self.rank else 1

    def span(self, generators: Iterable[Element]) -> frozenset:
        found = {self.identity()}
        frontier = [self.identity()]
        gens = [self.reduce(g) for g in generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    def index(self, a: Element) -> int:
        value = 0
        for x, d in zip(a, self.invariants):
            value = value * d + x
        return value


def decompose(
    elements: Sequence[Hashable],
    op: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
) -> Tuple[AbelianGroup, Dict[Hashable, Element], List[Hashable]]:
    """
    Cyclic decomposition of a finite abelian group given by its element list.

    Each Sylow subgroup is split greedily: pick a coset of maximal order m in
    the quotient by the part built so far and a representative whose m-th power
    is trivial, which spans a cyclic direct summand.

    Returns:
        (group, dlog, basis): the group with prime-power invariants, a table
        from elements to exponent vectors, and the chosen generators.
    """
    n = len(elements)
    if n > MAX_GROUP_ORDER:
        raise GuardrailError(f"group of order {n} exceeds {MAX_GROUP_ORDER}")

    def power(x, k):
        result, base = identity, x
        while k:
            if k & 1:
                result = op(result, base)
            base = op(base, base)
            k >>= 1
        return result

    def quotient_order(x, span):
        m, y = 1, x
        while y not in span:
            y = op(y, x)
            m += 1
        return m, y

    invariants: List[int] = []
    basis: List[Hashable] = []
    sylow_tables: List[Tuple[int, Dict[Hashable, Tuple[int, ...]]]] = []
    for ell, a in sorted(sympy.factorint(n).items()):
        ell_order = ell ** a
        cofactor = n // ell_order
        part = sorted({power(x, cofactor) for x in elements}, key=repr)
        span: Dict[Hashable, Tuple[int, ...]] = {identity: ()}
        while len(span) < len(part):
            m = max(quotient_order(x, span)[0] for x in part if x not in span)
            mth_powers = {power(s, m): s for s in span}
            chosen = None
            for candidate in part:
                if candidate in span:
                    continue
                order_m, target = quotient_order(candidate, span)
                if order_m == m and target in mth_powers:
                    chosen = op(candidate, power(mth_powers[target], ell_order - 1))
                    break
            if chosen is None:
                raise TheoremViolation("no cyclic complement found while decomposing a group", "group structure")
            grown: Dict[Hashable, Tuple[int, ...]] = {}
            step = identity
            for k in range(m):
                for s, coords in span.items():
                    grown[op(s, step)] = coords + (k,)
                step = op(step, chosen)
            span = grown
            invariants.append(m)
            basis.append(chosen)
        sylow_tables.append((ell_order, span))

    group = AbelianGroup(tuple(invariants))
    dlog: Dict[Hashable, Element] = {}
    for x in elements:
        vector: List[int] = []
        for ell_order, table in sylow_tables:
            cofactor = n // ell_order
            idempotent = (cofactor * pow(cofactor, -1, ell_order)) % n
            vector.extend(table[power(x, idempotent)])
        dlog[x] = group.reduce(vector)
    return group, dlog, basis


def quotient(group: AbelianGroup, subgroup: Iterable[Element]) -> Tuple[AbelianGroup, Dict[Element, Element]]:
    """
    The quotient of ``group`` by a subgroup given as a set of elements.

    Returns the quotient group and the projection from elements of ``group`` to
    exponent vectors of the quotient.
    """
    sub = frozenset(subgroup)
    if group.identity() not in sub:
        raise ValidationError("subgroup must contain the identity")
    representative: Dict[Element, Element] = {}
    for x in group.elements():
        if x in representative:
            continue
        coset = [group.add(x, h) for h in sub]
        rep = min(coset)
        for y in coset:
            representative[y] = rep
    reps = sorted(set(representative.values()))
    if len(reps) * len(sub) != group.order:
        raise ValidationError("element set is not a subgroup")
    q_group, dlog, _ = decompose(reps, lambda a, b: representative[group.add(a, b)], representative[group.identity()])
    return q_group, {x: dlog[rep] for x, rep in representative.items()}


def subgroups(group: AbelianGroup) -> List[frozenset]:
    """Every subgroup of a small group, found as spans of element pairs closed under join."""
    found = {frozenset({group.identity()})}
    elements = list(group.elements())
    cyclic = {group.span([x]) for x in elements}
    found |= cyclic
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                if c <= s:
                    continue
                joined = group.span(list(s) + list(c))
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))
