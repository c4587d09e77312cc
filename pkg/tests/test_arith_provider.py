import os
import sys
import unittest
from itertools import product

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import ff_base
from src.arith_provider import (
    RayClassGroup,
    carlitz_provider,
    character_group,
    character_value,
    classify_character,
    cover_quotient,
    level_map,
    ray_class_group,
    split_orders,
)
from src.classes.abelian_group import AbelianGroup
from src.classes.finite_field import FqContext, FqPoly
from src.errors import GuardrailError, ValidationError


class TestRayClassGroup(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)
        self.prime = ff_base.parse_poly(self.ctx, "t")
        self.rcg = RayClassGroup(self.prime, 2)

    def test_orders(self):
        self.assertEqual(split_orders(self.prime, 2), (2, 3))
        self.assertEqual(self.rcg.H.order, 2)
        self.assertEqual(self.rcg.G.order, 3)
        self.assertEqual(self.rcg.G_tilde.order, 6)

    def test_classification_is_a_bijection_on_units(self):
        units = [FqPoly.from_coeffs(self.ctx, (a, b)) for a, b in product((1, 2), range(3))]
        classes = {self.rcg.classify(f) for f in units}
        self.assertEqual(len(classes), 6)
        self.assertIsNone(self.rcg.classify(self.prime))

    def test_classification_is_multiplicative(self):
        a = ff_base.parse_poly(self.ctx, "t+1")
        b = ff_base.parse_poly(self.ctx, "t^2+2*t+2")
        group = self.rcg.G_tilde
        self.assertEqual(self.rcg.classify(a * b), group.add(self.rcg.classify(a), self.rcg.classify(b)))

    def test_constants_lie_in_h(self):
        element = self.rcg.classify(ff_base.parse_poly(self.ctx, "2"))
        self.assertEqual(element, (1, 0))

    def test_level_map_reduces_residues(self):
        high = ray_class_group(3, (0, 1), 2)
        low = ray_class_group(3, (0, 1), 1)
        mapping = level_map(high, low)
        for f in ff_base.enumerate_monics(self.ctx, 2):
            if high.classify(f) is not None:
                self.assertEqual(mapping[high.classify(f)], low.classify(f))

    def test_group_order_guardrail(self):
        with self.assertRaises(GuardrailError):
            RayClassGroup(self.prime, 10)

    def test_level_must_be_positive(self):
        with self.assertRaises(ValidationError):
            RayClassGroup(self.prime, 0)


class TestCarlitzProvider(unittest.TestCase):

    def test_cover_data(self):
        ctx = FqContext.create(3)
        prime = ff_base.parse_poly(ctx, "t")
        cd = carlitz_provider(ctx, prime, 2, 6)
        self.assertEqual(cd.stabilization_degree, 2)
        self.assertEqual(cd.totally_ramified.label, prime.text())
        self.assertIsNotNone(cd.infinity)
        self.assertEqual(cd.q, 3)
        irreducibles = ff_base.irreducibles_through(ctx, 6)
        self.assertEqual(len(cd.places), len(irreducibles) - 1)
        rcg = ray_class_group(3, prime.coeffs, 2)
        for w, f in zip(cd.places, [g for g in irreducibles if g != prime]):
            self.assertEqual(cd.frob(w), rcg.classify(f))

    def test_reducible_prime_rejected(self):
        ctx = FqContext.create(3)
        with self.assertRaises(ValidationError):
            carlitz_provider(ctx, ff_base.parse_poly(ctx, "t^2+2*t+1"), 1, 6)

    def test_character_types(self):
        ctx = FqContext.create(3)
        cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 1, 6)
        types = {c: classify_character(cd, c).type for c in character_group(cd.H)}
        self.assertEqual(types, {(0,): 3, (1,): 1})
        self.assertTrue(classify_character(cd, (0,)).trivial)

        ctx2 = FqContext.create(2)
        cd2 = carlitz_provider(ctx2, ff_base.parse_poly(ctx2, "t^2+t+1"), 1, 6)
        self.assertEqual([classify_character(cd2, c).type for c in character_group(cd2.H)], [3, 2, 2])

    def test_character_values(self):
        H = AbelianGroup((2, 4))
        self.assertEqual(len(character_group(H)), 8)
        self.assertEqual(character_value(H, (0, 2), (0, 1)), 2)
        self.assertEqual(character_value(H, (1, 0), (1, 0)), 2)

    def test_quotient_by_infinity_inertia(self):
        ctx = FqContext.create(3)
        cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 2, 6)
        quotient_cover = cover_quotient(cd, ["inf"])
        self.assertEqual(quotient_cover.H.order, 1)
        self.assertEqual(quotient_cover.G.order, 3)
        self.assertEqual(len(quotient_cover.places), len(cd.places) + 1)
        with self.assertRaises(ValidationError):
            cover_quotient(cd, [cd.totally_ramified.label])


if __name__ == "__main__":
    unittest.main()
