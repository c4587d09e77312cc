import os
import sys
import unittest
from fractions import Fraction

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import howell
from src.arith_provider import character_group
from src.classes.abelian_group import AbelianGroup
from src.classes.cyclo import CycloRational
from src.classes.group_ring_elem import GroupRingElem
from src.errors import GuardrailError, ValidationError
from src.group_ring import (
    IdealHandle,
    corestriction,
    ideal_contains,
    ideal_equal,
    ideal_equal_per_factor,
    ideal_subset,
    idempotent,
    local_idempotents,
    quotient_length,
)


class TestHowell(unittest.TestCase):

    def test_valuation(self):
        self.assertEqual(howell.valuation(9, 3, 3), 2)
        self.assertEqual(howell.valuation(0, 3, 3), 3)
        self.assertEqual(howell.valuation(5, 3, 3), 0)

    def test_echelon_pivots(self):
        basis, pivots = howell.howell_form([[3, 0], [0, 1]], 3, 2)
        self.assertEqual(pivots, [(0, 1), (1, 0)])
        self.assertEqual(howell.quotient_length(pivots, 2, 2), 1)
        self.assertTrue(howell.in_span([6, 4], basis, pivots, 3, 2))
        self.assertFalse(howell.in_span([1, 0], basis, pivots, 3, 2))

    def test_annihilator_rows_are_added(self):
        # 3 * (3, 1) = (0, 3) lies in the span without an explicit row.
        basis, pivots = howell.howell_form([[3, 1]], 3, 2)
        self.assertEqual(pivots, [(0, 1), (1, 1)])
        self.assertTrue(howell.in_span([0, 3], basis, pivots, 3, 2))
        self.assertFalse(howell.in_span([0, 1], basis, pivots, 3, 2))
        self.assertEqual(howell.quotient_length(pivots, 2, 2), 2)

    def test_empty_span(self):
        basis, pivots = howell.howell_form([], 3, 2, width=3)
        self.assertEqual(basis.shape, (0, 3))
        self.assertEqual(howell.quotient_length(pivots, 3, 2), 6)
        with self.assertRaises(ValidationError):
            howell.howell_form([], 3, 2)

    def test_modulus_bounds(self):
        with self.assertRaises(GuardrailError):
            howell.howell_form([[1]], 2, 40)
        with self.assertRaises(ValidationError):
            howell.howell_form([[1]], 3, 0)


class TestIdeals(unittest.TestCase):

    def setUp(self):
        self.group = AbelianGroup((3,))
        self.one = GroupRingElem.one(self.group)
        self.s = GroupRingElem.basis(self.group, (1,))
        self.s2 = GroupRingElem.basis(self.group, (2,))

    def ideal(self, *generators, M=2):
        return IdealHandle.make(self.group, 1, 3, M, generators)

    def test_same_ideal_from_different_generators(self):
        self.assertTrue(ideal_equal(self.ideal(self.one - self.s), self.ideal(self.one - self.s2)))
        self.assertFalse(ideal_equal(self.ideal(self.one - self.s), self.ideal(self.one.scale(3))))

    def test_membership_and_containment(self):
        three = self.ideal(self.one.scale(3))
        self.assertTrue(ideal_contains(three, self.one.scale(6) + self.s.scale(3)))
        self.assertFalse(ideal_contains(three, self.one))
        augmentation = self.ideal(self.one - self.s, self.one.scale(3))
        self.assertTrue(ideal_subset(three, augmentation))
        self.assertFalse(ideal_subset(augmentation, three))

    def test_quotient_lengths(self):
        # R / (1 - s) is Z/9 through the augmentation.
        self.assertEqual(quotient_length(self.ideal(self.one - self.s)), 2)
        self.assertEqual(quotient_length(self.ideal(self.one.scale(3))), 3)
        self.assertEqual(quotient_length(self.ideal(self.one)), 0)
        self.assertEqual(quotient_length(self.ideal()), 6)

    def test_non_integral_generator_rejected(self):
        with self.assertRaises(ValidationError):
            self.ideal(self.one.scale(Fraction(1, 3)))

    def test_different_truncations_do_not_compare(self):
        with self.assertRaises(ValidationError):
            ideal_equal(self.ideal(self.one, M=2), self.ideal(self.one, M=3))

    def test_per_factor_mode_agrees(self):
        a = self.ideal(self.one - self.s)
        b = self.ideal(self.one - self.s2)
        self.assertEqual(ideal_equal_per_factor(a, b), [True])


class TestIdempotents(unittest.TestCase):

    def test_split_prime(self):
        # Phi_4 splits mod 5, so Z/25[i] has two primitive idempotents.
        idempotents = local_idempotents(4, 5, 2)
        self.assertEqual(len(idempotents), 2)
        total = idempotents[0] + idempotents[1]
        self.assertEqual([c % 25 for c in total.residues(5, 2)], [1, 0])
        for e in idempotents:
            self.assertEqual((e * e).residues(5, 2), e.residues(5, 2))

    def test_inert_prime(self):
        self.assertEqual(len(local_idempotents(4, 3, 2)), 1)

    def test_p_dividing_m(self):
        with self.assertRaises(ValidationError):
            local_idempotents(6, 3, 2)

    def test_character_idempotents_sum_to_one(self):
        H = AbelianGroup((4,))
        total = GroupRingElem.zero(H, 4)
        for chi in character_group(H):
            e = idempotent(H, chi)
            self.assertEqual(e * e, e)
            total = total + e
        self.assertEqual(total, GroupRingElem.one(H, 4))


class TestCorestriction(unittest.TestCase):

    def test_sum_over_fibres(self):
        G = AbelianGroup((3,))
        trivial = AbelianGroup((1,))
        x = GroupRingElem.one(trivial).scale(2)
        lifted = corestriction(x, G, lambda e: (0,))
        self.assertEqual(lifted, GroupRingElem.norm(G, G.elements()).scale(2))


if __name__ == "__main__":
    unittest.main()
