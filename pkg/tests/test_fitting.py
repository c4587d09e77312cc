import os
import sys
import unittest
from dataclasses import replace

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import ff_base
from src.arith_provider import carlitz_provider, classify_character
from src.classes.abelian_group import AbelianGroup
from src.classes.finite_field import FqContext
from src.classes.group_ring_elem import GroupRingElem
from src.cover_file import load_cover
from src.errors import GuardrailError, TheoremViolation, ValidationError
from src.fitting import (
    FittingGenerators,
    PresentedModule,
    chi_gamma,
    class_dual_all,
    class_dual_case,
    expected_local_fitting,
    fitting_class_dual,
    fitting_tate_dual_totram,
    generic_fitting,
    inertia_index,
    local_module_presentation,
    pro_fitting_report,
    totram_gamma_one_image,
)
from src.group_ring import IdealHandle, ideal_equal, quotient_length
from src.stickelberger import integral_gamma, theta_euler

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class TestClassDual(unittest.TestCase):

    def setUp(self):
        self.double = load_cover(os.path.join(DATA_DIR, "type3_double_zero.json"))
        self.single = load_cover(os.path.join(DATA_DIR, "type3_single_zero.json"))

    def fitting_for(self, cd):
        character = classify_character(cd, (0, 2))
        return fitting_class_dual(cd, character, chi_gamma(cd, character, cd.degree_bound))

    def test_cases_of_synthetic_covers(self):
        self.assertEqual(class_dual_case(self.double, classify_character(self.double, (0, 2))), ("type 3 double zero", 2))
        self.assertEqual(class_dual_case(self.single, classify_character(self.single, (0, 2))), ("type 3 frob != 1", 1))

    def test_double_zero_generator(self):
        fg = self.fitting_for(self.double)
        self.assertEqual(fg.case, "class-dual type 3 double zero")
        self.assertEqual(fg.trivial_zero_order, 2)
        self.assertEqual(len(fg.generators), 1)
        self.assertFalse(fg.fractional)

    def test_frobenius_row_has_two_generators(self):
        fg = self.fitting_for(self.single)
        self.assertEqual(fg.case, "class-dual type 3 frob != 1")
        self.assertEqual(len(fg.generators), 2)
        self.assertTrue(fg.p_integral(3))
        self.assertTrue(any(entry["operation"].startswith("n(G)/") for entry in fg.fractional_audit))

    def test_missing_zero_is_a_violation(self):
        v1, inf = self.single.S
        cd = replace(self.single, S=(replace(v1, frob_H=(0, 0)), inf))
        with self.assertRaises(TheoremViolation) as caught:
            self.fitting_for(cd)
        self.assertIn("double zero", caught.exception.case)

    def test_carlitz_rows(self):
        ctx = FqContext.create(3)
        cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 2, 6)
        per_chi = class_dual_all(cd, 6)
        self.assertEqual(per_chi[(1,)].case, "class-dual type 1")
        self.assertEqual(per_chi[(0,)].case, "class-dual chi0")

        ctx2 = FqContext.create(2)
        cd2 = carlitz_provider(ctx2, ff_base.parse_poly(ctx2, "t^2+t+1"), 1, 6)
        self.assertEqual(class_dual_all(cd2, 6)[(1,)].case, "class-dual type 2")


class TestTotallyRamifiedForm(unittest.TestCase):

    def setUp(self):
        ctx = FqContext.create(3)
        self.cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 2, 6)

    def test_one_generator_per_factor_choice(self):
        fg = fitting_tate_dual_totram(self.cd, integral_gamma(theta_euler(self.cd, 6), self.cd))
        self.assertEqual(sorted(fg.labels), ["1", "1*t", "inf", "inf;1*t"])
        self.assertTrue(fg.over_gamma)
        with self.assertRaises(ValidationError):
            fg.ideal(3, 2)

    def test_gamma_one_image_drops_v1_choices(self):
        group = self.cd.G_tilde
        one = GroupRingElem.one(group)
        fg = FittingGenerators("tate-dual totally ramified", group, 1, (one,) * 4, ("1", "inf", "1*t", "inf;1*t"))
        self.assertEqual(totram_gamma_one_image(fg, self.cd).labels, ("1", "inf"))
        self.assertEqual(len(totram_gamma_one_image(fg, self.cd, include_v1=True).generators), 4)

    def test_inertia_index(self):
        v1, inf = self.cd.totally_ramified, self.cd.infinity
        self.assertEqual(inertia_index(self.cd, []), 1)
        self.assertEqual(inertia_index(self.cd, [inf]), 1)
        self.assertEqual(inertia_index(self.cd, [v1, inf]), 2)


class TestGenericFitting(unittest.TestCase):

    def setUp(self):
        self.group = AbelianGroup((3,))
        self.one = GroupRingElem.one(self.group)
        self.s = GroupRingElem.basis(self.group, (1,))

    def module(self, generators, relations):
        return PresentedModule(self.group, 1, 3, 2, generators, tuple(tuple(r) for r in relations))

    def test_cyclic_module(self):
        ideal = generic_fitting(self.module(1, [[self.one - self.s]]))
        self.assertTrue(ideal_equal(ideal, IdealHandle.make(self.group, 1, 3, 2, [self.one - self.s])))

    def test_zero_module_has_unit_ideal(self):
        self.assertEqual(quotient_length(generic_fitting(self.module(0, []))), 0)

    def test_diagonal_relations_multiply(self):
        ideal = generic_fitting(self.module(2, [[self.one.scale(3), self.one.scale(0)], [self.one.scale(0), self.one - self.s]]))
        expected = IdealHandle.make(self.group, 1, 3, 2, [(self.one - self.s).scale(3)])
        self.assertTrue(ideal_equal(ideal, expected))

    def test_bounds(self):
        with self.assertRaises(GuardrailError):
            generic_fitting(self.module(7, []))
        with self.assertRaises(ValidationError):
            generic_fitting(self.module(2, [[self.one]]))


class TestLocalModules(unittest.TestCase):

    def setUp(self):
        ctx = FqContext.create(3)
        self.cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 2, 2)

    def assertMatches(self, v):
        module = local_module_presentation(self.cd, v, 3, 2)
        self.assertEqual(module.generators, v.degree)
        self.assertTrue(ideal_equal(generic_fitting(module), expected_local_fitting(self.cd, v, 3, 2)), v.label)

    def test_unramified_places(self):
        for w in self.cd.places[:4]:
            self.assertMatches(w)

    def test_totally_ramified_place(self):
        self.assertMatches(self.cd.totally_ramified)


class TestProFitting(unittest.TestCase):

    def test_type_one_character_is_stable(self):
        ctx = FqContext.create(3)
        report = pro_fitting_report(ctx, ff_base.parse_poly(ctx, "t"), 2, (1,), 6, 3)
        self.assertEqual(report["type"], 1)
        self.assertEqual(len(report["projections"]), 1)
        self.assertTrue(report["projections"][0]["norm_projection_ok"])
        self.assertTrue(report["ok"], report)


if __name__ == "__main__":
    unittest.main()
