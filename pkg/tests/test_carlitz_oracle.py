import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import ff_base
from src.arith_provider import ray_class_group
from src.carlitz_oracle import (
    AdditivePoly,
    carlitz_additive,
    carlitz_torsion_poly,
    conductor_genus,
    extension_degree,
    frobenius_order_oracle,
    numerator_from_counts,
    place_census,
    reciprocity_table,
    splitting_report,
    weil_bounds_ok,
    zeta_from_census,
)
from src.classes.finite_field import FqContext
from src.errors import GuardrailError, ValidationError


class TestCarlitzModule(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)
        self.t = ff_base.parse_poly(self.ctx, "t")

    def poly(self, text):
        return ff_base.parse_poly(self.ctx, text)

    def test_phi_of_t_squared(self):
        expected = AdditivePoly(self.ctx, (self.poly("t^2"), self.poly("t^3+t"), self.poly("1")))
        self.assertEqual(carlitz_additive(self.poly("t^2")), expected)

    def test_torsion_polynomial(self):
        self.assertEqual(carlitz_torsion_poly(self.t, 1), [self.t, self.poly("0"), self.poly("1")])
        self.assertEqual(len(carlitz_torsion_poly(self.t, 2)), 7)

    def test_torsion_guardrail(self):
        with self.assertRaises(GuardrailError):
            carlitz_torsion_poly(self.t, 7)
        with self.assertRaises(ValidationError):
            carlitz_torsion_poly(self.poly("t^2+2*t+1"), 1)

    def test_residual_degrees(self):
        self.assertEqual(frobenius_order_oracle(self.poly("t+1"), self.t, 1), 1)
        self.assertEqual(frobenius_order_oracle(self.poly("t+2"), self.t, 1), 2)
        with self.assertRaises(ValidationError):
            frobenius_order_oracle(self.t, self.t, 1)

    def test_splitting(self):
        self.assertEqual(extension_degree(self.t, 2), 6)
        inf = splitting_report("inf", self.t, 2)
        self.assertEqual((inf.e, inf.f, inf.g), (2, 1, 3))
        ramified = splitting_report(self.t, self.t, 2)
        self.assertEqual((ramified.e, ramified.f, ramified.g), (6, 1, 1))
        inert = splitting_report(self.poly("t+2"), self.t, 1)
        self.assertEqual((inert.e, inert.f, inert.g, inert.method), (1, 2, 1, "factorization"))

    def test_oracle_agrees_with_ray_classes(self):
        rcg = ray_class_group(3, self.t.coeffs, 2)
        rows = reciprocity_table(self.t, 2, 2, lambda f: rcg.G_tilde.element_order(rcg.classify(f)))
        self.assertTrue(rows)
        self.assertTrue(all(r["ok"] for r in rows), rows)


class TestCensus(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)
        self.t = ff_base.parse_poly(self.ctx, "t")

    def test_rational_places_of_first_level(self):
        census = place_census(self.t, 1, 2)
        self.assertEqual(census.N[0], 4)
        self.assertEqual(list(census.to_frame()["m"]), [1, 2])
        self.assertEqual(census.residual["2+1*t"], 2)

    def test_census_guardrail(self):
        with self.assertRaises(GuardrailError):
            place_census(self.t, 1, 13)

    def test_genus_zero_field(self):
        self.assertEqual(conductor_genus(self.t, 1), 0)
        report = zeta_from_census(self.t, 1)
        self.assertEqual(report.P, (1,))
        self.assertEqual(report.h, 1)
        self.assertEqual(report.v_p_h, 0)
        self.assertTrue(report.weil_ok)

    def test_numerator_needs_enough_counts(self):
        with self.assertRaises(ValidationError):
            numerator_from_counts([4], 3, 2)

    def test_weil_bounds(self):
        self.assertTrue(weil_bounds_ok([1, 2, 3], 3, 1))
        self.assertFalse(weil_bounds_ok([1, 5, 3], 3, 1))


if __name__ == "__main__":
    unittest.main()
