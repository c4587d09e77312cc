import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import ff_base
from src.classes.finite_field import FqContext
from src.classes.laurent import LaurentNum
from src.errors import ValidationError
from src.goss_zeta import (
    PAdicExponent,
    PowerSumTable,
    SPoint,
    euler_dirichlet_goss,
    ideal_power,
    interpolation_check,
    one_unit,
    unit_pow,
    zeta_at_negative_int,
    zeta_partial,
)


class TestExponents(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)

    def test_residue_exponent(self):
        y = PAdicExponent.residue(-1, 3, 2)
        self.assertEqual((y.value, y.M, y.mode), (8, 2, "residue"))
        self.assertEqual(y.negated(3).value, 1)
        self.assertEqual(PAdicExponent(4).mode, "integer")
        with self.assertRaises(ValidationError):
            PAdicExponent.residue(1, 3, 0)

    def test_one_unit(self):
        u = one_unit(ff_base.parse_poly(self.ctx, "t+1"), 4)
        self.assertEqual(u, LaurentNum.one(self.ctx, 4) + LaurentNum.pi(self.ctx, 4))
        with self.assertRaises(ValidationError):
            one_unit(ff_base.parse_poly(self.ctx, "2*t+1"), 4)

    def test_residue_power_within_precision(self):
        u = one_unit(ff_base.parse_poly(self.ctx, "t^2+t+2"), 9)
        self.assertEqual(unit_pow(u, PAdicExponent.residue(2, 3, 2)), u ** 2)
        with self.assertRaises(ValidationError):
            unit_pow(one_unit(ff_base.parse_poly(self.ctx, "t+1"), 10), PAdicExponent.residue(2, 3, 2))

    def test_ideal_power_needs_x(self):
        a = ff_base.parse_poly(self.ctx, "t+1")
        with self.assertRaises(ValidationError):
            ideal_power(a, SPoint(None, PAdicExponent(1)), 4)
        s = SPoint.integer(self.ctx, 1, 6)
        self.assertTrue(ideal_power(a, s, 6).agrees_with(LaurentNum.from_poly(a, 6)))


class TestNegativeIntegers(unittest.TestCase):

    def test_trivial_zero(self):
        result = zeta_at_negative_int(FqContext.create(3), 2)
        self.assertTrue(result.value.is_zero())

    def test_j_one_over_f3(self):
        result = zeta_at_negative_int(FqContext.create(3), 1)
        self.assertTrue(result.value.is_one())
        self.assertEqual(result.stopped_at, 2)
        self.assertEqual(result.to_json()["last_nonzero_degree"], 0)

    def test_stop_is_past_j_on_two_zero_strata(self):
        for q in (2, 3):
            ctx = FqContext.create(q)
            for j in range(1, 5):
                result = zeta_at_negative_int(ctx, j)
                self.assertGreater(result.stopped_at, j, (q, j))
                self.assertTrue(result.strata[-1].is_zero())
                self.assertTrue(result.strata[-2].is_zero())

    def test_j_must_be_positive(self):
        with self.assertRaises(ValidationError):
            zeta_at_negative_int(FqContext.create(2), 0)


class TestPartialSums(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)

    def test_tail_bound(self):
        partial = zeta_partial(self.ctx, SPoint.integer(self.ctx, 1, 8), 3, 8)
        self.assertEqual(partial.tail_valuation, 4)
        self.assertEqual(len(partial.strata_valuations), 4)
        self.assertEqual(partial.strata_valuations[0], 0)

    def test_convergence_region(self):
        s = SPoint(LaurentNum.pi(self.ctx, 8), PAdicExponent(1))
        with self.assertRaises(ValidationError):
            zeta_partial(self.ctx, s, 3, 8)
        with self.assertRaises(ValidationError):
            zeta_partial(self.ctx, SPoint(None, PAdicExponent(1)), 3, 8)


class TestInterpolation(unittest.TestCase):

    def setUp(self):
        self.ctx = FqContext.create(3)
        self.prime = ff_base.parse_poly(self.ctx, "t")

    def test_integer_exponent(self):
        report = interpolation_check(self.ctx, self.prime, PAdicExponent(2), 4, 8)
        self.assertTrue(report.ok, report.to_json())
        self.assertEqual(len(report.rows), 5)

    def test_residue_exponent(self):
        report = interpolation_check(self.ctx, ff_base.parse_poly(self.ctx, "t^2+1"), PAdicExponent.residue(5, 3, 2), 4, 9)
        self.assertTrue(report.ok)

    def test_euler_product_matches_restricted_sums(self):
        self.assertTrue(euler_dirichlet_goss(self.ctx, self.prime, PAdicExponent(-1), 4, 8)["ok"])

    def test_power_sums_at_zero_count_monics_mod_p(self):
        table = PowerSumTable.build(self.ctx, self.prime, PAdicExponent(0), 2, 6)
        self.assertEqual(table.D, 2)
        self.assertEqual(table.full[0], LaurentNum.one(self.ctx, 6))
        self.assertTrue(table.full[1].is_zero())
        self.assertEqual(table.restricted[1], LaurentNum.constant(self.ctx, 2, 6))
        self.assertTrue(table.restricted[2].is_zero())

    def test_shared_table(self):
        y = PAdicExponent(1)
        table = PowerSumTable.build(self.ctx, self.prime, y, 3, 6)
        self.assertTrue(interpolation_check(self.ctx, self.prime, y, 3, 6, table=table).ok)
        self.assertTrue(euler_dirichlet_goss(self.ctx, self.prime, y, 3, 6, table=table)["ok"])

    def test_reducible_prime(self):
        with self.assertRaises(ValidationError):
            interpolation_check(self.ctx, ff_base.parse_poly(self.ctx, "t^2+2*t+1"), PAdicExponent(1), 3, 6)


if __name__ == "__main__":
    unittest.main()
