import multiprocessing
import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.checks.chi_stabilization import chi_stabilization
from src.checks.euler_equals_dirichlet import euler_equals_dirichlet
from src.checks.generic_fitting_oracle import generic_fitting_oracle
from src.checks.trivial_zero_orders import trivial_zero_orders
from src.checks.zeta_special_values import zeta_special_values

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class TestQuickChecks(unittest.TestCase):

    def setUp(self):
        self.log_queue = multiprocessing.Queue()

    def test_euler_equals_dirichlet(self):
        result, seconds = euler_equals_dirichlet(True, 0, self.log_queue)
        self.assertTrue(result["ok"], result)
        self.assertEqual(len(result["cases"]), 3)
        self.assertGreaterEqual(seconds, 0)

    def test_chi_stabilization(self):
        result, _ = chi_stabilization(True, 0, self.log_queue)
        self.assertTrue(result["ok"], result)

    def test_trivial_zero_orders_include_synthetic_covers(self):
        result, _ = trivial_zero_orders(True, DATA_DIR, 0, self.log_queue)
        self.assertTrue(result["ok"], result)
        by_cover = {c["cover"]: c for c in result["cases"]}
        self.assertEqual(by_cover["type3_double_zero.json"]["trivial_zero_order"], 2)
        self.assertEqual(by_cover["type3_single_zero.json"]["case"], "type 3 frob != 1")

    def test_missing_data_dir_is_a_failed_result(self):
        result, _ = trivial_zero_orders(True, os.path.join(DATA_DIR, "absent"), 1, self.log_queue)
        self.assertFalse(result["ok"])
        self.assertIn("ValidationError", result["error"])
        self.assertIn("CRITICAL ERROR", self.log_queue.get(timeout=5))

    def test_generic_fitting_oracle(self):
        result, _ = generic_fitting_oracle(True, 1, self.log_queue)
        self.assertTrue(result["ok"], result)
        self.assertEqual(len(result["cases"]), 5)
        self.assertIn("[INFO] generic_fitting_oracle ok=True", self.log_queue.get(timeout=5))

    def test_zeta_special_values(self):
        result, _ = zeta_special_values(True, 0, self.log_queue)
        self.assertTrue(result["ok"], result)
        vanishing = [c for c in result["cases"] if c["must_vanish"]]
        self.assertEqual([c["j"] for c in vanishing], [2, 4])
        self.assertTrue(all(c["value"] == "0" for c in vanishing))


if __name__ == "__main__":
    unittest.main()
