import copy
import json
import os
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import ff_base
from src.arith_provider import carlitz_provider
from src.classes.finite_field import FqContext
from src.cover_file import cover_from_dict, cover_hash, cover_to_dict, load_cover, save_cover
from src.errors import ValidationError

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class TestLoadCover(unittest.TestCase):

    def setUp(self):
        self.double = load_cover(os.path.join(DATA_DIR, "type3_double_zero.json"))
        self.single = load_cover(os.path.join(DATA_DIR, "type3_single_zero.json"))
        with open(os.path.join(DATA_DIR, "type3_double_zero.json"), "r", encoding="utf-8") as f:
            self.raw = json.load(f)

    def test_fields(self):
        self.assertEqual(self.double.q, 3)
        self.assertEqual(self.double.H.invariants, (2, 4))
        self.assertEqual(self.double.totally_ramified.label, "v1")
        self.assertEqual(self.double.infinity.label, "inf")
        self.assertEqual(self.double.stabilization_degree, 3)
        self.assertIsNone(self.double.carlitz)
        self.assertEqual(len(self.single.places), 3)

    def test_save_and_reload(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "cover.json")
            save_cover(self.double, path)
            self.assertEqual(load_cover(path), self.double)

    def test_hash_tracks_content(self):
        self.assertEqual(cover_hash(self.double), cover_hash(cover_from_dict(self.raw)))
        self.assertNotEqual(cover_hash(self.double), cover_hash(self.single))

    def test_carlitz_cover_survives_serialisation(self):
        ctx = FqContext.create(3)
        cd = carlitz_provider(ctx, ff_base.parse_poly(ctx, "t"), 2, 4)
        self.assertEqual(cover_from_dict(cover_to_dict(cd)), cd)

    def test_missing_file(self):
        with self.assertRaises(ValidationError):
            load_cover(os.path.join(DATA_DIR, "absent.json"))

    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "broken.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write("{not json")
            with self.assertRaises(ValidationError):
                load_cover(path)


class TestCoverValidation(unittest.TestCase):

    def setUp(self):
        with open(os.path.join(DATA_DIR, "type3_double_zero.json"), "r", encoding="utf-8") as f:
            self.raw = json.load(f)

    def assertRejected(self, data, fragment):
        with self.assertRaises(ValidationError) as caught:
            cover_from_dict(data)
        self.assertIn(fragment, str(caught.exception))

    def test_missing_field(self):
        data = copy.deepcopy(self.raw)
        del data["degree_bound"]
        self.assertRejected(data, "degree_bound")

    def test_p_divides_h(self):
        data = copy.deepcopy(self.raw)
        data["H"] = {"invariants": [3]}
        self.assertRejected(data, "divides |H|")

    def test_g_not_a_p_group(self):
        data = copy.deepcopy(self.raw)
        data["G"] = {"invariants": [2]}
        self.assertRejected(data, "not a power of p")

    def test_frobenius_outside_group(self):
        data = copy.deepcopy(self.raw)
        data["places"][0]["frob_H"] = [0, 7]
        self.assertRejected(data, "places[0]")

    def test_exactly_one_totally_ramified_place(self):
        data = copy.deepcopy(self.raw)
        data["S"][1]["totally_ramified"] = True
        self.assertRejected(data, "totally_ramified")

    def test_place_degree_beyond_bound(self):
        data = copy.deepcopy(self.raw)
        data["places"][0]["degree"] = 16
        self.assertRejected(data, "outside 1..15")

    def test_duplicate_labels(self):
        data = copy.deepcopy(self.raw)
        data["S"][1]["label"] = "v1"
        self.assertRejected(data, "duplicate label")


if __name__ == "__main__":
    unittest.main()
