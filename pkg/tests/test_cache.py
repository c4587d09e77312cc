import json
import os
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.cache import ResultCache, canonical_json, stable_hash


class TestHashing(unittest.TestCase):

    def test_key_order_does_not_matter(self):
        self.assertEqual(stable_hash({"a": 1, "b": [2, 3]}), stable_hash({"b": [2, 3], "a": 1}))
        self.assertEqual(canonical_json({"b": 1, "a": 2}), '{"a":2,"b":1}')

    def test_distinct_values(self):
        self.assertNotEqual(stable_hash(["irreducibles", 3, 2]), stable_hash(["irreducibles", 3, 3]))


class TestResultCache(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.cache = ResultCache(os.path.join(self.tmpdir.name, "nested"))
        self.calls = 0

    def tearDown(self):
        self.tmpdir.cleanup()

    def compute(self):
        self.calls += 1
        return [[1, 1], [0, 1]]

    def test_miss_then_hit(self):
        first = self.cache.get_or_compute(["key", 1], self.compute)
        second = self.cache.get_or_compute(["key", 1], self.compute)
        self.assertEqual(first, second)
        self.assertEqual(self.calls, 1)
        self.assertEqual(self.cache.stats()["hits"], 1)
        self.assertEqual(self.cache.stats()["misses"], 1)

    def test_put_and_get(self):
        self.assertIsNone(self.cache.get("absent"))
        self.cache.put("present", {"x": 1})
        self.assertEqual(self.cache.get("present"), {"x": 1})

    def test_tampered_payload_is_regenerated(self):
        self.cache.get_or_compute("key", self.compute)
        path = self.cache.path_for("key")
        with open(path, "r", encoding="utf-8") as f:
            entry = json.load(f)
        entry["payload"] = [[9]]
        with open(path, "w", encoding="utf-8") as f:
            json.dump(entry, f)

        self.assertEqual(self.cache.get_or_compute("key", self.compute), [[1, 1], [0, 1]])
        self.assertEqual(self.calls, 2)
        self.assertEqual(self.cache.regenerated, 1)
        self.assertEqual(len(self.cache.warnings), 1)
        self.assertEqual(self.cache.get("key"), [[1, 1], [0, 1]])

    def test_unreadable_entry_is_regenerated(self):
        with open(self.cache.path_for("key"), "w", encoding="utf-8") as f:
            f.write("{truncated")
        self.cache.get_or_compute("key", self.compute)
        self.assertEqual(self.cache.regenerated, 1)
        self.assertEqual(self.cache.misses, 0)


if __name__ == "__main__":
    unittest.main()
