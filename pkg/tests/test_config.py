import json
import os
import sys
import tempfile
import unittest
from unittest.mock import patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config import DEFAULT_CACHE_DIR, JobConfig, resolve_cache_dir
from src.errors import GuardrailError, TheoremViolation, ValidationError, exit_code_for
from src.json_output import build_report, dumps, error_object, write_report


class TestJobConfig(unittest.TestCase):

    def test_carlitz_command_needs_q_and_prime(self):
        with self.assertRaises(ValidationError):
            JobConfig("theta", q=3).validate()
        self.assertEqual(JobConfig("theta", q=3, prime="t").validate().command, "theta")

    def test_file_command_needs_a_cover(self):
        with self.assertRaises(ValidationError):
            JobConfig("fitting-general").validate()
        with self.assertRaises(ValidationError):
            JobConfig("fitting-general", cover_file="c.json", q=3).validate()
        with self.assertRaises(ValidationError):
            JobConfig("fitting", q=3, prime="t", cover_file="c.json").validate()

    def test_goss_needs_q(self):
        with self.assertRaises(ValidationError):
            JobConfig("goss").validate()

    def test_numeric_bounds(self):
        for field, value in (("level", 0), ("degree", 0), ("truncation_m", 0), ("laurent_prec", 0), ("workers", 0)):
            with self.assertRaises(ValidationError, msg=field):
                JobConfig("structure", q=3, prime="t", **{field: value}).validate()

    def test_field_guardrail(self):
        with self.assertRaises(GuardrailError):
            JobConfig("structure", q=2 ** 17, prime="t").validate()

    def test_parameters_omit_unset_options(self):
        params = JobConfig("goss", q=3, j=2).parameters()
        self.assertEqual(params["j"], 2)
        self.assertNotIn("chi", params)
        self.assertEqual(params["truncation_m"], 6)


class TestCacheDirectory(unittest.TestCase):

    @patch.dict("os.environ", {"STICKLAB_CACHE": "/tmp/from_env"})
    def test_environment_wins(self):
        self.assertEqual(resolve_cache_dir("/tmp/from_flag"), "/tmp/from_env")

    @patch.dict("os.environ", {}, clear=True)
    def test_flag_then_default(self):
        self.assertEqual(resolve_cache_dir("/tmp/from_flag"), "/tmp/from_flag")
        self.assertEqual(resolve_cache_dir(None), os.path.join(os.getcwd(), DEFAULT_CACHE_DIR))


class TestErrors(unittest.TestCase):

    def test_exit_codes(self):
        self.assertEqual(exit_code_for(ValidationError("bad")), 1)
        self.assertEqual(exit_code_for(TheoremViolation("inexact", "type 2")), 2)
        self.assertEqual(exit_code_for(GuardrailError("too big")), 3)
        self.assertEqual(exit_code_for(RuntimeError("other")), 1)

    def test_violation_text_names_the_case(self):
        self.assertEqual(str(TheoremViolation("inexact", "type 2")), "[type 2] inexact")
        self.assertEqual(TheoremViolation("inexact").case, "unspecified")


class TestJsonOutput(unittest.TestCase):

    def setUp(self):
        self.config = JobConfig("structure", q=3, prime="t")

    def test_report_envelope(self):
        report = build_report(self.config, {"ok": True}, 12)
        self.assertEqual(report["command"], "structure")
        self.assertEqual(report["parameters"]["prime"], "t")
        self.assertEqual(report["metadata"]["latency_ms"], 12)
        self.assertEqual(report["metadata"]["cache"]["hits"], 0)

    def test_compact_sorted_dump(self):
        self.assertEqual(dumps({"b": 1, "a": [1, 2]}), '{"a":[1,2],"b":1}')

    def test_write_to_file(self):
        report = build_report(self.config, {"ok": True}, 0)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "out.json")
            write_report(report, path)
            with open(path, "r", encoding="utf-8") as f:
                self.assertEqual(json.load(f)["result"], {"ok": True})

    def test_error_object(self):
        body = json.loads(error_object(TheoremViolation("remainder", "type 3 double zero")))
        self.assertEqual(body["error"], "TheoremViolation")
        self.assertEqual(body["case"], "type 3 double zero")
        self.assertNotIn("case", json.loads(error_object(ValidationError("bad"))))


if __name__ == "__main__":
    unittest.main()
