import multiprocessing
import os
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import job_runner as jr
from src.errors import TheoremViolation


def passing_check(verbosity, log_queue):
    return {"ok": True}, 0.01


def violating_check(verbosity, log_queue):
    raise TheoremViolation("remainder", "type 2 division")


class TestParseKeys(unittest.TestCase):

    def test_parse_keys(self):
        self.assertEqual(jr.parse_check_keys(""), [])
        self.assertEqual(jr.parse_check_keys("quick"), ["quick"])
        self.assertEqual(jr.parse_check_keys(" quick , verbosity "), ["quick", "verbosity"])

    def test_parse_keys_trailing_commas(self):
        self.assertEqual(jr.parse_check_keys("a,b,"), ["a", "b", ""])


class TestLogger(unittest.TestCase):

    def test_logger_writes_messages(self):
        q = multiprocessing.Queue()
        with tempfile.NamedTemporaryFile(delete=False) as tf:
            log_file = tf.name
        try:
            p = multiprocessing.Process(target=jr.log_writer, args=(q, log_file))
            p.start()
            for message in ("msg1", "msg2"):
                q.put(message)
            q.put(None)
            p.join()
            with open(log_file) as f:
                content = f.read()
            self.assertIn("msg1", content)
            self.assertIn("msg2", content)
        finally:
            os.remove(log_file)

    def test_log_writer_drains_when_file_is_unavailable(self):
        q = multiprocessing.Queue()
        p = multiprocessing.Process(target=jr.log_writer, args=(q, "/invalid/path/log.txt"))
        p.start()
        q.put("[1] [INFO] lost")
        q.put(None)
        p.join()
        self.assertEqual(p.exitcode, 0)
        self.assertTrue(q.empty())

    def test_start_and_stop(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            log_file = os.path.join(tmpdir, "log.txt")
            manager, log_queue, logger = jr.start_logger(log_file)
            log_queue.put("[1] [INFO] hello")
            jr.stop_logger(manager, log_queue, logger)
            with open(log_file) as f:
                self.assertIn("hello", f.read())


class TestProcessWorker(unittest.TestCase):

    def test_success(self):
        q = multiprocessing.Queue()
        jr.process_worker(passing_check, q, multiprocessing.Queue(), 1.0, "passing_check", 0, None)
        result, t, budget, name = q.get()
        self.assertTrue(result["ok"])
        self.assertEqual(budget, 1.0)
        self.assertEqual(name, "passing_check")

    def test_crash_becomes_failure_with_case(self):
        q = multiprocessing.Queue()
        log_q = multiprocessing.Queue()
        jr.process_worker(violating_check, q, log_q, 2.0, "violating_check", 0, None)
        result, t, budget, name = q.get()
        self.assertFalse(result["ok"])
        self.assertEqual(result["case"], "type 2 division")
        self.assertIn("TheoremViolation", result["error"])
        self.assertIn("CRITICAL ERROR", log_q.get(timeout=5))


class TestLoadFunctions(unittest.TestCase):

    def test_empty_dir(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            self.assertEqual(jr.load_checks(tmpdir), {})

    def test_bad_and_unnamed_modules_are_skipped(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            with open(os.path.join(tmpdir, "bad_module.py"), "w") as f:
                f.write("this is not valid python")
            with open(os.path.join(tmpdir, "empty_module.py"), "w") as f:
                f.write("x = 42")
            with open(os.path.join(tmpdir, "good_check.py"), "w") as f:
                f.write("def good_check(verbosity, log_queue):\n    return {'ok': True}, 0.0\n")
            self.assertEqual(sorted(jr.load_checks(tmpdir)), ["good_check"])

    def test_check_package(self):
        functions = jr.load_checks("src.checks")
        self.assertIn("generic_fitting_oracle", functions)
        self.assertIn("trivial_zero_orders", functions)

    def test_missing_package(self):
        self.assertEqual(jr.load_checks("src.no_such_package"), {})


class TestRunConcurrently(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.tasks_file = os.path.join(self.tmpdir.name, "suites.txt")
        self.log_file = os.path.join(self.tmpdir.name, "log.txt")

    def tearDown(self):
        self.tmpdir.cleanup()

    def write_tasks(self, text):
        with open(self.tasks_file, "w") as f:
            f.write(text)

    def test_empty_file(self):
        self.write_tasks("")
        results, latency = jr.run_concurrently_from_file(self.tasks_file, {"verbosity": 0}, {}, self.log_file)
        self.assertEqual(results, {})
        self.assertEqual(latency, {"total": 0})

    def test_unparseable_and_unknown_lines(self):
        self.write_tasks("# comment\ninvalid_line_without_budget\nmissing_check(verbosity, log_queue) 5\n")
        results, _ = jr.run_concurrently_from_file(self.tasks_file, {"verbosity": 1}, {}, self.log_file)
        self.assertEqual(list(results), ["missing_check"])
        self.assertFalse(results["missing_check"]["ok"])

    def test_argument_count_mismatch(self):
        self.write_tasks("passing_check(verbosity) 5\n")
        results, _ = jr.run_concurrently_from_file(
            self.tasks_file, {"verbosity": 0}, {"passing_check": passing_check}, self.log_file
        )
        self.assertIn("takes 2 arguments", results["passing_check"]["error"])

    def test_empty_key_rejects_the_entry(self):
        self.write_tasks("passing_check(verbosity, , log_queue) 5\n")
        results, _ = jr.run_concurrently_from_file(
            self.tasks_file, {"verbosity": 0}, {"passing_check": passing_check}, self.log_file
        )
        self.assertIn("empty argument key", results["passing_check"]["error"])

    def test_over_budget_check_keeps_its_result(self):
        self.write_tasks("passing_check(verbosity, log_queue) 0\n")
        results, _ = jr.run_concurrently_from_file(
            self.tasks_file, {"verbosity": 1}, {"passing_check": passing_check}, self.log_file
        )
        self.assertTrue(results["passing_check"]["ok"])
        self.assertFalse(results["passing_check"]["within_budget"])
        with open(self.log_file) as f:
            self.assertIn("over its 0.0s budget", f.read())

    def test_checks_run_in_processes(self):
        self.write_tasks("passing_check(verbosity, log_queue) 30\nviolating_check(verbosity, log_queue) 30\n")
        functions = {"passing_check": passing_check, "violating_check": violating_check}
        results, latency = jr.run_concurrently_from_file(self.tasks_file, {"verbosity": 0}, functions, self.log_file)
        self.assertTrue(results["passing_check"]["ok"])
        self.assertTrue(results["passing_check"]["within_budget"])
        self.assertFalse(results["violating_check"]["ok"])
        self.assertIn("total", latency)
        self.assertIn("passing_check", latency)


if __name__ == "__main__":
    unittest.main()
