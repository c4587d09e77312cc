#!/usr/bin/env python3
"""
Runs the unittest suite under branch coverage and prints one JSON summary
line. ``run_tests.py test_fitting*`` narrows discovery to matching files.
"""
import io
import json
import os
import sys
import unittest

import coverage

COVERED_SOURCES = ["src", "job_runner", "run"]


def run_suite(pattern: str = "test*.py"):
    """Returns (unittest result, coverage percent) with all test output swallowed."""
    os.environ["LOG_FILE"] = os.path.join(os.getcwd(), "log.txt")
    os.environ["LOG_LEVEL"] = "2"

    buffer = io.StringIO()
    original_stdout, original_stderr = sys.stdout, sys.stderr
    sys.stdout = sys.stderr = buffer

    cov = coverage.Coverage(branch=True, source=COVERED_SOURCES, omit=["tests/*"])
    cov.start()
    try:
        suite = unittest.TestLoader().discover("tests", pattern=pattern)
        result = unittest.TextTestRunner(stream=buffer, verbosity=2).run(suite)
    finally:
        cov.stop()
        cov.save()
        sys.stdout, sys.stderr = original_stdout, original_stderr

    try:
        percent = cov.report(file=io.StringIO())
    except coverage.CoverageException:
        percent = 0.0
    return result, percent


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pattern = argv[0] if argv else "test*.py"
    if not pattern.endswith(".py"):
        pattern += ".py"
    result, percent = run_suite(pattern)

    total = result.testsRun
    passed = total - len(result.failures) - len(result.errors)
    print(json.dumps(f"{passed}/{total} test cases passed. {int(percent)}% line coverage achieved."))
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    sys.exit(main())
