import os
import sys
import time
import argparse
import subprocess
import pandas as pd
import job_runner
from src.cache import ResultCache
from src.commands import COMMANDS
from src.config import DEFAULT_LAURENT_PREC, DEFAULT_TRUNCATION, JobConfig, resolve_cache_dir
from src.errors import exit_code_for
from src.json_output import build_report, error_object, write_report


ROOT = os.path.dirname(os.path.abspath(__file__))
SUITES_FILE = os.path.join(ROOT, "suites.txt")
TEST_DATA_DIR = os.path.join(ROOT, "tests", "data")

HELP_TEXT = (
    "usage: run [-v | --verbose] [-h | --help] COMMAND [options]\n\n"
    "positional arguments:\n"
    "  install           Install any dependencies needed\n"
    "  test              Runs testing suite\n"
    "  selftest          Runs every acceptance check (--quick for small degrees)\n"
    "  structure         Groups H, G and the character table of a Carlitz cover\n"
    "  theta             Stickelberger series by Euler product and Dirichlet sum\n"
    "  chi-theta         Character parts of the Stickelberger series\n"
    "  fitting           Class-dual Fitting ideals per character\n"
    "  fitting-general   Fitting ideals of a cover read from --cover-file\n"
    "  pro-fitting       Fitting ideals along levels 1..--level\n"
    "  goss              Partial values of the Goss zeta function\n"
    "  interpolate       Euler product against the Goss zeta function per degree\n"
    "  oracle            Reciprocity, splitting and zeta function from the Carlitz torsion\n\n"
    "options:\n"
    "  --q Q             Field size\n"
    "  --prime POLY      Monic irreducible prime, e.g. t^2+t+1\n"
    "  --level N         Level n (default 1)\n"
    "  --degree D        Truncation degree (default max(n deg p + 2, 6))\n"
    f"  --truncation-m M  p-power truncation (default {DEFAULT_TRUNCATION})\n"
    f"  --laurent-prec P  Laurent precision (default {DEFAULT_LAURENT_PREC})\n"
    "  --cover-file PATH Cover description in JSON\n"
    "  --chi C           One character, comma-separated exponents\n"
    "  --x POLY          Goss x-coordinate (default t)\n"
    "  --y Y             Goss exponent: an integer or value:M for a residue mod p^M\n"
    "  --j J             Goss value at -j\n"
    "  --out PATH        Write the JSON report here instead of stdout\n"
    "  --workers W       Processes for the Dirichlet enumeration (default 1)\n"
    "  --cache-dir DIR   Enumeration cache (STICKLAB_CACHE overrides)\n"
    "  --quick           Smaller degrees for selftest and oracle\n"
    "  -h, --help        Show this help message and exit\n"
    "  -v, --verbose     Enable verbose output"
)


def log_path_usable(path: str) -> bool:
    """
    True when the selftest log writer can create or truncate ``path``. Missing
    parent directories are created; a directory or read-only file is refused.
    """
    if not path:
        return False
    target = os.path.abspath(path)
    if os.path.isdir(target):
        return False
    if os.path.exists(target):
        return os.access(target, os.W_OK)
    parent = os.path.dirname(target)
    try:
        os.makedirs(parent, exist_ok=True)
    except OSError:
        return False
    return os.access(parent, os.W_OK)


def resolve_environment():
    """
    (verbosity from LOG_LEVEL or None, log file path). With
    REQUIRE_STRICT_ENV=1 an invalid LOG_LEVEL or LOG_FILE exits with 1.
    """
    log_level_str = os.getenv("LOG_LEVEL")
    log_file_path = os.getenv("LOG_FILE")
    require_env = os.getenv("REQUIRE_STRICT_ENV", "0") == "1"

    if require_env:
        if log_level_str is None or not log_level_str.isdigit() or int(log_level_str) not in (0, 1, 2):
            sys.exit(1)
        if not log_file_path or not log_path_usable(log_file_path):
            sys.exit(1)

    verbosity_env = (
        int(log_level_str)
        if (log_level_str and log_level_str.isdigit() and int(log_level_str) in (0, 1, 2))
        else None
    )
    if log_file_path and log_path_usable(log_file_path):
        resolved_log_file_path = log_file_path
    else:
        resolved_log_file_path = os.path.join(os.getcwd(), "log.txt")
    return verbosity_env, resolved_log_file_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="run", description="sticklab", add_help=False)
    parser.add_argument('-h', '--help', action='help', default=argparse.SUPPRESS, help=HELP_TEXT)
    parser.add_argument('-v', '--verbose', action='store_true', help='Enable verbose output')
    parser.add_argument(
        "command",
        type=str,
        choices=["install", "test", "selftest"] + sorted(COMMANDS),
        help="Choose 'install', 'test', 'selftest' or a computation.",
    )
    parser.add_argument("--q", type=int)
    parser.add_argument("--prime", type=str)
    parser.add_argument("--level", type=int, default=1)
    parser.add_argument("--degree", type=int)
    parser.add_argument("--truncation-m", type=int, default=DEFAULT_TRUNCATION)
    parser.add_argument("--laurent-prec", type=int, default=DEFAULT_LAURENT_PREC)
    parser.add_argument("--cover-file", type=str)
    parser.add_argument("--chi", type=str)
    parser.add_argument("--x", type=str)
    parser.add_argument("--y", type=str)
    parser.add_argument("--j", type=int)
    parser.add_argument("--out", type=str)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", type=str)
    parser.add_argument("--quick", action="store_true")
    return parser


def config_from_args(args, verbosity: int, log_file: str) -> JobConfig:
    return JobConfig(
        command=args.command,
        q=args.q,
        prime=args.prime,
        level=args.level,
        degree=args.degree,
        truncation_m=args.truncation_m,
        laurent_prec=args.laurent_prec,
        cover_file=args.cover_file,
        out=args.out,
        workers=args.workers,
        cache_dir=args.cache_dir,
        quick=args.quick,
        verbosity=verbosity,
        log_file=log_file,
        chi=args.chi,
        y=args.y,
        x=args.x,
        j=args.j,
    )


def selftest_summary(results: dict, latency: dict) -> pd.DataFrame:
    rows = [
        {
            "check": name,
            "ok": bool(result.get("ok")),
            "within_budget": bool(result.get("within_budget", False)),
            "latency_ms": latency.get(name),
        }
        for name, result in sorted(results.items())
    ]
    return pd.DataFrame(rows, columns=["check", "ok", "within_budget", "latency_ms"])


def run_selftest(config: JobConfig) -> int:
    args = {"quick": config.quick, "data_dir": TEST_DATA_DIR, "verbosity": config.verbosity}
    results, latency = job_runner.run_concurrently_from_file(SUITES_FILE, args, "src.checks", config.log_file)
    frame = selftest_summary(results, latency)
    if config.verbosity >= 1:
        print(frame.to_string(index=False), file=sys.stderr)
    passed = int(frame["ok"].sum()) if not frame.empty else 0
    result = {"checks": results, "passed": passed, "total": len(frame), "ok": passed == len(frame) and passed > 0}
    write_report(build_report(config, result, latency.get("total", 0)), config.out)
    return 0 if result["ok"] else 2


def run_command(config: JobConfig) -> int:
    cache = ResultCache(resolve_cache_dir(config.cache_dir))
    manager, log_queue, logger = job_runner.start_logger(config.log_file)
    try:
        start_time = time.perf_counter()
        result = COMMANDS[config.command](config, cache, log_queue)
        latency_ms = round((time.perf_counter() - start_time) * 1000)
        if config.verbosity >= 1:
            log_queue.put(f"[{os.getpid()}] [INFO] {config.command} finished in {latency_ms} ms")
    finally:
        job_runner.stop_logger(manager, log_queue, logger)
    write_report(build_report(config, result, latency_ms, cache.stats()), config.out)
    return 0


def main(argv=None) -> int:
    verbosity_env, resolved_log_file_path = resolve_environment()
    args = build_parser().parse_args(argv)

    # Final verbosity: env (if valid) > -v flag > 0
    verbosity = verbosity_env if verbosity_env is not None else (1 if args.verbose else 0)

    if args.command == "install":
        print("Installing dependencies...")
        return subprocess.call([sys.executable, "-m", "pip", "install", "--user", "-r", os.path.join(ROOT, "requirements.txt")])

    if args.command == "test":
        if verbosity >= 1:
            print("Verbose: Running tests...", file=sys.stderr)
        return subprocess.call([sys.executable, os.path.join(ROOT, "run_tests.py")])

    try:
        config = config_from_args(args, verbosity, resolved_log_file_path).validate()
        if config.command == "selftest":
            return run_selftest(config)
        return run_command(config)
    except Exception as e:
        print(error_object(e), file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
