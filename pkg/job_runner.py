"""
Runs the selftest check registry (``suites.txt``): each line names a check
in ``src.checks``, the argument keys it takes and its runtime budget in
seconds. Every check runs in its own process and logs through one queue
drained by a writer process.
"""
import importlib
import importlib.util
import inspect
import multiprocessing
import os
import re
import sys
import time

# check_name(key, key, ...) budget_seconds
REGISTRY_LINE = re.compile(r'(\w+)\((.*)\)\s*([\d.]+)')


def parse_check_keys(key_text: str) -> list[str]:
    """
    Argument keys of one registry entry, in call order. Empty keys are kept
    so the runner can reject the entry instead of shifting the arguments.
    """
    if not key_text.strip():
        return []
    return [key.strip() for key in key_text.split(',')]


def log_writer(log_queue: multiprocessing.Queue, log_file_path: str):
    """
    Appends queued check messages to ``log_file_path`` until a None sentinel.

    If the file cannot be opened the writer reports it once on stderr and
    keeps draining, so checks never block on the queue.
    """
    try:
        sink = open(log_file_path, 'w', encoding='utf-8')
    except OSError as e:
        print(f"selftest log {log_file_path!r} unavailable: {e}", file=sys.stderr)
        sink = None
    try:
        while True:
            message = log_queue.get()
            if message is None:
                break
            if sink is not None:
                sink.write(f"{message}\n")
                sink.flush()
    finally:
        if sink is not None:
            sink.close()


def start_logger(log_file: str):
    """A manager-backed log queue and the process draining it into ``log_file``."""
    manager = multiprocessing.Manager()
    log_queue = manager.Queue()
    logger = multiprocessing.Process(target=log_writer, args=(log_queue, log_file))
    logger.start()
    return manager, log_queue, logger


def stop_logger(manager, log_queue, logger) -> None:
    log_queue.put(None)
    logger.join()
    manager.shutdown()


def process_worker(target_func, result_queue, log_queue, budget, func_name, *args):
    """
    Runs one check; a crash is recorded as a failed result carrying the error.
    """
    start_time = time.perf_counter()
    try:
        result, time_taken = target_func(*args)
        result_queue.put((result, float(time_taken), float(budget), func_name))
    except Exception as e:
        time_taken = time.perf_counter() - start_time
        log_queue.put(f"[{os.getpid()}] [CRITICAL ERROR] check '{func_name}' crashed: {e}")
        failure = {"ok": False, "error": f"{type(e).__name__}: {e}"}
        case = getattr(e, "case", None)
        if case is not None:
            failure["case"] = case
        result_queue.put((failure, time_taken, float(budget), func_name))


def _check_of(module, module_name: str):
    check = getattr(module, module_name, None)
    return check if callable(check) else None


def load_checks(source: str) -> dict:
    """
    Checks by name from a directory of modules or a dotted package such as
    ``src.checks``. A module contributes the function named after it; modules
    that fail to import or define no such function are left out.
    """
    checks = {}
    if os.path.isdir(source):
        for filename in sorted(os.listdir(source)):
            if not filename.endswith('.py') or filename.startswith('__'):
                continue
            module_name = filename[:-3]
            spec = importlib.util.spec_from_file_location(module_name, os.path.join(source, filename))
            if spec is None or spec.loader is None:
                continue
            module = importlib.util.module_from_spec(spec)
            try:
                spec.loader.exec_module(module)
            except (SyntaxError, ImportError):
                continue
            check = _check_of(module, module_name)
            if check is not None:
                checks[module_name] = check
        return checks
    try:
        package = importlib.import_module(source)
    except ImportError:
        return {}
    for filename in sorted(os.listdir(package.__path__[0])):
        if not filename.endswith('.py') or filename.startswith('__'):
            continue
        module_name = filename[:-3]
        try:
            module = importlib.import_module(f"{source}.{module_name}")
        except ImportError:
            continue
        check = _check_of(module, module_name)
        if check is not None:
            checks[module_name] = check
    return checks


def _registry_entry(line: str, checks: dict, args: dict):
    """(check, name, keys, budget) for one registry line, or (None, name, error, None)."""
    match = REGISTRY_LINE.match(line)
    if not match:
        return None, None, f"cannot parse registry line '{line}'", None
    name, key_text, budget_text = match.groups()
    if name not in checks:
        return None, name, f"check '{name}' not found in the check package", None
    check = checks[name]
    keys = parse_check_keys(key_text)
    if "" in keys:
        return None, name, f"empty argument key in registry entry for '{name}'", None
    expected = len(inspect.signature(check).parameters)
    if len(keys) != expected:
        return None, name, f"'{name}' takes {expected} arguments, registry gives {len(keys)}", None
    missing = [key for key in keys if key not in args]
    if missing:
        return None, name, f"'{name}' needs arguments not supplied by selftest: {missing}", None
    return check, name, keys, float(budget_text)


def run_concurrently_from_file(tasks_filename: str, all_args_dict: dict, available_functions, log_file: str):
    """
    Runs every registry line ``check(key, ...) budget_seconds`` in its own process.

    ``available_functions`` is a dict of checks or a source for ``load_checks``.
    A check that finishes over its budget still reports its result, with
    ``within_budget`` false.

    Returns:
        (results, latency): per-check result dicts, and per-check milliseconds
        plus the wall-clock ``total``.
    """
    verbosity = all_args_dict["verbosity"]
    manager, log_queue, logger = start_logger(log_file)
    checks = available_functions if isinstance(available_functions, dict) else load_checks(available_functions)
    all_args_dict['log_queue'] = log_queue
    pid = os.getpid()

    processes = []
    results_queue = multiprocessing.Queue()
    skipped = {}

    if verbosity > 0:
        log_queue.put(f"[{pid}] [INFO] Reading check registry '{tasks_filename}'...")

    with open(tasks_filename, 'r', encoding="utf-8") as f:
        for i, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            check, name, detail, budget = _registry_entry(line, checks, all_args_dict)
            if check is None:
                if name is None:
                    if verbosity > 0:
                        log_queue.put(f"[{pid}] [WARNING] Skipped registry line {i}: {detail}")
                else:
                    skipped[name] = {"ok": False, "error": detail}
                continue
            call_args = tuple(all_args_dict[key] for key in detail)
            process_args = (check, results_queue, log_queue, budget, name) + call_args
            processes.append(multiprocessing.Process(target=process_worker, args=process_args))
            if verbosity > 0:
                log_queue.put(f"[{pid}] [INFO] Queued check {name} with a {budget}s budget")

    results = dict(skipped)
    latency = {"total": 0}
    if not processes:
        if verbosity > 0:
            log_queue.put(f"[{pid}] [INFO] No runnable checks in the registry.")
        stop_logger(manager, log_queue, logger)
        return results, latency

    started = time.perf_counter()
    for p in processes:
        p.start()

    for _ in range(len(processes)):
        result, seconds, budget, name = results_queue.get()
        result = dict(result)
        result["within_budget"] = seconds <= budget
        if not result["within_budget"] and verbosity > 0:
            log_queue.put(f"[{pid}] [WARNING] check {name} took {seconds:.2f}s, over its {budget}s budget")
        results[name] = result
        latency[name] = round(seconds * 1000)

    latency["total"] = round((time.perf_counter() - started) * 1000)
    for p in processes:
        p.join()

    if verbosity > 0:
        log_queue.put(f"[{pid}] [INFO] --- All checks have completed ---")
    stop_logger(manager, log_queue, logger)
    return results, latency
