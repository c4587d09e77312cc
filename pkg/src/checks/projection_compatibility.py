import os
import time
from typing import Tuple

from src.arith_provider import carlitz_provider, character_group
from src.checks import carlitz_default
from src.fitting import pro_fitting_report
from src.stickelberger import projection_compat_check


TRUNCATION = 6


def projection_compatibility(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """Level 2 to level 1 over (3, t): Theta projects onto Theta, Fitting ideals project into Fitting ideals."""
    pid = os.getpid()
    start_time = time.perf_counter()
    result = {"ok": False}
    try:
        ctx, prime, high, D = carlitz_default(3, "t", 2)
        if quick:
            D = 4
        low = carlitz_provider(ctx, prime, 1, D)
        theta_report = projection_compat_check(low, high, D)
        fitting_reports = [
            pro_fitting_report(ctx, prime, 2, chi, D, TRUNCATION) for chi in character_group(low.H)
        ]
        for report in fitting_reports:
            if not report["ok"] and verbosity >= 1:
                log_queue.put(f"[{pid}] [WARNING] chi={report['chi']} ({report['case']}): projection check failed")
        result = {
            "ok": theta_report["ok"] and all(r["ok"] for r in fitting_reports),
            "theta": theta_report,
            "fitting": fitting_reports,
        }
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] projection_compatibility: {e}")
        result = {"ok": False, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] projection_compatibility ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
