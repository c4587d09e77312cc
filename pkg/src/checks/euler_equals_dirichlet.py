import os
import time
from typing import Tuple

from src.checks import carlitz_cover, degree, instances, label
from src.stickelberger import theta_dirichlet, theta_euler


def euler_equals_dirichlet(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """Theta by Euler product and by Dirichlet sum agree coefficientwise."""
    pid = os.getpid()
    start_time = time.perf_counter()
    D = degree(quick)
    cases = []
    try:
        for q, prime_text, level in instances(quick):
            _, _, cd = carlitz_cover(q, prime_text, level, D)
            euler = theta_euler(cd, D)
            dirichlet = theta_dirichlet(cd, D)
            bad = [d for d in range(D + 1) if not (euler.coeffs[d] - dirichlet.coeffs[d]).is_zero()]
            cases.append({"cover": label(q, prime_text, level), "D": D, "mismatched_degrees": bad, "ok": not bad})
            if verbosity >= 2:
                log_queue.put(f"[{pid}] [DEBUG] {label(q, prime_text, level)}: mismatches {bad}")
        ok = all(c["ok"] for c in cases)
        result = {"ok": ok, "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] euler_equals_dirichlet: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] euler_equals_dirichlet ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
