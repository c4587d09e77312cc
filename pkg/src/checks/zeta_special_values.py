import os
import time
from typing import Tuple

from src.classes.finite_field import FqContext
from src.goss_zeta import zeta_at_negative_int


def zeta_special_values(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    zeta_A(-j) stops with a certificate for j <= 6 and q in {2, 3}; over
    F_3 the values at j = 2, 4 vanish.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    top = 4 if quick else 6
    cases = []
    try:
        for q in (2, 3):
            ctx = FqContext.create(q)
            for j in range(1, top + 1):
                value = zeta_at_negative_int(ctx, j)
                must_vanish = q == 3 and j % (q - 1) == 0
                ok = value.value.is_zero() if must_vanish else True
                cases.append({
                    "q": q,
                    "j": j,
                    "value": value.value.text(),
                    "stopped_at": value.stopped_at,
                    "must_vanish": must_vanish,
                    "ok": ok,
                })
                if verbosity >= 2:
                    log_queue.put(f"[{pid}] [DEBUG] q={q} zeta(-{j}) = {value.value.text()}")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] zeta_special_values: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] zeta_special_values ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
