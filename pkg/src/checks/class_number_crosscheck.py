import os
import time
from typing import Tuple

from src import carlitz_oracle
from src.checks import LEVEL_TWO_INSTANCES, carlitz_default, label
from src.classes.cyclo import phi
from src.fitting import class_group_length


MIN_TRUNCATION = 6


def class_number_crosscheck(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    v_p(h) of F_n from the place census against the p-length predicted by
    the per-character class-dual Fitting ideals.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    cases = []
    try:
        for q, prime_text, level in LEVEL_TWO_INSTANCES[:1] if quick else LEVEL_TWO_INSTANCES:
            _, prime, cd, D = carlitz_default(q, prime_text, level)
            zeta = carlitz_oracle.zeta_from_census(prime, level)
            M = max(MIN_TRUNCATION, phi(cd.H.exponent) * zeta.v_p_h + 2)
            predicted = class_group_length(cd, D, M)
            ok = predicted == zeta.v_p_h
            cases.append({
                "cover": label(q, prime_text, level),
                "g": zeta.g,
                "h": zeta.h,
                "v_p_h": zeta.v_p_h,
                "M": M,
                "fitting_length": str(predicted),
                "ok": ok,
            })
            if verbosity >= 1:
                log_queue.put(f"[{pid}] [INFO] {label(q, prime_text, level)}: v_p(h)={zeta.v_p_h}, Fitting length={predicted}")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] class_number_crosscheck: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] class_number_crosscheck ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
