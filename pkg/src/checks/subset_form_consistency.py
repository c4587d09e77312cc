import os
import time
from typing import Tuple

from src.checks import LEVEL_TWO_INSTANCES, carlitz_default, label
from src.fitting import fitting_subset_form, fitting_tate_dual_totram, totram_gamma_one_image
from src.group_ring import ideal_equal
from src.stickelberger import integral_gamma, theta_euler


TRUNCATION = 6


def subset_form_consistency(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """gamma = 1 image of the totally ramified product form against the subset corestriction form."""
    pid = os.getpid()
    start_time = time.perf_counter()
    cases = []
    try:
        for q, prime_text, level in LEVEL_TWO_INSTANCES[:1] if quick else LEVEL_TWO_INSTANCES:
            _, _, cd, D = carlitz_default(q, prime_text, level)
            totram = fitting_tate_dual_totram(cd, integral_gamma(theta_euler(cd, D), cd))
            image = totram_gamma_one_image(totram, cd).ideal(cd.p, TRUNCATION)
            subset = fitting_subset_form(cd, D)
            equal = ideal_equal(image, subset.ideal(cd.p, TRUNCATION))
            cases.append({
                "cover": label(q, prime_text, level),
                "D": D,
                "M": TRUNCATION,
                "image_generators": len(image.generators),
                "subset_generators": len(subset.generators),
                "ok": equal,
            })
            if not equal and verbosity >= 1:
                log_queue.put(f"[{pid}] [WARNING] {label(q, prime_text, level)}: subset form differs from the product form")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] subset_form_consistency: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] subset_form_consistency ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
