import os
import time
from typing import Tuple

from src.arith_provider import character_group, classify_character
from src.checks import carlitz_cover, degree, instances, label
from src.cover_file import load_cover
from src.fitting import chi_gamma, class_dual_case, fitting_class_dual
from src.stickelberger import theta_euler


# file name -> (character, expected case)
SYNTHETIC_COVERS = {
    "type3_double_zero.json": ((0, 2), "type 3 double zero"),
    "type3_single_zero.json": ((0, 2), "type 3 frob != 1"),
}


def _row(cover: str, cd, character, theta, expected_case=None) -> dict:
    case, required = class_dual_case(cd, character)
    fg = fitting_class_dual(cd, character, chi_gamma(cd, character, cd.degree_bound, theta))
    ok = fg.trivial_zero_order >= required and (expected_case is None or case == expected_case)
    return {
        "cover": cover,
        "chi": list(character.chi),
        "case": case,
        "required": required,
        "trivial_zero_order": fg.trivial_zero_order,
        "ok": ok,
    }


def trivial_zero_orders(quick: bool, data_dir: str, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    Vanishing order of Theta_chi at g = 1 against the class-dual case, on
    the Carlitz instances and two synthetic type-3 covers. Every exact
    division inside fitting_class_dual must go through.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    D = degree(quick)
    cases = []
    try:
        for q, prime_text, level in instances(quick):
            _, _, cd = carlitz_cover(q, prime_text, level, D)
            theta = theta_euler(cd, D)
            for chi in character_group(cd.H):
                cases.append(_row(label(q, prime_text, level), cd, classify_character(cd, chi), theta))
        for filename, (chi, expected_case) in SYNTHETIC_COVERS.items():
            cd = load_cover(os.path.join(data_dir, filename))
            theta = theta_euler(cd, cd.degree_bound)
            cases.append(_row(filename, cd, classify_character(cd, chi), theta, expected_case))
            if verbosity >= 2:
                log_queue.put(f"[{pid}] [DEBUG] {filename}: {cases[-1]}")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] trivial_zero_orders: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}
        case = getattr(e, "case", None)
        if case is not None:
            result["case"] = case

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] trivial_zero_orders ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
