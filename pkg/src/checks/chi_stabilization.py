import os
import time
from typing import Tuple

from src.arith_provider import character_group, classify_character
from src.checks import carlitz_cover, degree, instances, label
from src.group_ring import norm_element
from src.stickelberger import chi_theta, theta_euler


def chi_stabilization(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    From degree n * deg p on, chi-coefficients vanish for chi != chi_0 and
    equal |H| q^(d - n deg p) n(G) for chi_0.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    D = degree(quick)
    cases = []
    try:
        for q, prime_text, level in instances(quick):
            _, prime, cd = carlitz_cover(q, prime_text, level, D)
            theta = theta_euler(cd, D)
            D0 = level * prime.degree
            for chi in character_group(cd.H):
                character = classify_character(cd, chi)
                ct = chi_theta(theta, cd, character)
                norm = norm_element(cd.G, cd.G.elements(), ct.coeffs[0].m)
                bad = []
                for d in range(D0, D + 1):
                    expected = norm.scale(cd.H.order * q ** (d - D0)) if character.trivial else norm.scale(0)
                    if not (ct.coeffs[d] - expected).is_zero():
                        bad.append(d)
                cases.append({
                    "cover": label(q, prime_text, level),
                    "chi": list(character.chi),
                    "D0": D0,
                    "failures": bad,
                    "ok": not bad,
                })
                if bad and verbosity >= 1:
                    log_queue.put(f"[{pid}] [WARNING] {label(q, prime_text, level)} {character.tag}: tail differs at {bad}")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] chi_stabilization: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] chi_stabilization ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
