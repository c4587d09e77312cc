import os
import time
from typing import Tuple

from src import carlitz_oracle
from src.arith_provider import ray_group_of
from src.checks import carlitz_cover, degree, instances, label


def reciprocity_oracle(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    For every irreducible place prime to p of small degree, the residual
    degree read off the factorization of the torsion polynomial equals the
    order of its class mod p^n.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    max_degree = 3 if quick else 4
    cases = []
    try:
        for q, prime_text, level in instances(quick):
            _, prime, cd = carlitz_cover(q, prime_text, level, degree(quick))
            rcg = ray_group_of(cd)
            group = cd.G_tilde
            rows = carlitz_oracle.reciprocity_table(
                prime, level, max_degree, lambda f: group.element_order(rcg.classify(f))
            )
            bad = [r["place"] for r in rows if not r["ok"]]
            cases.append({"cover": label(q, prime_text, level), "places": len(rows), "mismatches": bad, "ok": not bad})
            if verbosity >= 2:
                log_queue.put(f"[{pid}] [DEBUG] {label(q, prime_text, level)}: {len(rows)} places checked")
        result = {"ok": all(c["ok"] for c in cases), "max_degree": max_degree, "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] reciprocity_oracle: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] reciprocity_oracle ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
