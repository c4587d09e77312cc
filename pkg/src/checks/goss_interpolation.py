import os
import time
from typing import Tuple

from src import ff_base
from src.classes.finite_field import FqContext
from src.goss_zeta import PAdicExponent, interpolation_check


PRIMES = ("t", "t^2+1")
PRECISION = 12


def _exponents(p: int):
    return [PAdicExponent(0), PAdicExponent(1), PAdicExponent(-1), PAdicExponent(3), PAdicExponent.residue(2, p, 3)]


def goss_interpolation(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """Per-degree Euler product against (1 - p^s) zeta_A(s) over F_3."""
    pid = os.getpid()
    start_time = time.perf_counter()
    D = 3 if quick else 5
    cases = []
    try:
        ctx = FqContext.create(3)
        for prime_text in PRIMES:
            prime = ff_base.parse_poly(ctx, prime_text)
            for y in _exponents(ctx.p):
                report = interpolation_check(ctx, prime, y, D, PRECISION)
                bad = [r["d"] for r in report.rows if not r["ok"]]
                cases.append({"prime": prime_text, "y": y.to_json(), "D": D, "failures": bad, "ok": report.ok})
                if bad and verbosity >= 1:
                    log_queue.put(f"[{pid}] [WARNING] p={prime_text} y={y.to_json()}: degrees {bad} disagree")
        result = {"ok": all(c["ok"] for c in cases), "P": PRECISION, "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] goss_interpolation: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] goss_interpolation ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
