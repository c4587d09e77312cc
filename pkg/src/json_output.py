import json
import sys
import time
from typing import Optional

from src.config import JobConfig


STICKLAB_VERSION = "0.1.0"


def build_report(config: JobConfig, result, latency_ms: int, cache_stats: Optional[dict] = None) -> dict:
    """
    The report envelope: command, parameters and result are deterministic;
    latency, cache counters and the timestamp live in ``metadata``.
    """
    return {
        "command": config.command,
        "parameters": config.parameters(),
        "result": result,
        "metadata": {
            "latency_ms": latency_ms,
            "cache": cache_stats or {"hits": 0, "misses": 0, "regenerated": 0, "warnings": []},
            "sticklab_version": STICKLAB_VERSION,
            "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
        },
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def write_report(report: dict, out: Optional[str] = None) -> None:
    text = dumps(report) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def error_object(exc: BaseException) -> str:
    """One-line JSON error for stderr."""
    body = {"error": type(exc).__name__, "message": str(exc)}
    case = getattr(exc, "case", None)
    if case is not None:
        body["case"] = case
    return json.dumps(body, sort_keys=True)
