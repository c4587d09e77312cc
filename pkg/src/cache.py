"""
Content-addressed JSON cache for enumeration streams.

An entry is stored under sha256(canonical key) and carries the sha256 of its
own payload; an entry whose payload no longer matches that hash is treated
as corrupt, regenerated and overwritten.
"""
import hashlib
import json
import os
import tempfile
from typing import Any, Callable, List


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def stable_hash(value: Any) -> str:
    return hashlib.sha256(canonical_json(value).encode("utf-8")).hexdigest()


class ResultCache:
    """
    Read-through cache rooted at a directory.

    Attributes
    -----------
        directory (str): where entries live, one JSON file per key.
        hits, misses, regenerated (int): counters reported in command metadata.
        warnings (list[str]): one line per corrupt entry that was replaced.
    """

    def __init__(self, directory: str):
        self.directory = directory
        self.hits = 0
        self.misses = 0
        self.regenerated = 0
        self.warnings: List[str] = []
        os.makedirs(directory, exist_ok=True)

    def path_for(self, key: Any) -> str:
        return os.path.join(self.directory, f"{stable_hash(key)}.json")

    def _write(self, path: str, key: Any, payload: Any) -> None:
        entry = {"key": key, "payload": payload, "payload_sha256": stable_hash(payload)}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(canonical_json(entry))
            os.replace(tmp, path)
        except OSError:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise

    def _read(self, path: str):
        """The stored payload, or None when the entry is missing or corrupt."""
        if not os.path.exists(path):
            return None, False
        try:
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
            payload = entry["payload"]
            if stable_hash(payload) != entry["payload_sha256"]:
                return None, True
            return payload, False
        except (OSError, ValueError, KeyError, TypeError):
            return None, True

    def get(self, key: Any):
        payload, _ = self._read(self.path_for(key))
        return payload

    def put(self, key: Any, payload: Any) -> None:
        self._write(self.path_for(key), key, payload)

    def get_or_compute(self, key: Any, compute: Callable[[], Any]) -> Any:
        path = self.path_for(key)
        payload, corrupt = self._read(path)
        if payload is not None:
            self.hits += 1
            return payload
        if corrupt:
            self.regenerated += 1
            self.warnings.append(f"corrupt cache entry {os.path.basename(path)} regenerated")
        else:
            self.misses += 1
        payload = compute()
        self._write(path, key, payload)
        return payload

    def stats(self) -> dict:
        return {
            "hits": self.hits,
            "misses": self.misses,
            "regenerated": self.regenerated,
            "warnings": list(self.warnings),
        }
