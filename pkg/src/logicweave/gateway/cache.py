"""Persistent response cache: one JSON document per request digest.

Records are content-addressed (filename = hex digest of the request) and
written via temp-file-then-rename, so concurrent writers never interleave
and readers never observe partial documents. The directory is inspectable
and diff-able; there is no database.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from logicweave.gateway.types import LlmRequest, LlmResponse, request_to_dict


@dataclass(frozen=True)
class CacheStats:
    entries: int
    total_bytes: int


class ResponseCache:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> LlmResponse | None:
        path = self.path_for(key)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None  # missing or torn record: treat as a miss
        return LlmResponse(
            completions=tuple(doc["completions"]),
            provider_meta=doc.get("provider_meta", {}),
            cache_hit=True,
        )

    def put(self, key: str, request: LlmRequest, response: LlmResponse) -> None:
        doc = {
            "digest": key,
            "request": request_to_dict(request),
            "completions": list(response.completions),
            "provider_meta": dict(response.provider_meta),
        }
        payload = json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
            os.replace(tmp, self.path_for(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def _records(self) -> list[Path]:
        return sorted(self.directory.glob("*.json"))

    def stats(self) -> CacheStats:
        paths = self._records()
        return CacheStats(len(paths), sum(p.stat().st_size for p in paths))

    def prune(self, older_than_days: float | None = None) -> int:
        """Delete cached records; all of them, or only those older than N days."""
        cutoff = None
        if older_than_days is not None:
            cutoff = time.time() - older_than_days * 86400.0
        removed = 0
        for path in self._records():
            if cutoff is None or path.stat().st_mtime < cutoff:
                path.unlink()
                removed += 1
        return removed
