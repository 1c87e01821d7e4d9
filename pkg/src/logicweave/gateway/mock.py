"""Deterministic scripted provider for tests and recorded golden runs.

A script is an ordered list of entries; each incoming request consumes the
first unconsumed entry whose matcher accepts it. Matchers are substrings of
the last user message (a single string, or a list that must all occur), an
integer ordinal (0-based request index), or ``None`` for match-anything.
Unmatched requests raise MockExhausted.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from logicweave.errors import LogicweaveError
from logicweave.gateway.provider import ProviderError
from logicweave.gateway.types import LlmRequest, LlmResponse

Matcher = None | int | str | tuple[str, ...]


class MockExhausted(LogicweaveError):
    """No unconsumed script entry matches the request."""


@dataclass(frozen=True)
class ScriptEntry:
    completions: tuple[str, ...]
    match: Matcher = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "completions", tuple(self.completions))
        if isinstance(self.match, list):
            object.__setattr__(self, "match", tuple(self.match))
        if not self.completions:
            raise ValueError("script entry needs at least one completion")

    def accepts(self, last_user: str, ordinal: int) -> bool:
        if self.match is None:
            return True
        if isinstance(self.match, int):
            return self.match == ordinal
        if isinstance(self.match, str):
            return self.match in last_user
        return all(part in last_user for part in self.match)


def _normalize_entry(raw) -> ScriptEntry:
    if isinstance(raw, ScriptEntry):
        return raw
    if isinstance(raw, dict):
        completions = raw.get("completions")
        if completions is None and "completion" in raw:
            completions = [raw["completion"]]
        return ScriptEntry(tuple(completions), raw.get("match"))
    if isinstance(raw, (tuple, list)) and len(raw) == 2:
        match, completions = raw
        if isinstance(completions, str):
            completions = [completions]
        return ScriptEntry(tuple(completions), match)
    raise ValueError(f"cannot interpret script entry: {raw!r}")


class MockProvider:
    """Scripted provider; thread-safe, deterministic, records every request."""

    default_model = "mock"

    def __init__(self, script: Iterable[ScriptEntry | tuple | dict]):
        self.script: Sequence[ScriptEntry] = [_normalize_entry(e) for e in script]
        self._consumed = [False] * len(self.script)
        self._lock = threading.Lock()
        self.calls: list[LlmRequest] = []

    @classmethod
    def from_file(cls, path: str | Path) -> MockProvider:
        entries = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(entries)

    def complete(self, request: LlmRequest) -> LlmResponse:
        with self._lock:
            ordinal = len(self.calls)
            self.calls.append(request)
            last_user = request.last_user_content()
            for idx, entry in enumerate(self.script):
                if self._consumed[idx] or not entry.accepts(last_user, ordinal):
                    continue
                if len(entry.completions) < request.sample_count:
                    raise ProviderError(
                        f"script entry {idx} holds {len(entry.completions)} "
                        f"completions but the request samples {request.sample_count}"
                    )
                self._consumed[idx] = True
                return LlmResponse(
                    completions=entry.completions[: request.sample_count],
                    provider_meta={"provider": "mock", "entry": idx},
                )
            raise MockExhausted(
                f"no script entry matches request #{ordinal} "
                f"(last user message starts: {last_user[:80]!r})"
            )

    @property
    def remaining(self) -> int:
        return self._consumed.count(False)
