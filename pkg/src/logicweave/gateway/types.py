"""Request/response types shared by every chat-completion provider."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Protocol, runtime_checkable

ROLES = ("system", "user", "assistant")


class Message(NamedTuple):
    role: str
    content: str


@dataclass(frozen=True)
class LlmRequest:
    """One chat-completion call; ``sample_count`` asks for n parallel samples."""

    model: str
    messages: tuple[Message, ...]
    temperature: float = 0.3
    top_k: int | None = None
    sample_count: int = 1
    seed_hint: int | None = None

    def __post_init__(self) -> None:
        msgs = tuple(Message(role, content) for role, content in self.messages)
        if not msgs:
            raise ValueError("messages must be non-empty")
        for m in msgs:
            if m.role not in ROLES:
                raise ValueError(f"unknown message role {m.role!r}")
        if msgs[0].role == "assistant":
            raise ValueError("first message must be system or user")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.top_k is not None and self.top_k < 1:
            raise ValueError("top_k must be positive")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.sample_count > 1 and self.temperature <= 0:
            raise ValueError("multiple samples require temperature > 0")
        object.__setattr__(self, "messages", msgs)

    def last_user_content(self) -> str:
        for m in reversed(self.messages):
            if m.role == "user":
                return m.content
        return ""


@dataclass(frozen=True)
class LlmResponse:
    completions: tuple[str, ...]
    provider_meta: Mapping[str, object] = field(default_factory=dict, compare=False)
    cache_hit: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "completions", tuple(self.completions))


@runtime_checkable
class Provider(Protocol):
    def complete(self, request: LlmRequest) -> LlmResponse: ...


def request_to_dict(request: LlmRequest) -> dict:
    return {
        "model": request.model,
        "messages": [[m.role, m.content] for m in request.messages],
        "temperature": request.temperature,
        "top_k": request.top_k,
        "sample_count": request.sample_count,
        "seed_hint": request.seed_hint,
    }


def _digest(payload: object) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def cache_key(request: LlmRequest) -> str:
    """Content hash of every request field; any change yields a new key."""
    return _digest(request_to_dict(request))


def response_digest(response: LlmResponse) -> str:
    return _digest(list(response.completions))
