"""Chat-completion providers: OpenAI-compatible HTTP backend and cache wrapper.

The wire shape is the OpenAI chat-completions JSON; endpoint and model are
configuration, never code. Transient upstream failures (429, 5xx, socket
errors) are retried with exponential backoff up to the configured budget;
a semaphore bounds in-flight calls.
"""

from __future__ import annotations

import threading
import time
from dataclasses import replace
from typing import Callable

import requests

from logicweave.errors import LogicweaveError
from logicweave.gateway.cache import ResponseCache
from logicweave.gateway.types import LlmRequest, LlmResponse, Provider, cache_key


class AuthError(LogicweaveError):
    """Credentials rejected by the provider."""


class RateLimited(LogicweaveError):
    """Still throttled after exhausting the retry budget."""


class ProviderError(LogicweaveError):
    """Upstream failure or malformed upstream reply."""


class OpenAiChatProvider:
    """Blocking client for any OpenAI-compatible /chat/completions endpoint."""

    def __init__(
        self,
        endpoint: str,
        api_key: str | None = None,
        default_model: str = "gpt-4o-mini",
        retry_budget: int = 3,
        backoff_base: float = 0.5,
        backoff_cap: float = 30.0,
        max_parallel: int = 4,
        timeout: float = 120.0,
        session: requests.Session | None = None,
        sleeper: Callable[[float], None] = time.sleep,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.api_key = api_key
        self.default_model = default_model
        self.retry_budget = retry_budget
        self.backoff_base = backoff_base
        self.backoff_cap = backoff_cap
        self.timeout = timeout
        self._semaphore = threading.Semaphore(max_parallel)
        self._session = session or requests.Session()
        self._sleep = sleeper

    def _payload(self, request: LlmRequest) -> dict:
        payload: dict = {
            "model": request.model,
            "messages": [{"role": m.role, "content": m.content} for m in request.messages],
            "temperature": request.temperature,
            "n": request.sample_count,
        }
        if request.top_k is not None:
            payload["top_k"] = request.top_k
        if request.seed_hint is not None:
            payload["seed"] = request.seed_hint
        return payload

    def complete(self, request: LlmRequest) -> LlmResponse:
        url = f"{self.endpoint}/chat/completions"
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        attempt = 0
        while True:
            failure: LogicweaveError | None = None
            try:
                with self._semaphore:
                    http = self._session.post(
                        url,
                        json=self._payload(request),
                        headers=headers,
                        timeout=self.timeout,
                    )
            except requests.RequestException as exc:
                failure = ProviderError(f"request failed: {exc}")
            else:
                if http.status_code in (401, 403):
                    raise AuthError(f"provider rejected credentials ({http.status_code})")
                if http.status_code == 429:
                    failure = RateLimited("rate limited by provider")
                elif http.status_code >= 500:
                    failure = ProviderError(f"upstream error {http.status_code}")
                elif http.status_code != 200:
                    raise ProviderError(
                        f"unexpected status {http.status_code}: {http.text[:200]}"
                    )
                else:
                    return self._parse(request, http)
            if attempt >= self.retry_budget:
                raise failure
            self._sleep(min(self.backoff_cap, self.backoff_base * (2**attempt)))
            attempt += 1

    def _parse(self, request: LlmRequest, http: requests.Response) -> LlmResponse:
        try:
            doc = http.json()
            choices = doc["choices"]
            completions = tuple(choice["message"]["content"] for choice in choices)
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(f"malformed upstream reply: {exc}")
        if len(completions) != request.sample_count:
            raise ProviderError(
                f"expected {request.sample_count} completions, got {len(completions)}"
            )
        meta = {"provider": "openai-compatible", "model": doc.get("model", request.model)}
        if isinstance(doc.get("usage"), dict):
            meta["usage"] = doc["usage"]
        return LlmResponse(completions=completions, provider_meta=meta)


class CachedProvider:
    """Serves cached responses byte-identically; delegates misses and persists."""

    def __init__(self, inner: Provider, cache: ResponseCache):
        self.inner = inner
        self.cache = cache
        self.default_model = getattr(inner, "default_model", "gpt-4o-mini")

    def complete(self, request: LlmRequest) -> LlmResponse:
        key = cache_key(request)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        response = self.inner.complete(request)
        self.cache.put(key, request, response)
        return replace(response, cache_hit=False)


class OfflineProvider:
    """Fails on any call; wrap under a cache to prove a run never hits the network."""

    default_model = "offline"

    def complete(self, request: LlmRequest) -> LlmResponse:
        raise ProviderError("live call attempted by an offline provider")
