"""Uniform access to chat-completion backends: retries, caching, mocks."""

from logicweave.gateway.cache import CacheStats, ResponseCache
from logicweave.gateway.config import (
    CACHE_DIR_ENV,
    ProviderConfig,
    build_provider,
    load_provider_config,
    provider_config_from_dict,
)
from logicweave.gateway.mock import MockExhausted, MockProvider, ScriptEntry
from logicweave.gateway.provider import (
    AuthError,
    CachedProvider,
    OfflineProvider,
    OpenAiChatProvider,
    ProviderError,
    RateLimited,
)
from logicweave.gateway.types import (
    LlmRequest,
    LlmResponse,
    Message,
    Provider,
    cache_key,
    request_to_dict,
    response_digest,
)

__all__ = [
    "AuthError",
    "CACHE_DIR_ENV",
    "CacheStats",
    "CachedProvider",
    "LlmRequest",
    "LlmResponse",
    "Message",
    "MockExhausted",
    "MockProvider",
    "OfflineProvider",
    "OpenAiChatProvider",
    "Provider",
    "ProviderConfig",
    "ProviderError",
    "RateLimited",
    "ResponseCache",
    "ScriptEntry",
    "build_provider",
    "cache_key",
    "load_provider_config",
    "provider_config_from_dict",
    "request_to_dict",
    "response_digest",
]
