"""Provider configuration: a TOML table, assembled into a provider stack.

The credential itself never appears in the file; the config names the
environment variable holding it. LOGICWEAVE_CACHE_DIR overrides the
configured cache directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from logicweave.gateway.cache import ResponseCache
from logicweave.gateway.mock import MockProvider
from logicweave.gateway.provider import CachedProvider, OpenAiChatProvider
from logicweave.gateway.types import Provider

CACHE_DIR_ENV = "LOGICWEAVE_CACHE_DIR"


@dataclass
class ProviderConfig:
    endpoint: str | None = None
    model: str = "gpt-4o-mini"
    credential_env: str = "OPENAI_API_KEY"
    retry_budget: int = 3
    parallelism: int = 4
    timeout: float = 120.0
    cache_dir: str | None = None
    mock_script: str | None = None


def provider_config_from_dict(table: dict) -> ProviderConfig:
    known = {f.name for f in fields(ProviderConfig)}
    unknown = sorted(set(table) - known)
    if unknown:
        raise ValueError(f"unknown provider config key(s): {', '.join(unknown)}")
    return ProviderConfig(**table)


def load_provider_config(path: str | Path) -> ProviderConfig:
    doc = tomllib.loads(Path(path).read_text(encoding="utf-8"))
    return provider_config_from_dict(doc.get("provider", doc))


def build_provider(cfg: ProviderConfig, base_dir: str | Path = ".") -> Provider:
    """Assemble the configured provider, cache-wrapped when a cache directory
    is set (or forced via LOGICWEAVE_CACHE_DIR)."""
    base_dir = Path(base_dir)
    if cfg.mock_script:
        provider: Provider = MockProvider.from_file(base_dir / cfg.mock_script)
    elif cfg.endpoint:
        provider = OpenAiChatProvider(
            cfg.endpoint,
            api_key=os.environ.get(cfg.credential_env),
            default_model=cfg.model,
            retry_budget=cfg.retry_budget,
            max_parallel=cfg.parallelism,
            timeout=cfg.timeout,
        )
    else:
        raise ValueError("provider config needs either 'endpoint' or 'mock_script'")
    cache_dir = os.environ.get(CACHE_DIR_ENV) or cfg.cache_dir
    if cache_dir:
        cache_path = Path(cache_dir)
        if not cache_path.is_absolute():
            cache_path = base_dir / cache_path
        return CachedProvider(provider, ResponseCache(cache_path))
    return provider
