"""Site configuration.

One JSON file with the exact keys of :class:`SiteConfig`, editable
without touching code: pointing the engine at a different template wiki
or a different endpoint set is a config change only.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlsplit

from .errors import ConfigError
from .gateway import (
    DEFAULT_PER_ENDPOINT_LIMIT,
    DEFAULT_QUERY_TIMEOUT,
    EndpointConfig,
)
from .templatestore import DEFAULT_TTL_SECONDS, WikiSource

CONFIG_ENV_VAR = "SYNIA_CONFIG"

DEFAULT_LISTEN_ADDRESS = "127.0.0.1:8080"


def _normalize(url: str) -> str:
    return url.rstrip("/")


@dataclass(frozen=True)
class SiteConfig:
    wiki: WikiSource
    default_endpoint: EndpointConfig
    allowlist: tuple[EndpointConfig, ...]
    cache_ttl_seconds: float = DEFAULT_TTL_SECONDS
    query_timeout_seconds: float = DEFAULT_QUERY_TIMEOUT
    listen_address: str = DEFAULT_LISTEN_ADDRESS
    per_endpoint_limit: int = DEFAULT_PER_ENDPOINT_LIMIT

    def __post_init__(self) -> None:
        if not self.allowlist:
            raise ConfigError("allowlist must not be empty")
        wanted = _normalize(self.default_endpoint.query_url)
        if not any(_normalize(e.query_url) == wanted for e in self.allowlist):
            raise ConfigError("default_endpoint must be on the allowlist")
        if self.cache_ttl_seconds < 0:
            raise ConfigError("cache_ttl_seconds must be >= 0")
        if self.query_timeout_seconds <= 0:
            raise ConfigError("query_timeout_seconds must be > 0")
        host, _, port = self.listen_address.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError("listen_address must be host:port")

    @property
    def listen_host(self) -> str:
        return self.listen_address.rpartition(":")[0]

    @property
    def listen_port(self) -> int:
        return int(self.listen_address.rpartition(":")[2])

    def allowed_hosts(self) -> set[str]:
        """Hosts the engine may contact for queries and graph embeds."""
        hosts: set[str] = set()
        for endpoint in self.allowlist:
            hosts.add(endpoint.host)
            if endpoint.embed_url:
                embed_host = urlsplit(endpoint.embed_url).hostname
                if embed_host:
                    hosts.add(embed_host)
        return hosts

    def public_dict(self) -> dict:
        """Subset safe to serve to any client."""
        return {
            "wiki_base_url": self.wiki.base_url,
            "namespace_prefix": self.wiki.namespace_prefix,
            "allowlist": [{"label": e.label} for e in self.allowlist],
        }


def _endpoint_from_dict(raw: dict, where: str) -> EndpointConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where} must be an object")
    try:
        return EndpointConfig(
            query_url=raw["query_url"],
            label=raw.get("label", raw["query_url"]),
            embed_url=raw.get("embed_url"),
        )
    except KeyError as exc:
        raise ConfigError(f"{where} is missing key {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def config_from_dict(raw: dict) -> SiteConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    try:
        wiki_raw = raw["wiki"]
        default_raw = raw["default_endpoint"]
        allow_raw = raw["allowlist"]
    except KeyError as exc:
        raise ConfigError(f"missing configuration key {exc.args[0]!r}") from exc
    if not isinstance(wiki_raw, dict):
        raise ConfigError("wiki must be an object")
    try:
        wiki = WikiSource(
            base_url=wiki_raw["base_url"],
            namespace_prefix=wiki_raw["namespace_prefix"],
        )
    except KeyError as exc:
        raise ConfigError(f"wiki is missing key {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise ConfigError(f"wiki: {exc}") from exc
    if not isinstance(allow_raw, list):
        raise ConfigError("allowlist must be a list")
    allowlist = tuple(
        _endpoint_from_dict(entry, f"allowlist[{index}]")
        for index, entry in enumerate(allow_raw)
    )
    return SiteConfig(
        wiki=wiki,
        default_endpoint=_endpoint_from_dict(default_raw, "default_endpoint"),
        allowlist=allowlist,
        cache_ttl_seconds=float(raw.get("cache_ttl_seconds", DEFAULT_TTL_SECONDS)),
        query_timeout_seconds=float(
            raw.get("query_timeout_seconds", DEFAULT_QUERY_TIMEOUT)
        ),
        listen_address=raw.get("listen_address", DEFAULT_LISTEN_ADDRESS),
        per_endpoint_limit=int(
            raw.get("per_endpoint_limit", DEFAULT_PER_ENDPOINT_LIMIT)
        ),
    )


def load_config(path: str | Path | None = None) -> SiteConfig:
    """Load the config file, falling back to the ``SYNIA_CONFIG`` env var."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
        if not path:
            raise ConfigError(
                f"no config path given and {CONFIG_ENV_VAR} is not set"
            )
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)
