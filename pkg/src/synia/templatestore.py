"""Fetching and caching template wikipages.

Templates live on an openly editable wiki, so the store is strictly
read-only: raw page text via ``index.php?action=raw``, a TTL cache so
browsing does not hammer the wiki, and an edit link for pages that do
not exist yet.  Concurrent misses for the same title collapse into a
single upstream request.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable
from urllib.parse import quote, urlsplit

from .errors import WikiError, WikiProtocolError, WikiUnreachable
from .transport import RequestsTransport, Transport, TransportFailure

DEFAULT_TTL_SECONDS = 300.0
DEFAULT_FETCH_TIMEOUT = 15.0


@dataclass(frozen=True)
class WikiSource:
    """The wiki that hosts template pages."""

    base_url: str
    namespace_prefix: str

    def __post_init__(self) -> None:
        parts = urlsplit(self.base_url)
        if parts.scheme not in ("http", "https") or not parts.netloc:
            raise ValueError(f"base_url must be absolute http(s): {self.base_url!r}")
        if not self.namespace_prefix.endswith(":"):
            raise ValueError("namespace_prefix must end with ':'")

    @property
    def host(self) -> str:
        return urlsplit(self.base_url).hostname or ""


def _encode_title(title: str) -> str:
    # MediaWiki treats spaces and underscores the same; underscores keep
    # the URL readable.
    return quote(title.replace(" ", "_"), safe=":")


def raw_page_url(title: str, source: WikiSource) -> str:
    base = source.base_url.rstrip("/")
    return f"{base}/index.php?title={_encode_title(title)}&action=raw"


def create_link(title: str, source: WikiSource) -> str:
    """Edit URL a user can follow to create a missing template page."""
    base = source.base_url.rstrip("/")
    return f"{base}/index.php?title={_encode_title(title)}&action=edit"


@dataclass
class CachedPage:
    title: str
    wikitext: str | None  # None caches "page does not exist"
    fetched_at: float
    ttl: float

    def expired(self, now: float) -> bool:
        return now - self.fetched_at > self.ttl


@dataclass(frozen=True)
class PageFetch:
    """Outcome of a cached fetch; ``stale`` marks an expired copy served
    because the wiki could not be reached for a refresh."""

    title: str
    wikitext: str | None
    stale: bool = False

    @property
    def missing(self) -> bool:
        return self.wikitext is None


class _Flight:
    __slots__ = ("event", "result", "error")

    def __init__(self) -> None:
        self.event = threading.Event()
        self.result: PageFetch | None = None
        self.error: WikiError | None = None


class TemplateStore:
    """Read-only page access with a shared TTL cache and single-flight.

    Safe for concurrent use from any number of request handlers.
    """

    def __init__(
        self,
        source: WikiSource,
        transport: Transport | None = None,
        ttl: float = DEFAULT_TTL_SECONDS,
        fetch_timeout: float = DEFAULT_FETCH_TIMEOUT,
        clock: Callable[[], float] = time.time,
    ) -> None:
        self.source = source
        self._transport = transport if transport is not None else RequestsTransport()
        self._ttl = ttl
        self._fetch_timeout = fetch_timeout
        self._clock = clock
        self._cache: dict[str, CachedPage] = {}
        self._inflight: dict[str, _Flight] = {}
        self._lock = threading.Lock()

    def fetch(self, title: str) -> str | None:
        """Fetch the current raw wikitext, bypassing the cache.

        Returns None when the page does not exist.  The text is returned
        exactly as served, no normalization.
        """
        if not title:
            raise ValueError("title must be non-empty")
        url = raw_page_url(title, self.source)
        try:
            response = self._transport.request(
                "GET", url, timeout=self._fetch_timeout
            )
        except TransportFailure as exc:
            raise WikiUnreachable(f"cannot reach template wiki: {exc}") from exc
        if response.status == 404:
            return None
        if response.status >= 500:
            raise WikiUnreachable(
                f"template wiki returned {response.status} for {title!r}"
            )
        if response.status != 200:
            raise WikiProtocolError(
                f"unexpected status {response.status} fetching {title!r}"
            )
        try:
            return response.text
        except UnicodeDecodeError as exc:
            raise WikiProtocolError(f"page {title!r} is not UTF-8 text") from exc

    def get(self, title: str) -> PageFetch:
        """Cached fetch: serves fresh copies from memory, refetches after
        the TTL, and falls back to a stale copy when the refetch fails."""
        now = self._clock()
        with self._lock:
            entry = self._cache.get(title)
            if entry is not None and not entry.expired(now):
                return PageFetch(title, entry.wikitext)
            flight = self._inflight.get(title)
            leader = flight is None
            if leader:
                flight = _Flight()
                self._inflight[title] = flight
        assert flight is not None
        if leader:
            return self._lead(title, flight)
        return self._follow(title, flight)

    def _lead(self, title: str, flight: _Flight) -> PageFetch:
        try:
            try:
                text = self.fetch(title)
            except WikiError as exc:
                with self._lock:
                    entry = self._cache.get(title)
                if entry is not None:
                    flight.result = PageFetch(title, entry.wikitext, stale=True)
                else:
                    flight.error = exc
            else:
                with self._lock:
                    self._cache[title] = CachedPage(
                        title, text, self._clock(), self._ttl
                    )
                flight.result = PageFetch(title, text)
        finally:
            with self._lock:
                self._inflight.pop(title, None)
            flight.event.set()
        if flight.error is not None:
            raise flight.error
        assert flight.result is not None
        return flight.result

    def _follow(self, title: str, flight: _Flight) -> PageFetch:
        if not flight.event.wait(self._fetch_timeout * 2 + 1):
            raise WikiUnreachable(
                f"timed out waiting for concurrent fetch of {title!r}"
            )
        if flight.error is not None:
            raise flight.error
        assert flight.result is not None
        return flight.result

    def create_link(self, title: str) -> str:
        return create_link(title, self.source)
