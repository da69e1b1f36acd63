"""Shared fixtures: a recording mock transport, canned wiki pages and
SPARQL results, and real local HTTP servers for end-to-end runs."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlsplit

import pytest

from synia.config import SiteConfig
from synia.gateway import EndpointConfig
from synia.templatestore import WikiSource
from synia.transport import HttpResponse, Transport

# ---------------------------------------------------------------------------
# In-process transport
# ---------------------------------------------------------------------------


class MockTransport(Transport):
    """Routes requests to canned responders and records every call.

    Any request that matches no registered prefix fails the test: that is
    the leak-freedom tripwire.
    """

    def __init__(self) -> None:
        self.routes: list[tuple[str, object]] = []
        self.calls: list[tuple[str, str]] = []

    def add(self, prefix: str, responder) -> None:
        self.routes.append((prefix, responder))

    def request(self, method, url, *, body=None, headers=None, timeout=None):
        self.calls.append((method, url))
        for prefix, responder in self.routes:
            if url.startswith(prefix):
                return responder(method=method, url=url, body=body)
        raise AssertionError(f"unexpected request: {method} {url}")

    def hosts_contacted(self) -> set[str]:
        return {urlsplit(url).hostname or "" for _, url in self.calls}

    def requests_to(self, host: str) -> list[tuple[str, str]]:
        return [
            (method, url)
            for method, url in self.calls
            if urlsplit(url).hostname == host
        ]


def wiki_responder(pages: dict[str, str]):
    """Responder implementing ``index.php?title=<t>&action=raw``."""

    def respond(method, url, body):
        query = parse_qs(urlsplit(url).query)
        title = unquote(query.get("title", [""])[0]).replace("_", " ")
        if query.get("action") != ["raw"]:
            return HttpResponse(400, b"bad action")
        text = pages.get(title)
        if text is None:
            return HttpResponse(404, b"page does not exist")
        return HttpResponse(200, text.encode("utf-8"))

    return respond


def sparql_responder(document: dict):
    def respond(method, url, body):
        return HttpResponse(200, json.dumps(document).encode("utf-8"))

    return respond


def failing_responder(exc: Exception):
    def respond(method, url, body):
        raise exc

    return respond


# ---------------------------------------------------------------------------
# Canned fixture data
# ---------------------------------------------------------------------------

WIKI_BASE = "https://wiki.test/w"
NAMESPACE = "Wikidata:Synia:"
QUERY_URL = "https://query.test/sparql"
EMBED_URL = "https://query.test/embed.html"
SECOND_QUERY_URL = "https://food.test/query/sparql"
SECOND_EMBED_URL = "https://food.test/query/embed.html"

ACTOR_TABLE_QUERY = """\
SELECT ?work ?workLabel ?roles WHERE {
  ?work wdt:P161 wd:{q} .
}"""

ACTOR_GRAPH_QUERY = """\
#defaultView:BarChart
SELECT ?year (COUNT(?work) AS ?works) WHERE {
  ?work wdt:P161 wd:{q} .
}
GROUP BY ?year"""

ACTOR_PAGE = f"""\
== Movies ==
{{{{SPARQL|sparql=
{ACTOR_TABLE_QUERY}
}}}}
{{{{SPARQL|sparql=
{ACTOR_GRAPH_QUERY}
}}}}
"""

CANNED_RESULTS = {
    "head": {"vars": ["work", "workLabel", "roles"]},
    "results": {
        "bindings": [
            {
                "work": {
                    "type": "uri",
                    "value": "http://www.wikidata.org/entity/Q595",
                },
                "workLabel": {
                    "type": "literal",
                    "value": "Movie One",
                    "xml:lang": "en",
                },
                "roles": {
                    "type": "literal",
                    "value": "3",
                    "datatype": "http://www.w3.org/2001/XMLSchema#integer",
                },
            },
            {
                "work": {
                    "type": "uri",
                    "value": "http://www.wikidata.org/entity/Q642",
                },
                "workLabel": {
                    "type": "literal",
                    "value": "Movie Two",
                    "xml:lang": "en",
                },
                "roles": {
                    "type": "literal",
                    "value": "1",
                    "datatype": "http://www.w3.org/2001/XMLSchema#integer",
                },
            },
        ]
    },
}


def make_config(
    wiki_base: str = WIKI_BASE,
    namespace: str = NAMESPACE,
    query_url: str = QUERY_URL,
    embed_url: str | None = EMBED_URL,
    extra_endpoints: tuple[EndpointConfig, ...] = (),
    **overrides,
) -> SiteConfig:
    default = EndpointConfig(query_url=query_url, label="default", embed_url=embed_url)
    return SiteConfig(
        wiki=WikiSource(base_url=wiki_base, namespace_prefix=namespace),
        default_endpoint=default,
        allowlist=(default,) + extra_endpoints,
        **overrides,
    )


@pytest.fixture
def transport() -> MockTransport:
    return MockTransport()


@pytest.fixture
def site_config() -> SiteConfig:
    return make_config()


# ---------------------------------------------------------------------------
# Real local HTTP servers (for CLI and service end-to-end tests)
# ---------------------------------------------------------------------------


class LocalServer:
    """A tiny threaded HTTP server with swappable behavior."""

    def __init__(self, handler_class) -> None:
        self.server = ThreadingHTTPServer(("127.0.0.1", 0), handler_class)
        self.server.daemon_threads = True
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        host, port = self.server.server_address[:2]
        return f"http://{host}:{port}"

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()


class _QuietHandler(BaseHTTPRequestHandler):
    def log_message(self, *args) -> None:
        pass

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class WikiHandler(_QuietHandler):
    pages: dict[str, str] = {}

    def do_GET(self) -> None:
        query = parse_qs(urlsplit(self.path).query)
        title = unquote(query.get("title", [""])[0]).replace("_", " ")
        text = self.pages.get(title)
        if query.get("action") != ["raw"]:
            self._send(400, b"bad action", "text/plain")
        elif text is None:
            self._send(404, b"page does not exist", "text/plain")
        else:
            self._send(200, text.encode("utf-8"), "text/x-wiki; charset=UTF-8")


class SparqlHandler(_QuietHandler):
    document: dict = CANNED_RESULTS

    def _respond(self) -> None:
        body = json.dumps(self.document).encode("utf-8")
        self._send(200, body, "application/sparql-results+json")

    def do_GET(self) -> None:
        self._respond()

    def do_POST(self) -> None:
        self._respond()


@pytest.fixture
def local_wiki():
    class Handler(WikiHandler):
        pages = {}

    server = LocalServer(Handler)
    server.pages = Handler.pages
    yield server
    server.stop()


@pytest.fixture
def local_endpoint():
    class Handler(SparqlHandler):
        document = CANNED_RESULTS

    server = LocalServer(Handler)
    yield server
    server.stop()


def write_config_file(
    tmp_path,
    wiki_base: str,
    query_url: str,
    embed_url: str,
    namespace: str = NAMESPACE,
    name: str = "site.json",
) -> str:
    config = {
        "wiki": {"base_url": wiki_base, "namespace_prefix": namespace},
        "default_endpoint": {
            "query_url": query_url,
            "embed_url": embed_url,
            "label": "fixture endpoint",
        },
        "allowlist": [
            {
                "query_url": query_url,
                "embed_url": embed_url,
                "label": "fixture endpoint",
            }
        ],
        "cache_ttl_seconds": 300,
        "query_timeout_seconds": 10,
        "listen_address": "127.0.0.1:8080",
    }
    path = tmp_path / name
    path.write_text(json.dumps(config, indent=2), encoding="utf-8")
    return str(path)
