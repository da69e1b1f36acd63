"""Identifier interpolation, endpoint allowlisting, and query execution.

Templates come from an openly editable wiki, so the endpoint a template
names is never trusted: it must match the configured allowlist exactly
(after trailing-slash normalization) or the query is refused before any
network traffic happens.
"""

from __future__ import annotations

import json
import logging
import re
import threading
from dataclasses import dataclass, field
from typing import Sequence
from urllib.parse import quote, urlencode, urlsplit

from .errors import (
    ArityMismatch,
    EndpointError,
    EndpointNotAllowed,
    MalformedResults,
    NoEmbedSupport,
    QueryTimeout,
    UnknownPlaceholder,
)
from .fragments import EntityId
from .transport import RequestsTransport, Transport, TransportFailure
from .wikitext import SparqlTemplate

logger = logging.getLogger(__name__)

RESULTS_JSON = "application/sparql-results+json"
DEFAULT_QUERY_TIMEOUT = 30.0
DEFAULT_PER_ENDPOINT_LIMIT = 4
# above this many bytes of encoded query, switch from GET to POST
GET_MAX_ENCODED_BYTES = 2000

_PLACEHOLDER_RE = re.compile(r"\{(qs|[a-z][0-9]*)\}")


@dataclass(frozen=True)
class EndpointConfig:
    """One allowed SPARQL endpoint plus its embed page for graph panels."""

    query_url: str
    label: str
    embed_url: str | None = None

    def __post_init__(self) -> None:
        for url in (self.query_url, self.embed_url):
            if url is None:
                continue
            parts = urlsplit(url)
            if parts.scheme not in ("http", "https") or not parts.netloc:
                raise ValueError(f"endpoint URL must be absolute http(s): {url!r}")

    @property
    def host(self) -> str:
        return urlsplit(self.query_url).hostname or ""


@dataclass(frozen=True)
class TypedValue:
    """One RDF term from a results binding."""

    kind: str  # "iri" | "literal" | "bnode"
    value: str
    language: str | None = None
    datatype: str | None = None


@dataclass(frozen=True)
class SparqlResultSet:
    variables: tuple[str, ...]
    rows: tuple[dict[str, TypedValue], ...] = ()


def interpolate(body: str, segment_ids: Sequence[Sequence[EntityId]]) -> str:
    """Replace identifier placeholders in a template body.

    ``{q}`` (same as ``{q1}``) and ``{qN}`` take the N-th identifier in
    segment order, counting across segments; ``{l}``/``{lN}`` are aliases
    that work the same way.  ``{qs}`` expands the first segment's
    identifiers to ``wd:ID`` terms joined by spaces, for VALUES clauses.
    """
    flat: list[EntityId] = [i for segment in segment_ids for i in segment]

    matches = list(_PLACEHOLDER_RE.finditer(body))
    if not matches:
        if flat:
            logger.warning(
                "route supplies %d identifier(s) but the template body has "
                "no placeholders",
                len(flat),
            )
        return body

    def replacement(match: re.Match[str]) -> str:
        token = match.group(1)
        if token == "qs":
            first = list(segment_ids[0]) if segment_ids else []
            if not first:
                raise ArityMismatch("{qs} used but the route carries no identifiers")
            return " ".join(f"wd:{i}" for i in first)
        letter, digits = token[0], token[1:]
        if letter not in ("q", "l"):
            raise UnknownPlaceholder(f"unknown placeholder {{{token}}}")
        index = int(digits) if digits else 1
        if index < 1:
            raise ArityMismatch(f"placeholder {{{token}}} index must be >= 1")
        if index > len(flat):
            raise ArityMismatch(
                f"placeholder {{{token}}} needs identifier {index} but the "
                f"route supplies {len(flat)}"
            )
        return str(flat[index - 1])

    return _PLACEHOLDER_RE.sub(replacement, body)


def _normalize_url(url: str) -> str:
    return url.rstrip("/")


def resolve_endpoint(
    template: SparqlTemplate,
    default: EndpointConfig,
    allowlist: Sequence[EndpointConfig],
) -> EndpointConfig:
    """Pick the endpoint for a template, enforcing the allowlist.

    Raises :class:`EndpointNotAllowed` for overrides that match no
    allowlist entry; callers must not contact the override in that case.
    """
    override = template.endpoint_override
    if override is None:
        return default
    wanted = _normalize_url(override)
    for endpoint in allowlist:
        if _normalize_url(endpoint.query_url) == wanted:
            return endpoint
    raise EndpointNotAllowed(urlsplit(override).hostname or override)


def parse_results_json(data: bytes | str) -> SparqlResultSet:
    """Decode a SPARQL 1.1 query results JSON document."""
    try:
        document = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedResults(f"not a JSON document: {exc}") from exc
    if not isinstance(document, dict):
        raise MalformedResults("results document must be a JSON object")
    head = document.get("head")
    if not isinstance(head, dict) or not isinstance(head.get("vars"), list):
        raise MalformedResults("missing head.vars")
    variables = tuple(str(v) for v in head["vars"])
    results = document.get("results")
    if not isinstance(results, dict) or not isinstance(
        results.get("bindings"), list
    ):
        raise MalformedResults("missing results.bindings")

    rows: list[dict[str, TypedValue]] = []
    for binding in results["bindings"]:
        if not isinstance(binding, dict):
            raise MalformedResults("binding rows must be objects")
        row: dict[str, TypedValue] = {}
        for name, term in binding.items():
            if name not in variables:
                raise MalformedResults(f"binding for undeclared variable {name!r}")
            row[name] = _parse_term(name, term)
        rows.append(row)
    return SparqlResultSet(variables=variables, rows=tuple(rows))


def _parse_term(name: str, term: object) -> TypedValue:
    if not isinstance(term, dict) or "type" not in term or "value" not in term:
        raise MalformedResults(f"malformed term for variable {name!r}")
    kind = term["type"]
    value = str(term["value"])
    if kind == "uri":
        return TypedValue("iri", value)
    if kind in ("literal", "typed-literal"):
        language = term.get("xml:lang")
        datatype = term.get("datatype")
        return TypedValue(
            "literal",
            value,
            language=str(language) if language is not None else None,
            datatype=str(datatype) if datatype is not None else None,
        )
    if kind == "bnode":
        return TypedValue("bnode", value)
    raise MalformedResults(f"unknown term type {kind!r} for variable {name!r}")


def serialize_results(resultset: SparqlResultSet) -> dict:
    """Encode a result set back into the results JSON wire format."""
    bindings = []
    for row in resultset.rows:
        binding: dict[str, dict[str, str]] = {}
        for name, term in row.items():
            if term.kind == "iri":
                binding[name] = {"type": "uri", "value": term.value}
            elif term.kind == "bnode":
                binding[name] = {"type": "bnode", "value": term.value}
            else:
                encoded = {"type": "literal", "value": term.value}
                if term.language is not None:
                    encoded["xml:lang"] = term.language
                if term.datatype is not None:
                    encoded["datatype"] = term.datatype
                binding[name] = encoded
        bindings.append(binding)
    return {
        "head": {"vars": list(resultset.variables)},
        "results": {"bindings": bindings},
    }


def embed_url(endpoint: EndpointConfig, sparql: str) -> str:
    """URL of the query service's embed page with the query in the hash."""
    if not endpoint.embed_url:
        raise NoEmbedSupport(f"endpoint {endpoint.label!r} has no embed page")
    return endpoint.embed_url + "#" + quote(sparql, safe="")


class SparqlGateway:
    """Executes queries against already-resolved endpoints.

    Stateless apart from the transport and a per-endpoint semaphore that
    caps concurrent requests to be polite to public services.
    """

    def __init__(
        self,
        transport: Transport | None = None,
        timeout: float = DEFAULT_QUERY_TIMEOUT,
        per_endpoint_limit: int = DEFAULT_PER_ENDPOINT_LIMIT,
    ) -> None:
        self._transport = transport if transport is not None else RequestsTransport()
        self._timeout = timeout
        self._limit = per_endpoint_limit
        self._semaphores: dict[str, threading.BoundedSemaphore] = {}
        self._lock = threading.Lock()

    def _semaphore(self, url: str) -> threading.BoundedSemaphore:
        with self._lock:
            semaphore = self._semaphores.get(url)
            if semaphore is None:
                semaphore = threading.BoundedSemaphore(self._limit)
                self._semaphores[url] = semaphore
            return semaphore

    def execute(
        self,
        sparql: str,
        endpoint: EndpointConfig,
        timeout: float | None = None,
    ) -> SparqlResultSet:
        """Send a query over the SPARQL protocol and decode the results.

        GET for short queries, form-encoded POST above
        ``GET_MAX_ENCODED_BYTES`` of encoded query.
        """
        timeout = self._timeout if timeout is None else timeout
        encoded = urlencode({"query": sparql})
        headers = {"Accept": RESULTS_JSON}
        semaphore = self._semaphore(endpoint.query_url)
        with semaphore:
            try:
                if len(encoded) <= GET_MAX_ENCODED_BYTES:
                    response = self._transport.request(
                        "GET",
                        f"{endpoint.query_url}?{encoded}",
                        headers=headers,
                        timeout=timeout,
                    )
                else:
                    headers["Content-Type"] = "application/x-www-form-urlencoded"
                    response = self._transport.request(
                        "POST",
                        endpoint.query_url,
                        body=encoded.encode("ascii"),
                        headers=headers,
                        timeout=timeout,
                    )
            except TransportFailure as exc:
                if exc.timed_out:
                    raise QueryTimeout(
                        f"{endpoint.label}: no answer within {timeout:g}s"
                    ) from exc
                raise EndpointError(0, str(exc)) from exc
        if response.status != 200:
            snippet = response.body[:200].decode("utf-8", errors="replace")
            raise EndpointError(response.status, snippet)
        return parse_results_json(response.body)
