"""Exception types shared across the engine.

Wiki content is untrusted input, so almost every failure here is an
expected runtime condition rather than a bug: callers turn most of these
into error panels or HTTP error bodies instead of letting them propagate.
"""

from __future__ import annotations


class SyniaError(Exception):
    """Base class for all engine errors."""


class MalformedFragment(SyniaError):
    """The URI fragment does not follow the aspect/identifier grammar."""


class WikitextError(SyniaError):
    """Base for problems with a single wikitext component."""


class UnterminatedTemplate(WikitextError):
    """A ``{{SPARQL`` invocation with no balanced closing ``}}``."""


class MissingSparqlParameter(WikitextError):
    """A ``{{SPARQL}}`` invocation without a usable ``sparql=`` parameter."""


class InvalidEndpointOverride(WikitextError):
    """An ``endpoint=`` parameter that is not an absolute http(s) URL."""


class WikiError(SyniaError):
    """Base for failures while talking to the template wiki."""


class WikiUnreachable(WikiError):
    """Network failure or HTTP 5xx from the template wiki."""


class WikiProtocolError(WikiError):
    """The wiki answered with an unexpected status or payload."""


class TemplateError(SyniaError):
    """Base for identifier interpolation problems."""


class ArityMismatch(TemplateError):
    """A placeholder index exceeds the identifiers supplied by the route."""


class UnknownPlaceholder(TemplateError):
    """A token that looks like a placeholder but is not a q/l placeholder."""


class EndpointNotAllowed(SyniaError):
    """An endpoint override that is not on the configured allowlist.

    The offending URL must never be contacted; carriers of this error
    should avoid echoing the full URL where it could become a link.
    """

    def __init__(self, host: str) -> None:
        super().__init__(f"endpoint host {host!r} is not on the allowlist")
        self.host = host


class QueryError(SyniaError):
    """Base for SPARQL execution failures."""


class QueryTimeout(QueryError):
    """The endpoint did not answer within the configured timeout."""


class EndpointError(QueryError):
    """The endpoint answered with a non-success status (0 = transport)."""

    def __init__(self, status: int, message: str) -> None:
        super().__init__(f"endpoint returned {status}: {message}")
        self.status = status
        self.message = message


class MalformedResults(QueryError):
    """The response is not a SPARQL results JSON document."""


class NoEmbedSupport(SyniaError):
    """The endpoint has no embed page configured for graph panels."""


class ConfigError(SyniaError):
    """The site configuration file is missing keys or fails validation."""
