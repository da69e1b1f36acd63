"""Synia: a wiki-driven SPARQL dashboard engine.

Aspect pages are defined by templates on ordinary wikipages; URI
fragments pick the page and the entities to interpolate, and the engine
executes the resulting queries against allowlisted SPARQL endpoints and
composes table and graph panels for a browsing frontend.
"""

from .composer import (
    ErrorPanel,
    GraphPanel,
    HeadingPanel,
    MissingTemplatePanel,
    PageComposer,
    Panel,
    RenderedPage,
    RulePanel,
    TablePanel,
    page_to_dict,
)
from .config import SiteConfig, config_from_dict, load_config
from .errors import (
    ArityMismatch,
    ConfigError,
    EndpointError,
    EndpointNotAllowed,
    MalformedFragment,
    MalformedResults,
    MissingSparqlParameter,
    NoEmbedSupport,
    QueryError,
    QueryTimeout,
    SyniaError,
    TemplateError,
    UnknownPlaceholder,
    UnterminatedTemplate,
    WikiProtocolError,
    WikiUnreachable,
    WikitextError,
)
from .fragments import (
    AspectRoute,
    AspectSegment,
    EntityId,
    canonical_fragment,
    parse_fragment,
    template_page_title,
)
from .gateway import (
    EndpointConfig,
    SparqlGateway,
    SparqlResultSet,
    TypedValue,
    embed_url,
    interpolate,
    parse_results_json,
    resolve_endpoint,
    serialize_results,
)
from .templatestore import PageFetch, TemplateStore, WikiSource, create_link
from .wikitext import (
    BrokenTemplate,
    Heading,
    HorizontalRule,
    PageComponent,
    SparqlPanel,
    SparqlTemplate,
    extract_sparql_template,
    parse_page,
    render_sparql_invocation,
    unescape_pipes,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "AspectRoute",
    "AspectSegment",
    "BrokenTemplate",
    "ConfigError",
    "EndpointConfig",
    "EndpointError",
    "EndpointNotAllowed",
    "EntityId",
    "ErrorPanel",
    "GraphPanel",
    "Heading",
    "HeadingPanel",
    "HorizontalRule",
    "MalformedFragment",
    "MalformedResults",
    "MissingSparqlParameter",
    "MissingTemplatePanel",
    "NoEmbedSupport",
    "PageComponent",
    "PageComposer",
    "PageFetch",
    "Panel",
    "QueryError",
    "QueryTimeout",
    "RenderedPage",
    "RulePanel",
    "SiteConfig",
    "SparqlGateway",
    "SparqlPanel",
    "SparqlResultSet",
    "SparqlTemplate",
    "SyniaError",
    "TablePanel",
    "TemplateError",
    "TemplateStore",
    "TypedValue",
    "UnknownPlaceholder",
    "UnterminatedTemplate",
    "WikiProtocolError",
    "WikiSource",
    "WikiUnreachable",
    "WikitextError",
    "canonical_fragment",
    "config_from_dict",
    "create_link",
    "embed_url",
    "extract_sparql_template",
    "interpolate",
    "load_config",
    "page_to_dict",
    "parse_fragment",
    "parse_page",
    "parse_results_json",
    "render_sparql_invocation",
    "resolve_endpoint",
    "serialize_results",
    "template_page_title",
    "unescape_pipes",
]
