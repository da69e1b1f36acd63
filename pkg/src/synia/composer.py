"""Composing rendered pages from routes.

The pipeline: parse the fragment, derive the template page title, fetch
and parse the wikipage, then turn every component into exactly one panel.
SPARQL panels run concurrently (bounded) but are emitted in wikipage
order, and a failure in one panel never disturbs its neighbours.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Union
from urllib.parse import urlsplit

from .config import SiteConfig
from .errors import EndpointNotAllowed, NoEmbedSupport, QueryError, TemplateError
from .fragments import (
    AspectRoute,
    AspectSegment,
    EntityId,
    canonical_fragment,
    parse_fragment,
    template_page_title,
)
from .gateway import (
    SparqlGateway,
    SparqlResultSet,
    embed_url,
    interpolate,
    resolve_endpoint,
)
from .templatestore import TemplateStore
from .wikitext import (
    BrokenTemplate,
    Heading,
    HorizontalRule,
    SparqlPanel,
    SparqlTemplate,
    parse_page,
)

MAX_PANEL_CONCURRENCY = 4


@dataclass(frozen=True)
class HeadingPanel:
    level: int
    text: str


@dataclass(frozen=True)
class RulePanel:
    pass


@dataclass(frozen=True)
class TablePanel:
    resultset: SparqlResultSet
    source_sparql: str
    # (row index, variable) -> in-app fragment for entities on the
    # template wiki's own Wikibase, enabling the faceted browsing loop
    local_links: dict[tuple[int, str], str] = field(default_factory=dict)


@dataclass(frozen=True)
class GraphPanel:
    iframe_url: str
    source_sparql: str


@dataclass(frozen=True)
class ErrorPanel:
    kind: str  # "security" | "template-error" | "query-error"
    message: str


@dataclass(frozen=True)
class MissingTemplatePanel:
    title: str
    create_url: str


Panel = Union[
    HeadingPanel, RulePanel, TablePanel, GraphPanel, ErrorPanel, MissingTemplatePanel
]


@dataclass(frozen=True)
class RenderedPage:
    route: AspectRoute
    template_title: str
    panels: tuple[Panel, ...]
    generated_at: datetime
    stale: bool = False


_ID_TAIL_RE = re.compile(r"/([QL][1-9][0-9]*)$")


class PageComposer:
    """Orchestrates route -> template -> parse -> interpolate -> execute."""

    def __init__(
        self,
        config: SiteConfig,
        store: TemplateStore,
        gateway: SparqlGateway,
        max_concurrency: int = MAX_PANEL_CONCURRENCY,
    ) -> None:
        self._config = config
        self._store = store
        self._gateway = gateway
        self._max_concurrency = max_concurrency

    def compose(self, fragment: str) -> RenderedPage:
        """Render the page for a fragment.

        MalformedFragment and WikiUnreachable propagate (page-level
        errors); everything else surfaces as panels.
        """
        route = parse_fragment(fragment)
        title = template_page_title(route, self._config.wiki.namespace_prefix)
        fetched = self._store.get(title)
        if fetched.missing:
            panels: tuple[Panel, ...] = (
                MissingTemplatePanel(title, self._store.create_link(title)),
            )
        else:
            panels = self._panels_for_page(fetched.wikitext or "", route)
        return RenderedPage(
            route=route,
            template_title=title,
            panels=panels,
            generated_at=datetime.now(timezone.utc),
            stale=fetched.stale,
        )

    def _panels_for_page(
        self, wikitext: str, route: AspectRoute
    ) -> tuple[Panel, ...]:
        components = parse_page(wikitext)
        panels: list[Panel | None] = [None] * len(components)
        queries: list[tuple[int, SparqlTemplate]] = []
        for index, component in enumerate(components):
            if isinstance(component, Heading):
                panels[index] = HeadingPanel(component.level, component.text)
            elif isinstance(component, HorizontalRule):
                panels[index] = RulePanel()
            elif isinstance(component, BrokenTemplate):
                panels[index] = ErrorPanel("template-error", component.message)
            elif isinstance(component, SparqlPanel):
                queries.append((index, component.template))

        if len(queries) == 1:
            index, template = queries[0]
            panels[index] = self.panel_for_sparql(template, route)
        elif queries:
            workers = min(self._max_concurrency, len(queries))
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = pool.map(
                    lambda item: (item[0], self.panel_for_sparql(item[1], route)),
                    queries,
                )
                for index, panel in results:
                    panels[index] = panel
        return tuple(p for p in panels if p is not None)

    def panel_for_sparql(self, template: SparqlTemplate, route: AspectRoute) -> Panel:
        """Build exactly one panel from a SPARQL template; failures are
        embedded as error panels, never raised."""
        try:
            endpoint = resolve_endpoint(
                template, self._config.default_endpoint, self._config.allowlist
            )
        except EndpointNotAllowed as exc:
            return ErrorPanel("security", str(exc))
        try:
            sparql = interpolate(template.body, route.segment_ids())
        except TemplateError as exc:
            return ErrorPanel("template-error", str(exc))
        if template.view_directive is not None:
            try:
                return GraphPanel(embed_url(endpoint, sparql), sparql)
            except NoEmbedSupport as exc:
                return ErrorPanel("template-error", str(exc))
        try:
            resultset = self._gateway.execute(
                sparql, endpoint, timeout=self._config.query_timeout_seconds
            )
        except QueryError as exc:
            return ErrorPanel("query-error", f"{endpoint.label}: {exc}")
        links = self._local_links(resultset, route)
        return TablePanel(resultset, sparql, links)

    def _local_links(
        self, resultset: SparqlResultSet, route: AspectRoute
    ) -> dict[tuple[int, str], str]:
        """Fragments for IRI cells that point at the template wiki's own
        entities, so the webapp can keep navigation in-app.  The target
        aspect is the route's last aspect name (heuristic)."""
        if not route.segments:
            return {}
        aspect = route.segments[-1].aspect
        wiki_host = self._config.wiki.host
        links: dict[tuple[int, str], str] = {}
        for row_index, row in enumerate(resultset.rows):
            for name, term in row.items():
                if term.kind != "iri":
                    continue
                parts = urlsplit(term.value)
                if parts.hostname != wiki_host:
                    continue
                match = _ID_TAIL_RE.search(parts.path)
                if match is None:
                    continue
                entity = EntityId.parse(match.group(1))
                links[(row_index, name)] = canonical_fragment(
                    AspectRoute((AspectSegment(aspect, (entity,)),))
                )
        return links


def page_to_dict(page: RenderedPage) -> dict:
    """Serialize a rendered page into the document served to clients."""
    return {
        "fragment": canonical_fragment(page.route),
        "route": {
            "kind": page.route.kind,
            "segments": [
                {"aspect": s.aspect, "ids": [str(i) for i in s.ids]}
                for s in page.route.segments
            ],
        },
        "template_title": page.template_title,
        "generated_at": page.generated_at.isoformat(),
        "stale": page.stale,
        "panels": [_panel_to_dict(panel) for panel in page.panels],
    }


def _panel_to_dict(panel: Panel) -> dict:
    if isinstance(panel, HeadingPanel):
        return {"type": "heading", "level": panel.level, "text": panel.text}
    if isinstance(panel, RulePanel):
        return {"type": "rule"}
    if isinstance(panel, TablePanel):
        rows = []
        for row_index, row in enumerate(panel.resultset.rows):
            cells: dict[str, dict] = {}
            for name, term in row.items():
                cell: dict = {"type": term.kind, "value": term.value}
                if term.language is not None:
                    cell["language"] = term.language
                if term.datatype is not None:
                    cell["datatype"] = term.datatype
                fragment = panel.local_links.get((row_index, name))
                if fragment is not None:
                    cell["local_fragment"] = fragment
                cells[name] = cell
            rows.append(cells)
        return {
            "type": "table",
            "variables": list(panel.resultset.variables),
            "rows": rows,
            "sparql": panel.source_sparql,
        }
    if isinstance(panel, GraphPanel):
        return {
            "type": "graph",
            "iframe_url": panel.iframe_url,
            "sparql": panel.source_sparql,
        }
    if isinstance(panel, ErrorPanel):
        return {"type": "error", "kind": panel.kind, "message": panel.message}
    if isinstance(panel, MissingTemplatePanel):
        return {
            "type": "missing-template",
            "title": panel.title,
            "create_url": panel.create_url,
        }
    raise TypeError(f"unknown panel type {type(panel).__name__}")
