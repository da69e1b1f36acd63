"""Command line interface: serve the API, render pages offline, and lint
template pages for wiki editors."""

from __future__ import annotations

import html
import json
import re
import sys

import click

from .composer import (
    ErrorPanel,
    GraphPanel,
    HeadingPanel,
    MissingTemplatePanel,
    PageComposer,
    RenderedPage,
    RulePanel,
    TablePanel,
    page_to_dict,
)
from .config import CONFIG_ENV_VAR, SiteConfig, load_config
from .errors import (
    EndpointNotAllowed,
    MalformedFragment,
    WikiError,
    WikiUnreachable,
)
from .gateway import SparqlGateway, resolve_endpoint
from .templatestore import TemplateStore
from .wikitext import (
    BrokenTemplate,
    Heading,
    HorizontalRule,
    SparqlPanel,
    parse_page,
)

EXIT_MALFORMED_FRAGMENT = 2
EXIT_WIKI_UNREACHABLE = 3
EXIT_PAGE_MISSING = 4

_PLACEHOLDER_SCAN_RE = re.compile(r"\{(qs|[a-z][0-9]*)\}")

config_option = click.option(
    "--config",
    "config_path",
    envvar=CONFIG_ENV_VAR,
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help=f"Path to the site config (or set {CONFIG_ENV_VAR}).",
)


def _composer(config: SiteConfig) -> PageComposer:
    store = TemplateStore(config.wiki, ttl=config.cache_ttl_seconds)
    gateway = SparqlGateway(
        timeout=config.query_timeout_seconds,
        per_endpoint_limit=config.per_endpoint_limit,
    )
    return PageComposer(config, store, gateway)


@click.group()
def main() -> None:
    """Wiki-driven SPARQL dashboard engine."""


@main.command()
@config_option
@click.option("--static-dir", type=click.Path(exists=True, file_okay=False))
def serve(config_path: str, static_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    app = create_app(config, static_dir=static_dir)
    uvicorn.run(app, host=config.listen_host, port=config.listen_port)


@main.command()
@click.argument("fragment")
@config_option
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "html"]),
    default="json",
    show_default=True,
)
def render(fragment: str, config_path: str, output_format: str) -> None:
    """Render the page for FRAGMENT and print it to stdout."""
    config = load_config(config_path)
    try:
        page = _composer(config).compose(fragment)
    except MalformedFragment as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_MALFORMED_FRAGMENT)
    except WikiError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_WIKI_UNREACHABLE)
    if output_format == "json":
        click.echo(json.dumps(page_to_dict(page), indent=2, sort_keys=True))
    else:
        click.echo(page_to_html(page))


@main.command("check-template")
@click.argument("title")
@config_option
def check_template(title: str, config_path: str) -> None:
    """Lint the template page TITLE: list components and warn on
    questionable placeholders, endpoints, or broken templates."""
    config = load_config(config_path)
    store = TemplateStore(config.wiki, ttl=config.cache_ttl_seconds)
    try:
        wikitext = store.fetch(title)
    except WikiUnreachable as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_WIKI_UNREACHABLE)
    if wikitext is None:
        click.echo(f"error: page {title!r} does not exist", err=True)
        click.echo(f"create it at: {store.create_link(title)}", err=True)
        sys.exit(EXIT_PAGE_MISSING)

    components = parse_page(wikitext)
    warnings: list[str] = []
    click.echo(f"page: {title}")
    click.echo(f"components: {len(components)}")
    for number, component in enumerate(components, start=1):
        if isinstance(component, Heading):
            click.echo(f"  {number}. heading (level {component.level}): {component.text}")
        elif isinstance(component, HorizontalRule):
            click.echo(f"  {number}. horizontal rule")
        elif isinstance(component, BrokenTemplate):
            click.echo(f"  {number}. broken template")
            warnings.append(f"component {number}: {component.message}")
        elif isinstance(component, SparqlPanel):
            template = component.template
            placeholders = sorted(
                {m.group(0) for m in _PLACEHOLDER_SCAN_RE.finditer(template.body)}
            )
            view = template.view_directive or "table"
            endpoint_note = template.endpoint_override or "default"
            click.echo(
                f"  {number}. sparql panel: view={view}, endpoint={endpoint_note}, "
                f"placeholders={' '.join(placeholders) or 'none'}"
            )
            for token in placeholders:
                letter = token[1]
                if letter not in ("q", "l"):
                    warnings.append(
                        f"component {number}: unknown placeholder {token}"
                    )
            try:
                resolve_endpoint(template, config.default_endpoint, config.allowlist)
            except EndpointNotAllowed as exc:
                warnings.append(f"component {number}: {exc}")
    if warnings:
        click.echo("warnings:")
        for warning in warnings:
            click.echo(f"  - {warning}")
    else:
        click.echo("no warnings")


def page_to_html(page: RenderedPage) -> str:
    """Minimal standalone HTML rendering, for debugging from the CLI."""
    parts = [
        "<!doctype html>",
        "<html><head><meta charset='utf-8'>",
        f"<title>{html.escape(page.template_title)}</title></head><body>",
    ]
    for panel in page.panels:
        if isinstance(panel, HeadingPanel):
            parts.append(
                f"<h{panel.level}>{html.escape(panel.text)}</h{panel.level}>"
            )
        elif isinstance(panel, RulePanel):
            parts.append("<hr>")
        elif isinstance(panel, TablePanel):
            header = "".join(
                f"<th>{html.escape(v)}</th>" for v in panel.resultset.variables
            )
            body_rows = []
            for row in panel.resultset.rows:
                cells = []
                for variable in panel.resultset.variables:
                    term = row.get(variable)
                    cells.append(
                        f"<td>{html.escape(term.value) if term else ''}</td>"
                    )
                body_rows.append("<tr>" + "".join(cells) + "</tr>")
            parts.append(
                f"<table><thead><tr>{header}</tr></thead>"
                f"<tbody>{''.join(body_rows)}</tbody></table>"
            )
        elif isinstance(panel, GraphPanel):
            src = html.escape(panel.iframe_url, quote=True)
            parts.append(
                f'<iframe src="{src}" sandbox="allow-scripts allow-same-origin">'
                "</iframe>"
            )
        elif isinstance(panel, ErrorPanel):
            parts.append(
                f"<div class='error {html.escape(panel.kind)}'>"
                f"{html.escape(panel.message)}</div>"
            )
        elif isinstance(panel, MissingTemplatePanel):
            href = html.escape(panel.create_url, quote=True)
            parts.append(
                f"<div class='missing'>Template {html.escape(panel.title)} "
                f'does not exist. <a href="{href}">Create it</a>.</div>'
            )
    parts.append("</body></html>")
    return "\n".join(parts)


if __name__ == "__main__":
    main()
