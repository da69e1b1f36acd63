"""Wikitext component parsing.

Template pages use a deliberately small grammar: MediaWiki headings up to
level three, horizontal rules, and ``{{SPARQL}}`` template invocations.
Everything else on the page is presentation for wiki readers and is
skipped.  Headings and rules are plain line regexes; template extraction
uses a depth-tracking scanner because SPARQL bodies are full of braces,
pipes, and ``=`` characters that defeat naive splitting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Union
from urllib.parse import urlsplit

from .errors import (
    InvalidEndpointOverride,
    MissingSparqlParameter,
    WikitextError,
)

_HEADING_RE = re.compile(r"^(=+)(.*?)(=+)\s*$")
_RULE_RE = re.compile(r"^-{4,}\s*$")
# Template names are case sensitive after the first letter in MediaWiki.
_OPEN_RE = re.compile(r"\{\{\s*[Ss]PARQL(?![0-9A-Za-z_])")
_VIEW_RE = re.compile(r"^\s*#defaultView:\s*([A-Za-z][A-Za-z0-9]*)", re.MULTILINE)

PIPE_ESCAPE = "{{!}}"


def unescape_pipes(text: str) -> str:
    """Replace each ``{{!}}`` escape with a literal ``|``."""
    return text.replace(PIPE_ESCAPE, "|")


def _is_http_url(url: str) -> bool:
    parts = urlsplit(url)
    return parts.scheme in ("http", "https") and bool(parts.netloc)


@dataclass(frozen=True)
class SparqlTemplate:
    """SPARQL text with placeholders, plus optional endpoint override.

    ``extras`` keeps unrecognized template parameters so future wiki-side
    conventions survive a round trip; rendering ignores them.
    """

    body: str
    endpoint_override: str | None = None
    extras: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.body.strip():
            raise ValueError("template body must be non-empty")
        if self.endpoint_override is not None and not _is_http_url(
            self.endpoint_override
        ):
            raise ValueError(
                f"endpoint override must be an absolute http(s) URL, "
                f"got {self.endpoint_override!r}"
            )

    @property
    def view_directive(self) -> str | None:
        """Token of a ``#defaultView:`` line in the body, if any."""
        match = _VIEW_RE.search(self.body)
        return match.group(1) if match else None


@dataclass(frozen=True)
class Heading:
    level: int
    text: str


@dataclass(frozen=True)
class HorizontalRule:
    pass


@dataclass(frozen=True)
class SparqlPanel:
    template: SparqlTemplate


@dataclass(frozen=True)
class BrokenTemplate:
    """A ``{{SPARQL`` invocation that could not be used; page parsing
    continues and the renderer shows this as an error panel."""

    message: str
    source: str = ""


PageComponent = Union[Heading, HorizontalRule, SparqlPanel, BrokenTemplate]


def _brace_run(text: str, i: int) -> int:
    char = text[i]
    run = 1
    while i + run < len(text) and text[i + run] == char:
        run += 1
    return run


def _scan_invocation(text: str, start: int) -> tuple[int, bool]:
    """Find the end of a template invocation opened at ``start``.

    Returns ``(end, balanced)``.  Only ``{{``/``}}`` digraphs change
    nesting depth; single braces from SPARQL group patterns are content.
    When a closing run has exactly one brace more than needed, that odd
    leading brace belongs to the content, so a body ending in ``}`` keeps
    its brace across ``}}}``.  Runs with surplus pairs close on their
    first braces and leave the rest to the surrounding page.
    """
    depth = 0
    i = start
    n = len(text)
    while i < n:
        char = text[i]
        if char == "{":
            run = _brace_run(text, i)
            depth += run // 2
            i += run
        elif char == "}":
            run = _brace_run(text, i)
            pairs = run // 2
            if pairs < depth:
                depth -= pairs
                i += run
            elif pairs == depth:
                return i + run, True
            else:
                return i + 2 * depth, True
        else:
            i += 1
    return n, False


def _split_top_level(invocation: str) -> list[str]:
    """Split a balanced invocation into name and parameter chunks.

    Splits on ``|`` only at nesting depth one, mirroring the brace rules
    of :func:`_scan_invocation` so both walks agree on where the content
    ends.
    """
    n = len(invocation)
    i = 2  # skip the opening {{
    depth = 1
    cuts: list[int] = []
    content_end = n - 2
    while i < n:
        char = invocation[i]
        if char == "{":
            run = _brace_run(invocation, i)
            depth += run // 2
            i += run
        elif char == "}":
            run = _brace_run(invocation, i)
            pairs = run // 2
            if pairs < depth:
                depth -= pairs
                i += run
            else:
                # The final closing run: its last two braces close this
                # template; braces closing inner levels and an odd leading
                # brace belong to the content.
                if pairs == depth:
                    content_end = i + run - 2
                else:
                    content_end = i + 2 * depth - 2
                break
        elif char == "|" and depth == 1:
            cuts.append(i)
            i += 1
        else:
            i += 1
    pieces: list[str] = []
    previous = 2
    for cut in cuts:
        pieces.append(invocation[previous:cut])
        previous = cut + 1
    pieces.append(invocation[previous:content_end])
    return pieces


def extract_sparql_template(invocation: str) -> SparqlTemplate:
    """Parse one balanced ``{{SPARQL ...}}`` invocation.

    Parameters are split on top-level pipes only; the ``sparql=`` value is
    everything after that parameter's first ``=`` (later ``=`` characters
    are query text) with each ``{{!}}`` escape turned back into ``|``.
    Duplicate parameters follow MediaWiki semantics: the last one wins.
    """
    pieces = _split_top_level(invocation)
    name = pieces[0].strip()
    if not re.fullmatch(r"[Ss]PARQL", name):
        raise ValueError(f"not a SPARQL template invocation: {name!r}")

    body: str | None = None
    endpoint: str | None = None
    extras: dict[str, str] = {}
    positional = 0
    for piece in pieces[1:]:
        eq = piece.find("=")
        if eq == -1:
            positional += 1
            extras[str(positional)] = piece
            continue
        key = piece[:eq].strip()
        value = piece[eq + 1 :].strip()
        if key == "sparql":
            body = unescape_pipes(value)
        elif key == "endpoint":
            endpoint = value
        else:
            extras[key] = value

    if body is None:
        raise MissingSparqlParameter("no sparql= parameter on {{SPARQL}}")
    if not body.strip():
        raise MissingSparqlParameter("sparql= parameter is empty")
    if endpoint is not None and not _is_http_url(endpoint):
        raise InvalidEndpointOverride(
            f"endpoint= must be an absolute http(s) URL, got {endpoint!r}"
        )
    return SparqlTemplate(body=body, endpoint_override=endpoint, extras=extras)


def render_sparql_invocation(body: str, endpoint: str | None = None) -> str:
    """Inverse of :func:`extract_sparql_template` for well-formed bodies.

    Bare pipes are escaped as ``{{!}}`` so the parameter survives the
    template grammar.
    """
    escaped = body.replace("|", PIPE_ESCAPE)
    if endpoint is not None:
        return "{{SPARQL|endpoint=" + endpoint + "|sparql=" + escaped + "}}"
    return "{{SPARQL|sparql=" + escaped + "}}"


def _line_component(line: str) -> PageComponent | None:
    if _RULE_RE.match(line):
        return HorizontalRule()
    match = _HEADING_RE.match(line)
    if match:
        opener, text, closer = match.groups()
        # Table-2 headings only: symmetric == pairs, at most level 3
        if len(opener) == len(closer) and len(opener) <= 3:
            text = text.strip()
            if text:
                return Heading(len(opener), text)
    return None


def parse_page(wikitext: str) -> list[PageComponent]:
    """Parse wikipage source into its ordered recognized components.

    Total over arbitrary input: unknown markup is skipped and template
    problems become :class:`BrokenTemplate` components rather than
    exceptions, so one bad panel never takes down the page.
    """
    found: list[tuple[int, PageComponent]] = []
    spans: list[tuple[int, int]] = []

    pos = 0
    while True:
        match = _OPEN_RE.search(wikitext, pos)
        if match is None:
            break
        end, balanced = _scan_invocation(wikitext, match.start())
        if balanced:
            invocation = wikitext[match.start() : end]
            try:
                component: PageComponent = SparqlPanel(
                    extract_sparql_template(invocation)
                )
            except WikitextError as exc:
                component = BrokenTemplate(str(exc), source=invocation)
            spans.append((match.start(), end))
            found.append((match.start(), component))
            pos = end
        else:
            found.append(
                (
                    match.start(),
                    BrokenTemplate(
                        "unterminated SPARQL template invocation",
                        source=wikitext[match.start() :],
                    ),
                )
            )
            spans.append((match.start(), match.end()))
            pos = match.end()

    offset = 0
    for line in wikitext.splitlines(keepends=True):
        start, stop = offset, offset + len(line)
        offset = stop
        if any(s < stop and start < e for s, e in spans):
            continue
        component = _line_component(line.rstrip("\r\n"))
        if component is not None:
            found.append((start, component))

    found.sort(key=lambda item: item[0])
    return [component for _, component in found]
