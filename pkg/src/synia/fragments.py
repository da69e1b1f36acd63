"""URI fragment routing.

Fragments like ``#author/Q18618629`` name an aspect and the entities to
show on it; faceted fragments chain several aspect/identifier pairs
(``#venue/Q15817015/topic/Q2013``) and an aspect alone (``#venue``) asks
for that aspect's index page.  This module parses fragments into routes
and derives the wikipage title holding the matching template.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import unquote

from .errors import MalformedFragment

_ENTITY_RE = re.compile(r"^([QL])([1-9][0-9]*)$")
_ASPECT_RE = re.compile(r"^[a-z][a-z0-9-]*$")


@dataclass(frozen=True)
class EntityId:
    """A Wikibase item (Q) or lexeme (L) identifier."""

    prefix: str
    number: int

    def __post_init__(self) -> None:
        if self.prefix not in ("Q", "L"):
            raise ValueError(f"unsupported identifier prefix {self.prefix!r}")
        if self.number < 1:
            raise ValueError("identifier number must be positive")

    def __str__(self) -> str:
        return f"{self.prefix}{self.number}"

    @classmethod
    def parse(cls, text: str) -> "EntityId":
        """Parse a canonical identifier such as ``Q42`` or ``L2310``."""
        match = _ENTITY_RE.match(text)
        if match is None:
            raise MalformedFragment(f"not a valid entity identifier: {text!r}")
        return cls(match.group(1), int(match.group(2)))

    @classmethod
    def try_parse(cls, text: str) -> "EntityId | None":
        match = _ENTITY_RE.match(text)
        if match is None:
            return None
        return cls(match.group(1), int(match.group(2)))


@dataclass(frozen=True)
class AspectSegment:
    """One aspect name plus the identifiers bound to it (possibly none)."""

    aspect: str
    ids: tuple[EntityId, ...] = ()

    def __post_init__(self) -> None:
        if not _ASPECT_RE.match(self.aspect):
            raise ValueError(f"invalid aspect name {self.aspect!r}")


@dataclass(frozen=True)
class AspectRoute:
    """A parsed fragment: ordered aspect segments with their identifiers.

    Only four shapes are legal: no segments (index), one segment without
    ids (aspect index), one segment with ids (item), or two or more
    segments that all carry ids (faceted).
    """

    segments: tuple[AspectSegment, ...] = ()

    def __post_init__(self) -> None:
        if len(self.segments) >= 2 and any(not s.ids for s in self.segments):
            raise ValueError("faceted routes need identifiers on every segment")

    @property
    def kind(self) -> str:
        if not self.segments:
            return "index"
        if len(self.segments) == 1:
            return "item" if self.segments[0].ids else "aspect-index"
        return "faceted"

    def segment_ids(self) -> list[list[EntityId]]:
        """Identifier lists in segment order, for interpolation."""
        return [list(s.ids) for s in self.segments]


def _looks_like_id_list(token: str) -> bool:
    return all(_ENTITY_RE.match(piece) for piece in token.split(","))


def parse_fragment(fragment: str) -> AspectRoute:
    """Parse a URI fragment (with or without leading ``#``) into a route.

    The fragment is percent-decoded once, then split on ``/``.  Even
    positions are aspect names, odd positions comma-separated identifier
    lists.  Raises :class:`MalformedFragment` for anything else; never
    raises any other exception, whatever the input.
    """
    decoded = unquote(fragment)
    if decoded.startswith("#"):
        decoded = decoded[1:]
    if decoded == "":
        return AspectRoute(())

    tokens = decoded.split("/")
    for token in tokens:
        if token == "":
            raise MalformedFragment("empty path segment in fragment")

    if len(tokens) % 2 == 1 and len(tokens) > 1:
        raise MalformedFragment(
            "aspect without identifiers in a multi-segment fragment"
        )

    segments = []
    for position in range(0, len(tokens), 2):
        aspect = tokens[position]
        if not _ASPECT_RE.match(aspect):
            if _looks_like_id_list(aspect):
                raise MalformedFragment(
                    f"identifier list {aspect!r} where an aspect name was expected"
                )
            raise MalformedFragment(f"invalid aspect name {aspect!r}")
        ids: tuple[EntityId, ...] = ()
        if position + 1 < len(tokens):
            ids = tuple(
                EntityId.parse(piece) for piece in tokens[position + 1].split(",")
            )
        segments.append(AspectSegment(aspect, ids))
    return AspectRoute(tuple(segments))


def template_page_title(route: AspectRoute, namespace: str) -> str:
    """Wikipage title whose templates serve this route.

    The index page is ``<ns>index``, an aspect index ``<ns><aspect>-index``,
    and item or faceted routes join their aspect names with ``-``.
    """
    if route.kind == "index":
        return namespace + "index"
    if route.kind == "aspect-index":
        return namespace + route.segments[0].aspect + "-index"
    return namespace + "-".join(s.aspect for s in route.segments)


def canonical_fragment(route: AspectRoute) -> str:
    """Emit the canonical ``#a1/ID[,ID...]/a2/ID...`` form; index is ``""``."""
    if not route.segments:
        return ""
    parts: list[str] = []
    for segment in route.segments:
        parts.append(segment.aspect)
        if segment.ids:
            parts.append(",".join(str(i) for i in segment.ids))
    return "#" + "/".join(parts)
