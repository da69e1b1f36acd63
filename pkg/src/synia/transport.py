"""Minimal HTTP transport seam.

Every outbound request in the engine goes through a :class:`Transport`,
which is what makes the security properties testable: a recording mock
can assert that no host outside the allowlist and the template wiki is
ever contacted, and that the wiki only ever sees GETs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import requests


class TransportFailure(Exception):
    """Request could not complete at the transport level."""

    def __init__(self, message: str, *, timed_out: bool = False) -> None:
        super().__init__(message)
        self.timed_out = timed_out


@dataclass
class HttpResponse:
    status: int
    body: bytes
    headers: Mapping[str, str] = field(default_factory=dict)

    @property
    def text(self) -> str:
        return self.body.decode("utf-8")


class Transport:
    """Interface: one method, full URL in, response out."""

    def request(
        self,
        method: str,
        url: str,
        *,
        body: bytes | None = None,
        headers: Mapping[str, str] | None = None,
        timeout: float | None = None,
    ) -> HttpResponse:
        raise NotImplementedError


class RequestsTransport(Transport):
    """Production transport backed by a pooled requests session."""

    def __init__(self, user_agent: str = "synia/0.1") -> None:
        self._session = requests.Session()
        self._session.headers["User-Agent"] = user_agent

    def request(
        self,
        method: str,
        url: str,
        *,
        body: bytes | None = None,
        headers: Mapping[str, str] | None = None,
        timeout: float | None = None,
    ) -> HttpResponse:
        try:
            response = self._session.request(
                method,
                url,
                data=body,
                headers=dict(headers or {}),
                timeout=timeout,
                allow_redirects=True,
            )
        except requests.Timeout as exc:
            raise TransportFailure(f"timed out: {url}", timed_out=True) from exc
        except requests.RequestException as exc:
            raise TransportFailure(str(exc)) from exc
        return HttpResponse(
            status=response.status_code,
            body=response.content,
            headers=dict(response.headers),
        )
