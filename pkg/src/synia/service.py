"""HTTP API and static hosting.

The API serves composed pages and the public config; the webapp's static
files are hosted from the same origin so browsing never touches third
parties beyond the allowlisted embed hosts.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .composer import PageComposer, page_to_dict
from .config import SiteConfig
from .errors import MalformedFragment, WikiProtocolError, WikiUnreachable
from .gateway import SparqlGateway
from .templatestore import TemplateStore
from .transport import Transport

PACKAGED_STATIC_DIR = Path(__file__).parent / "static"


def _error_body(kind: str, message: str) -> dict:
    return {"error": {"kind": kind, "message": message}}


def create_app(
    config: SiteConfig,
    transport: Transport | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service; ``transport`` is injectable for tests."""
    store = TemplateStore(
        config.wiki, transport=transport, ttl=config.cache_ttl_seconds
    )
    gateway = SparqlGateway(
        transport=transport,
        timeout=config.query_timeout_seconds,
        per_endpoint_limit=config.per_endpoint_limit,
    )
    composer = PageComposer(config, store, gateway)

    app = FastAPI(title="synia", docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.composer = composer

    @app.get("/api/page")
    def api_page(fragment: str = "") -> JSONResponse:
        try:
            page = composer.compose(fragment)
        except MalformedFragment as exc:
            return JSONResponse(
                status_code=400, content=_error_body("malformed-fragment", str(exc))
            )
        except WikiUnreachable as exc:
            return JSONResponse(
                status_code=502, content=_error_body("wiki-unreachable", str(exc))
            )
        except WikiProtocolError as exc:
            return JSONResponse(
                status_code=502, content=_error_body("wiki-protocol-error", str(exc))
            )
        return JSONResponse(content=page_to_dict(page))

    @app.get("/api/config")
    def api_config() -> dict:
        return config.public_dict()

    assets = Path(static_dir) if static_dir is not None else PACKAGED_STATIC_DIR
    app.mount("/", StaticFiles(directory=assets, html=True), name="static")
    return app
