"""HTTP front end.

One POST route per handler under /api/<name>; domain errors become 422
responses with the error class name and message.  Run with

    uvicorn mbs.service.app:app
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import MbsError
from .handlers import HANDLERS
from .models import ErrorResponse


def _make_endpoint(req_type, fn):
    async def endpoint(payload: req_type):  # noqa: B008 - annotation is the contract
        return fn(payload)

    return endpoint


def create_app() -> FastAPI:
    app = FastAPI(title="mbs-toolkit", version=__version__)

    @app.exception_handler(MbsError)
    async def _mbs_error(request, exc: MbsError):
        body = ErrorResponse(error=type(exc).__name__, detail=str(exc))
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "version": __version__}

    for name, (req_type, fn) in HANDLERS.items():
        endpoint = _make_endpoint(req_type, fn)
        endpoint.__name__ = "api_" + name.replace("-", "_")
        app.post(f"/api/{name}")(endpoint)

    return app


app = create_app()
