"""HTTP API over a register file.

The file on disk is the source of truth: reads parse the latest committed
document, and every mutation is serialized through one lock and lands as a
single version bump or not at all. Conflict detection is optimistic — the
client names the version it based its edit on, and a mismatch is reported
with both versions instead of silently overwriting.
"""

from __future__ import annotations

import json
import threading
from datetime import date
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .errors import ConflictError, NotFound, RiskdeskError, UnknownEntry
from .model import (
    Asset,
    AssessmentEntry,
    RemediationRecord,
    ThreatRecord,
    VulnerabilityRecord,
)
from .register import (
    RiskRegister,
    flag_stale,
    load_register,
    recompute_all,
    save_register,
    to_document,
    upsert_and_recompute,
)
from .reporting import render_matrix, render_prioritized
from .scales import ScaleKind, parse_rating
from .scenario import parse_effect, simulate
from .scoring import CiaImpact, assess

_RECORD_PARSERS = {
    "asset": Asset.from_dict,
    "threat": ThreatRecord.from_dict,
    "vulnerability": VulnerabilityRecord.from_dict,
    "remediation": RemediationRecord.from_dict,
    "entry": AssessmentEntry.from_dict,
}

_MEDIA_TYPES = {
    "csv": "text/csv; charset=utf-8",
    "markdown": "text/markdown; charset=utf-8",
    "html": "text/html; charset=utf-8",
    "structured": "application/json",
}


def _error_payload(code: str, message: str, detail: dict | None = None) -> dict:
    return {"error": {"code": code, "message": message, "detail": detail}}


def _error_response(exc: BaseException) -> JSONResponse:
    if isinstance(exc, ConflictError):
        return JSONResponse(
            status_code=409,
            content=_error_payload(
                "Conflict",
                str(exc),
                {"expected_version": exc.expected_version, "actual_version": exc.actual_version},
            ),
        )
    if isinstance(exc, (NotFound, UnknownEntry)):
        return JSONResponse(status_code=404, content=_error_payload("NotFound", str(exc)))
    if isinstance(exc, (RiskdeskError, ValueError, TypeError, KeyError, json.JSONDecodeError)):
        return JSONResponse(status_code=400, content=_error_payload("Validation", str(exc)))
    return JSONResponse(status_code=500, content=_error_payload("Internal", str(exc)))


def _parse_cia(data) -> CiaImpact:
    if isinstance(data, (list, tuple)) and len(data) == 3:
        c, i, a = data
        return CiaImpact(
            confidentiality=parse_rating(ScaleKind.CIA_IMPACT, c),
            integrity=parse_rating(ScaleKind.CIA_IMPACT, i),
            availability=parse_rating(ScaleKind.CIA_IMPACT, a),
        )
    if isinstance(data, dict):
        return CiaImpact(
            confidentiality=parse_rating(ScaleKind.CIA_IMPACT, data["confidentiality"]),
            integrity=parse_rating(ScaleKind.CIA_IMPACT, data["integrity"]),
            availability=parse_rating(ScaleKind.CIA_IMPACT, data["availability"]),
        )
    raise ValueError("cia must be a three-element list or an object with confidentiality/integrity/availability")


def _field(body: dict, *names: str):
    for name in names:
        if name in body:
            return body[name]
    raise ValueError(f"missing required field {names[0]!r}")


def create_app(register_path: str | Path, read_only: bool = False) -> FastAPI:
    app = FastAPI(title="riskdesk", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    path = Path(register_path)
    write_lock = threading.Lock()

    def current() -> RiskRegister:
        return load_register(path)

    async def _handle(_request: Request, exc: Exception) -> JSONResponse:
        return _error_response(exc)

    for exc_type in (RiskdeskError, ValueError, TypeError, KeyError, Exception):
        app.add_exception_handler(exc_type, _handle)

    @app.get("/register")
    async def get_register() -> JSONResponse:
        return JSONResponse(content=to_document(current()))

    @app.put("/register/records")
    async def put_record(request: Request) -> JSONResponse:
        if read_only:
            raise ValueError("register is read-only; mutations are disabled")
        body = await request.json()
        if not isinstance(body, dict):
            raise ValueError("request body must be a JSON object")
        kind = _field(body, "kind")
        parser = _RECORD_PARSERS.get(kind)
        if parser is None:
            raise ValueError(
                f"unknown record kind {kind!r}; expected one of {sorted(_RECORD_PARSERS)}"
            )
        record = parser(_field(body, "record"))
        expected = _field(body, "expected_version")
        if not isinstance(expected, int) or isinstance(expected, bool):
            raise ValueError("expected_version must be an integer")
        with write_lock:
            register = current()
            if register.version != expected:
                raise ConflictError(expected, register.version)
            updated = upsert_and_recompute(register, record)
            save_register(updated, path, expected_version=register.version)
        return JSONResponse(content={"version": updated.version})

    @app.post("/assess")
    async def post_assess(request: Request) -> JSONResponse:
        body = await request.json()
        if not isinstance(body, dict):
            raise ValueError("request body must be a JSON object")
        policy = current().policy
        override = body.get("override")
        result = assess(
            asset_value=parse_rating(ScaleKind.ASSET_VALUE, _field(body, "asset_value", "av")),
            threat_level=parse_rating(ScaleKind.THREAT, _field(body, "threat_level", "threat")),
            cia=_parse_cia(_field(body, "cia")),
            exposure=parse_rating(ScaleKind.EXPOSURE, _field(body, "exposure")),
            likelihood=parse_rating(ScaleKind.LIKELIHOOD, _field(body, "likelihood", "lh")),
            vulnerability_override=(
                parse_rating(ScaleKind.VULNERABILITY, override) if override is not None else None
            ),
            policy=policy,
        )
        return JSONResponse(content=result.to_dict())

    @app.post("/whatif")
    async def post_whatif(request: Request) -> JSONResponse:
        body = await request.json()
        if not isinstance(body, dict):
            raise ValueError("request body must be a JSON object")
        entry_id = str(_field(body, "entry_id"))
        effect = parse_effect(_field(body, "effect"))
        register = recompute_all(current())
        delta = simulate(register, entry_id, effect)
        return JSONResponse(content=delta.to_dict())

    @app.get("/report")
    async def get_report(format: str = "csv", view: str = "matrix") -> Response:
        media_type = _MEDIA_TYPES.get(format)
        if media_type is None:
            raise ValueError(f"unknown format {format!r}; expected one of {sorted(_MEDIA_TYPES)}")
        register = recompute_all(current())
        if view == "matrix":
            document = render_matrix(register, format)
        elif view == "prioritized":
            document = render_prioritized(register, format)
        else:
            raise ValueError(f"unknown view {view!r}; expected 'matrix' or 'prioritized'")
        return Response(content=document.text, media_type=media_type)

    @app.get("/staleness")
    async def get_staleness(today: str | None = None) -> JSONResponse:
        reference = date.fromisoformat(today) if today else date.today()
        register = current()
        stale = flag_stale(register, reference)
        return JSONResponse(
            content={
                "today": reference.isoformat(),
                "review_period_days": register.review_period_days,
                "stale": [
                    {"entry_id": item.entry_id, "days_since_assessment": item.days_since_assessment}
                    for item in stale
                ],
            }
        )

    return app


def serve(
    register_path: str | Path,
    host: str = "127.0.0.1",
    port: int = 8000,
    read_only: bool = False,
) -> None:
    import uvicorn

    uvicorn.run(create_app(register_path, read_only=read_only), host=host, port=port)
