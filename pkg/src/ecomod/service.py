"""HTTP front end: model CRUD with optimistic concurrency, validation and
scoring, species lookup, and synchronous simulation runs.

Everything persists through the file-backed document store, one JSON file
per model or run record, so a service restart reloads the exact committed
state. Error responses always carry ``{code, message, details}``.
"""

from __future__ import annotations

import threading
import uuid
from datetime import datetime, timezone

from fastapi import FastAPI, Request, Response
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import codec
from .compiler import SimSettings, compile_model
from .engine import PopulationSeries, RunResult, run
from .errors import (
    CompileError,
    DecodeError,
    EngineInvariantError,
    InvalidModelError,
    InvalidQueryError,
    StorageError,
    TaxonNotFoundError,
    TransportError,
)
from .export import series_csv
from .metrics import score_model
from .storage import JsonDocumentStore
from .traits import RemoteTraitClient, TraitStore, bundled_store, fill_defaults
from .validation import validate_model

MAX_SIMULATION_MONTHS = 600


class ApiError(Exception):
    """Carries a full HTTP error payload."""

    def __init__(self, status: int, code: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ServiceState:
    def __init__(self, store_dir, trait_backend=None):
        self.store = JsonDocumentStore(store_dir)
        self.traits = trait_backend or bundled_store()
        # serializes model read-modify-write cycles; simulations run outside it
        self.write_lock = threading.Lock()

    def model_doc(self, model_id: str) -> dict:
        doc = self.store.get("models", model_id)
        if doc is None:
            raise ApiError(404, "not-found", f"no model with id {model_id!r}")
        return doc

    def run_doc(self, run_id: str) -> dict:
        doc = self.store.get("runs", run_id)
        if doc is None:
            raise ApiError(404, "not-found", f"no run with id {run_id!r}")
        return doc


def create_app(store_dir, trait_backend: TraitStore | RemoteTraitClient | None = None) -> FastAPI:
    state = ServiceState(store_dir, trait_backend)
    app = FastAPI(title="ecomod service", docs_url=None, redoc_url=None)
    app.state.ecomod = state
    # the browser editor is served from a different origin in development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def on_api_error(_req: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def on_malformed(_req: Request, exc: RequestValidationError):
        return _error_response(400, "malformed-body", "request body malformed", {"errors": exc.errors()})

    for domain_type in (
        DecodeError,
        InvalidQueryError,
        TaxonNotFoundError,
        InvalidModelError,
        CompileError,
        EngineInvariantError,
        StorageError,
        TransportError,
    ):
        async def on_domain_error(_req: Request, exc: Exception):
            response = _map_domain_error(exc)
            if response is None:
                response = _error_response(500, "internal-error", str(exc))
            return response

        app.add_exception_handler(domain_type, on_domain_error)

    @app.post("/models", status_code=201)
    async def create_model(request: Request):
        body = await _json_body(request)
        model = _decode_and_validate(body)
        model_id = model.id if _id_free(state, model.id) else uuid.uuid4().hex
        now = _now()
        doc = {
            "id": model_id,
            "revision": 1,
            "created_at": now,
            "updated_at": now,
            "model": codec.model_to_dict(model),
        }
        with state.write_lock:
            if state.store.get("models", model_id) is not None:
                model_id = uuid.uuid4().hex
                doc["id"] = model_id
            state.store.put("models", model_id, doc)
        return doc

    @app.get("/models")
    async def list_models():
        docs = state.store.all_docs("models")
        return [
            {
                "id": doc["id"],
                "name": doc["model"].get("name"),
                "revision": doc["revision"],
                "created_at": doc["created_at"],
                "updated_at": doc["updated_at"],
            }
            for _, doc in sorted(docs.items())
        ]

    @app.get("/models/{model_id}")
    async def get_model(model_id: str):
        return state.model_doc(model_id)

    @app.put("/models/{model_id}")
    async def update_model(model_id: str, request: Request):
        body = await _json_body(request)
        if "model" not in body or "revision" not in body:
            raise ApiError(400, "malformed-body", "update needs {revision, model}")
        model = _decode_and_validate(body["model"])
        base_revision = body["revision"]
        if not isinstance(base_revision, int):
            raise ApiError(400, "malformed-body", "revision must be an integer")
        with state.write_lock:
            doc = state.model_doc(model_id)
            if doc["revision"] != base_revision:
                raise ApiError(
                    409,
                    "stale-revision",
                    f"model {model_id!r} is at revision {doc['revision']}, not {base_revision}",
                    {"expected": doc["revision"], "actual": base_revision},
                )
            doc["revision"] += 1
            doc["updated_at"] = _now()
            doc["model"] = codec.model_to_dict(model)
            state.store.put("models", model_id, doc)
        return doc

    @app.delete("/models/{model_id}", status_code=204)
    async def delete_model(model_id: str):
        with state.write_lock:
            state.model_doc(model_id)
            state.store.delete("models", model_id)
        return Response(status_code=204)

    @app.post("/validate")
    async def validate_document(request: Request):
        # stateless: lets an editor check unsaved work without storing it
        body = await _json_body(request)
        model = codec.decode_model(body)
        return validate_model(model).as_dict()

    @app.post("/models/{model_id}/validate")
    async def validate_stored(model_id: str):
        doc = state.model_doc(model_id)
        model = codec.decode_model(doc["model"])
        return validate_model(model).as_dict()

    @app.get("/models/{model_id}/scores")
    async def scores(model_id: str):
        doc = state.model_doc(model_id)
        model = codec.decode_model(doc["model"])
        result = score_model(model)
        return {"complexity": result.complexity, "creativity": result.creativity}

    @app.post("/models/{model_id}/simulate")
    async def simulate(model_id: str, request: Request):
        body = await _json_body(request)
        seed = body.get("seed")
        months = body.get("months")
        if not isinstance(seed, int) or not isinstance(months, int) or months < 1:
            raise ApiError(400, "malformed-body", "simulate needs integer seed and months >= 1")
        if months > MAX_SIMULATION_MONTHS:
            raise ApiError(
                400,
                "duration-too-long",
                f"months must be <= {MAX_SIMULATION_MONTHS} for synchronous runs",
                {"months": months, "max": MAX_SIMULATION_MONTHS},
            )
        doc = state.model_doc(model_id)
        model = codec.decode_model(doc["model"])
        program = compile_model(model, SimSettings())
        result = await run_in_threadpool(run, program, seed, months)
        record = {
            "run_id": uuid.uuid4().hex,
            "model_id": model_id,
            "revision": doc["revision"],
            "seed": seed,
            "months": months,
            "settings": result.settings,
            "status": "done",
            "created_at": _now(),
            "result": result.as_dict(),
        }
        state.store.put("runs", record["run_id"], record)
        return record

    @app.get("/runs/{run_id}")
    async def get_run(run_id: str):
        return state.run_doc(run_id)

    @app.get("/runs/{run_id}/series.csv")
    async def run_series_csv(run_id: str):
        doc = state.run_doc(run_id)
        if doc.get("status") != "done" or "result" not in doc:
            raise ApiError(404, "not-found", f"run {run_id!r} has no series")
        result = _result_from_dict(doc["result"])
        return Response(content=series_csv(result), media_type="text/csv; charset=utf-8")

    @app.get("/species")
    async def species_search(q: str = ""):
        records = state.traits.search_species(q)
        return [r.as_dict() for r in records]

    @app.get("/species/{taxon_id}/attributes")
    async def species_attributes(taxon_id: str):
        bundle = fill_defaults(state.traits.fetch_attributes(taxon_id))
        return bundle.as_dict()

    return app


def _id_free(state: ServiceState, model_id: str) -> bool:
    from .storage import _SAFE_ID

    return bool(_SAFE_ID.match(model_id)) and state.store.get("models", model_id) is None


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ApiError(400, "malformed-body", "request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise ApiError(400, "malformed-body", "request body must be a JSON object")
    return body


def _decode_and_validate(payload: dict):
    model = codec.decode_model(payload)
    report = validate_model(model)
    if not report.valid:
        raise ApiError(
            422,
            "invalid-model",
            "model failed validation",
            {"report": report.as_dict()},
        )
    return model


def _result_from_dict(payload: dict) -> RunResult:
    return RunResult(
        seed=payload["seed"],
        duration=payload["duration"],
        program_hash=payload["program_hash"],
        settings=payload["settings"],
        series=tuple(
            PopulationSeries(
                name=s["name"],
                component_id=s["component_id"],
                biotic=s["biotic"],
                values=tuple(s["values"]),
            )
            for s in payload["series"]
        ),
        final_state_summary=payload["final_state_summary"],
    )


def _error_response(status: int, code: str, message: str, details: dict | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or {}},
    )


def _map_domain_error(exc: Exception) -> JSONResponse | None:
    if isinstance(exc, DecodeError):
        details = {}
        if exc.path is not None:
            details["path"] = exc.path
        if exc.offset is not None:
            details["offset"] = exc.offset
        return _error_response(400, "decode-error", str(exc), details)
    if isinstance(exc, InvalidQueryError):
        return _error_response(400, "invalid-query", str(exc))
    if isinstance(exc, TaxonNotFoundError):
        return _error_response(404, "not-found", str(exc))
    if isinstance(exc, InvalidModelError):
        return _error_response(422, "invalid-model", str(exc), {"report": exc.report.as_dict()})
    if isinstance(exc, CompileError):
        return _error_response(422, "compile-error", str(exc), {"code": exc.code})
    if isinstance(exc, EngineInvariantError):
        return _error_response(500, "engine-invariant", str(exc))
    if isinstance(exc, (StorageError, TransportError)):
        return _error_response(500, "internal-error", str(exc))
    return None
