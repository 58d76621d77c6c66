"""HTTP API exposing sessions, uploads, canvas edits, generation and history.

All paths live under the versioned prefix ``/v1``. Mutating calls return the
updated session view. Module errors map to stable ApiError codes; validation
problems are 4xx, backend failures 5xx.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..backends import backend_from_config
from ..backends.masks import FixedTemplateMaskProvider
from ..config import AppConfig
from ..errors import InputError, LatentCanvasError, NotFoundError
from ..imaging import decode_image
from .manager import SessionManager
from .views import job_view, session_view

API_PREFIX = "/v1"

_STATUS_BY_CODE = {
    "validation_error": 400,
    "config_error": 400,
    "shape_error": 400,
    "numeric_error": 400,
    "mode_error": 400,
    "ordering_error": 409,
    "duplicate_reference": 409,
    "input_error": 400,
    "mask_error": 400,
    "not_found": 404,
    "generation_error": 500,
    "backend_unavailable": 503,
    "internal_error": 500,
}


class CreateSessionBody(BaseModel):
    width: float = Field(default=1200.0, gt=0)
    height: float = Field(default=800.0, gt=0)
    d_min: float | None = Field(default=None, ge=0)
    d_max: float | None = Field(default=None, gt=0)


class TargetBody(BaseModel):
    image: str


class PlaceBody(BaseModel):
    image: str
    x: float
    y: float


class PositionBody(BaseModel):
    x: float
    y: float


class AttributesBody(BaseModel):
    names: list[str]


def create_app(config: AppConfig | None = None, manager: SessionManager | None = None) -> FastAPI:
    config = config or AppConfig()
    if manager is None:
        backend = backend_from_config(config)
        manager = SessionManager(config, backend, FixedTemplateMaskProvider(config.feather))
    registry = manager.pipeline.registry
    backend = manager.backend

    app = FastAPI(title="latentcanvas", version="1")
    app.state.manager = manager
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(LatentCanvasError)
    async def handle_module_error(_request: Request, exc: LatentCanvasError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": exc.message, "field": exc.field}},
        )

    def view(session_id: str) -> dict:
        doc = manager.get(session_id)
        return session_view(doc, manager.store(session_id), backend, registry)

    # -- sessions ---------------------------------------------------------------

    @app.post(API_PREFIX + "/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        doc = manager.create(
            width=body.width, height=body.height, d_min=body.d_min, d_max=body.d_max
        )
        return view(doc.session_id)

    @app.get(API_PREFIX + "/sessions/{session_id}")
    def get_session(session_id: str):
        return view(session_id)

    @app.delete(API_PREFIX + "/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        manager.delete(session_id)

    # -- images -------------------------------------------------------------------

    @app.post(API_PREFIX + "/sessions/{session_id}/images", status_code=201)
    async def upload_image(session_id: str, request: Request):
        data = await request.body()
        if not data:
            raise InputError("empty upload", field="image")
        decode_image(data)  # reject undecodable bytes up front
        with manager.lock(session_id):
            manager.get(session_id)
            ref = manager.store(session_id).put(data, track=True)
        return {"image": ref}

    @app.get(API_PREFIX + "/sessions/{session_id}/images/{ref}")
    def fetch_image(session_id: str, ref: str):
        manager.get(session_id)
        path = Path(manager.store(session_id).root) / ref
        if not path.is_file():
            raise NotFoundError(f"no stored image {ref!r}", field="image")
        return FileResponse(path, media_type=_sniff_media_type(path))

    # -- canvas edits ------------------------------------------------------------------

    @app.put(API_PREFIX + "/sessions/{session_id}/target")
    def set_target(session_id: str, body: TargetBody):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            _require_image(manager, session_id, body.image)
            doc.set_target(body.image)
            manager.save(doc)
        return view(session_id)

    @app.post(API_PREFIX + "/sessions/{session_id}/references")
    def place_reference(session_id: str, body: PlaceBody):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            _require_image(manager, session_id, body.image)
            doc.place_reference(body.image, (body.x, body.y))
            manager.save(doc)
        return view(session_id)

    @app.put(API_PREFIX + "/sessions/{session_id}/references/{ref}/position")
    def move_reference(session_id: str, ref: str, body: PositionBody):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.move_reference(ref, (body.x, body.y))
            manager.save(doc)
        return view(session_id)

    @app.put(API_PREFIX + "/sessions/{session_id}/references/{ref}/attributes")
    def select_attributes(session_id: str, ref: str, body: AttributesBody):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.select_attributes(ref, body.names, registry)
            manager.save(doc)
        return view(session_id)

    @app.delete(API_PREFIX + "/sessions/{session_id}/references/{ref}")
    def remove_reference(session_id: str, ref: str):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.remove_reference(ref)
            manager.save(doc)
        return view(session_id)

    @app.post(API_PREFIX + "/sessions/{session_id}/undo")
    def undo(session_id: str):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.undo()
            manager.save(doc)
        return view(session_id)

    @app.post(API_PREFIX + "/sessions/{session_id}/redo")
    def redo(session_id: str):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.redo()
            manager.save(doc)
        return view(session_id)

    @app.post(API_PREFIX + "/sessions/{session_id}/reset")
    def reset(session_id: str):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.reset()
            manager.save(doc)
        return view(session_id)

    # -- generation & history ------------------------------------------------------------

    @app.post(API_PREFIX + "/sessions/{session_id}/generate")
    def generate(session_id: str, response: Response):
        record = manager.generate(session_id)
        payload = job_view(record)
        if record["status"] == "done":
            doc = manager.get(session_id)
            entry = doc.find_history(record["entry_id"])
            payload["entry"] = {
                "id": entry.id,
                "result_image": entry.result_image,
                "created_at": entry.created_at,
                "fingerprint": entry.fingerprint,
            }
        else:
            response.status_code = 202
        return payload

    @app.get(API_PREFIX + "/sessions/{session_id}/jobs/{job_id}")
    def job_status(session_id: str, job_id: str):
        return job_view(manager.job(session_id, job_id))

    @app.get(API_PREFIX + "/sessions/{session_id}/history")
    def list_history(session_id: str):
        doc = manager.get(session_id)
        return {
            "entries": [
                {
                    "id": entry.id,
                    "result_image": entry.result_image,
                    "created_at": entry.created_at,
                    "fingerprint": entry.fingerprint,
                }
                for entry in doc.history
            ]
        }

    @app.get(API_PREFIX + "/sessions/{session_id}/history/{entry_id}/image")
    def history_image(session_id: str, entry_id: int):
        doc = manager.get(session_id)
        entry = doc.find_history(entry_id)
        data = manager.store(session_id).get(entry.result_image)
        return Response(content=data, media_type="image/png")

    @app.post(API_PREFIX + "/sessions/{session_id}/history/{entry_id}/restore")
    def restore_history(session_id: str, entry_id: int):
        with manager.lock(session_id):
            doc = manager.get(session_id)
            doc.restore_history(entry_id)
            manager.save(doc)
        return view(session_id)

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def _require_image(manager: SessionManager, session_id: str, ref: str) -> None:
    if not manager.store(session_id).exists(ref):
        raise NotFoundError(f"image {ref!r} was never uploaded to this session", field="image")


def _sniff_media_type(path: Path) -> str:
    head = path.open("rb").read(4)
    if head.startswith(b"\x89PNG"):
        return "image/png"
    if head.startswith(b"\xff\xd8"):
        return "image/jpeg"
    return "application/octet-stream"
