"""Session lifecycle, persistence and generation jobs.

Every session lives in its own directory: the serialized document, a
content-addressed image store and the job records. All mutations to one
session are serialized through that session's lock; distinct sessions
proceed independently. Generation runs on a bounded worker pool: inline
(submit-and-wait) for synchronous backends, polled jobs otherwise.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import shutil
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeoutError
from pathlib import Path

from ..backends.base import GeneratorBackend, MaskProvider
from ..config import AppConfig
from ..errors import GenerationError, NotFoundError
from ..pipeline import RenderPipeline
from ..session import SessionDocument
from ..store import ImageStore

logger = logging.getLogger(__name__)


def _utcnow() -> str:
    return dt.datetime.now(dt.timezone.utc).isoformat()


class SessionManager:
    def __init__(self, config: AppConfig, backend: GeneratorBackend, masks: MaskProvider):
        self.config = config
        self.backend = backend
        self.pipeline = RenderPipeline(backend, masks)
        self.root = Path(config.data_dir) / "sessions"
        self.root.mkdir(parents=True, exist_ok=True)
        self._docs: dict[str, SessionDocument] = {}
        self._jobs: dict[str, dict[str, dict]] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._registry_lock = threading.Lock()
        self._executor = ThreadPoolExecutor(max_workers=max(1, config.workers))

    # -- paths ------------------------------------------------------------------

    def _dir(self, session_id: str) -> Path:
        return self.root / session_id

    def _document_path(self, session_id: str) -> Path:
        return self._dir(session_id) / "document.json"

    def _jobs_path(self, session_id: str) -> Path:
        return self._dir(session_id) / "jobs.json"

    def store(self, session_id: str) -> ImageStore:
        return ImageStore(self._dir(session_id) / "images")

    def lock(self, session_id: str) -> threading.RLock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.RLock()
            return self._locks[session_id]

    # -- lifecycle -----------------------------------------------------------------

    def create(self, **kwargs) -> SessionDocument:
        session_id = uuid.uuid4().hex
        doc = SessionDocument.create(session_id, **kwargs)
        self._dir(session_id).mkdir(parents=True, exist_ok=True)
        self._docs[session_id] = doc
        self._jobs[session_id] = {}
        self.save(doc)
        return doc

    def get(self, session_id: str) -> SessionDocument:
        if session_id in self._docs:
            return self._docs[session_id]
        path = self._document_path(session_id)
        if not path.is_file():
            raise NotFoundError(f"no session {session_id!r}", field="session_id")
        doc = SessionDocument.loads(path.read_text())
        self._docs[session_id] = doc
        return doc

    def delete(self, session_id: str) -> None:
        self.get(session_id)  # 404 when missing
        with self.lock(session_id):
            self._docs.pop(session_id, None)
            self._jobs.pop(session_id, None)
            shutil.rmtree(self._dir(session_id), ignore_errors=True)

    def save(self, doc: SessionDocument) -> None:
        self._document_path(doc.session_id).write_text(doc.dumps())

    # -- jobs --------------------------------------------------------------------------

    def jobs(self, session_id: str) -> dict[str, dict]:
        if session_id not in self._jobs:
            path = self._jobs_path(session_id)
            self._jobs[session_id] = json.loads(path.read_text()) if path.is_file() else {}
        return self._jobs[session_id]

    def _save_jobs(self, session_id: str) -> None:
        self._jobs_path(session_id).write_text(json.dumps(self.jobs(session_id), indent=2))

    def job(self, session_id: str, job_id: str) -> dict:
        self.get(session_id)
        record = self.jobs(session_id).get(job_id)
        if record is None:
            raise NotFoundError(f"no job {job_id!r}", field="job_id")
        self._expire_if_overdue(session_id, record)
        return record

    def _expire_if_overdue(self, session_id: str, record: dict) -> None:
        if record["status"] not in ("queued", "running"):
            return
        started = dt.datetime.fromisoformat(record["created_at"])
        timeout = self.config.generation_timeout(self.backend.name)
        if (dt.datetime.now(dt.timezone.utc) - started).total_seconds() > timeout:
            record["status"] = "failed"
            record["error"] = f"generation exceeded the {timeout:g}s timeout"
            self._save_jobs(session_id)

    # -- generation ---------------------------------------------------------------------

    def generate(self, session_id: str) -> dict:
        """Render the session's current layout.

        Synchronous backends block until the history entry exists; others
        return a queued job record for polling.
        """
        with self.lock(session_id):
            doc = self.get(session_id)
            store = self.store(session_id)
            state = doc.current.copy()  # the layout this render is bound to
            request = self.pipeline.request_for_session(doc, store, state=state)
            job_id = uuid.uuid4().hex
            record = {
                "job_id": job_id,
                "status": "queued",
                "entry_id": None,
                "error": None,
                "created_at": _utcnow(),
            }
            self.jobs(session_id)[job_id] = record
            self._save_jobs(session_id)

        def run() -> None:
            with self.lock(session_id):
                if record["status"] != "queued":
                    return
                record["status"] = "running"
                self._save_jobs(session_id)
            try:
                image = self.pipeline.backend_render(request)
            except Exception as exc:  # surface through the job record
                logger.exception("generation failed for session %s", session_id)
                with self.lock(session_id):
                    record["status"] = "failed"
                    record["error"] = str(exc)
                    self._save_jobs(session_id)
                return
            with self.lock(session_id):
                if record["status"] == "failed":  # expired while rendering
                    return
                ref = store.put_image(image)
                entry = doc.commit_generation(ref, state=state)
                record["status"] = "done"
                record["entry_id"] = entry.id
                self.save(doc)
                self._save_jobs(session_id)

        future = self._executor.submit(run)
        if self.backend.synchronous:
            timeout = self.config.generation_timeout(self.backend.name)
            try:
                future.result(timeout=timeout)
            except FutureTimeoutError:
                with self.lock(session_id):
                    record["status"] = "failed"
                    record["error"] = f"generation exceeded the {timeout:g}s timeout"
                    self._save_jobs(session_id)
            if record["status"] == "failed":
                raise GenerationError(record["error"] or "generation failed")
        return record
