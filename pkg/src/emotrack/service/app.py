"""HTTP facade over ingestion, session recording, and report generation.

The app is built by :func:`create_app` from a :class:`ServiceConfig`, so
tests can spin up isolated instances against temp directories. CORS allows
a single configured origin with GET/POST/OPTIONS and credentials.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import pipeline
from ..categorize import (
    Categorizer,
    CategorizerError,
    ChatCompletionCategorizer,
    KeywordCategorizer,
)
from ..ingest import DEFAULT_ZONE, IngestError, MalformedDocument
from ..metadata import CachingProvider, FixtureProvider, ProviderError, RemoteProvider
from ..reportgen import InvalidRange, TimeRange, build_report, report_to_wire
from ..session import (
    AlreadyWatching,
    ClockSkew,
    Mood,
    NotWatching,
    SessionService,
    load_sessions,
)
from ..store import DocumentStore
from .schemas import (
    ApiError,
    ErrorCode,
    HandleDataRequest,
    HandleFileRequest,
    SessionRecord,
    SessionRequest,
)

DEFAULT_MAX_UPLOAD = 64 * 1024 * 1024


@dataclass
class ServiceConfig:
    data_dir: Path
    upload_dir: Optional[Path] = None
    zone: str = DEFAULT_ZONE
    allow_origin: str = "http://localhost:5173"
    categorizer_mode: str = "keyword"  # keyword | llm
    metadata_mode: str = "fixture"  # fixture | remote
    fixture_path: Optional[Path] = None
    youtube_api_key: str = ""
    llm_endpoint: str = "https://api.openai.com/v1/chat/completions"
    llm_api_key: str = ""
    llm_model: str = "gpt-3.5-turbo"
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD
    request_timeout: float = 120.0


class _EmptyProvider:
    def fetch(self, video_id):
        from ..metadata import UNAVAILABLE

        return UNAVAILABLE


def _build_categorizer(config: ServiceConfig) -> Categorizer:
    if config.categorizer_mode == "llm":
        return ChatCompletionCategorizer(
            endpoint=config.llm_endpoint,
            api_key=config.llm_api_key,
            model=config.llm_model,
        )
    return KeywordCategorizer()


def _build_provider(config: ServiceConfig):
    if config.metadata_mode == "remote":
        return CachingProvider(RemoteProvider(api_key=config.youtube_api_key))
    if config.fixture_path is not None:
        return CachingProvider(FixtureProvider(config.fixture_path))
    return _EmptyProvider()


def _error(status: int, code: ErrorCode, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"ok": False, "error": ApiError(code=code, message=message).model_dump()},
    )


def _session_record(session) -> SessionRecord:
    return SessionRecord(
        id=session.id,
        start=session.start_local,
        before=session.before.wire,
        stop=session.stop_local,
        after=session.after.wire if session.after else None,
        status=session.status.value if session.status else None,
    )


def create_app(config: ServiceConfig) -> FastAPI:
    store = DocumentStore(config.data_dir)
    upload_root = Path(config.upload_dir or (Path(config.data_dir) / "uploads"))
    upload_root.mkdir(parents=True, exist_ok=True)
    sessions = SessionService(store, config.zone)
    provider = _build_provider(config)
    categorizer = _build_categorizer(config)
    user_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    locks_guard = threading.Lock()

    def user_lock(uid: str) -> threading.Lock:
        with locks_guard:
            return user_locks[uid]

    app = FastAPI(title="emotrack")
    app.state.store = store
    app.state.config = config

    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.allow_origin],
        allow_methods=["GET", "POST", "OPTIONS"],
        allow_credentials=True,
        allow_headers=["*"],
    )

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):
        # never leak stack traces to clients
        return _error(500, ErrorCode.INTERNAL, "internal error")

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.post("/api/upload")
    async def upload(uid: str = Form(...), file: UploadFile = File(...)):
        content = await file.read()
        if len(content) > config.max_upload_bytes:
            return _error(413, ErrorCode.MALFORMED, "file too large")
        pipeline.register_user(store, uid)
        user_dir = upload_root / uid
        user_dir.mkdir(parents=True, exist_ok=True)
        name = Path(file.filename or "upload.json").name
        target = user_dir / name
        suffix = 1
        while target.exists():
            # no-overwrite policy: later uploads of the same name get a suffix
            target = user_dir / f"{Path(name).stem}-{suffix}{Path(name).suffix}"
            suffix += 1
        target.write_bytes(content)
        return {"ok": True, "fileName": target.name}

    @app.post("/api/handle_file")
    def handle_file(body: HandleFileRequest):
        if not body.uploadOk:
            # processing only proceeds on a successful upload
            return {"ok": True, "ingested": 0, "skipped": 0}
        if not pipeline.user_exists(store, body.uid):
            return _error(404, ErrorCode.NOT_FOUND, f"unknown uid {body.uid!r}")
        source = upload_root / body.uid / Path(body.fileName).name
        if not body.fileName or not source.is_file():
            return _error(404, ErrorCode.NOT_FOUND, f"no uploaded file {body.fileName!r}")
        with user_lock(body.uid):
            try:
                ingested, skipped = pipeline.ingest_into_store(
                    store, body.uid, source.read_bytes(), config.zone
                )
            except IngestError as exc:
                return _error(400, ErrorCode.MALFORMED, str(exc))
        return {"ok": True, "ingested": ingested, "skipped": skipped}

    @app.post("/api/handle_data")
    def handle_data(body: HandleDataRequest):
        if not pipeline.user_exists(store, body.uid):
            return _error(404, ErrorCode.NOT_FOUND, f"unknown uid {body.uid!r}")
        try:
            time_range = TimeRange(date.fromisoformat(body.start), date.fromisoformat(body.end))
        except (ValueError, InvalidRange) as exc:
            return _error(400, ErrorCode.MALFORMED, str(exc))
        with user_lock(body.uid):
            events = pipeline.load_events(store, body.uid)
            user_sessions = load_sessions(store, body.uid)
            categorize_event = pipeline.make_event_categorizer(provider, categorizer)
            try:
                report = build_report(
                    body.uid, time_range, events, user_sessions, categorize_event, store
                )
            except (CategorizerError, ProviderError) as exc:
                return _error(502, ErrorCode.UPSTREAM, str(exc))
        return {"ok": True, "report": report_to_wire(report)}

    @app.post("/api/session/start")
    def session_start(body: SessionRequest):
        try:
            mood = Mood.from_wire(body.mood)
        except ValueError as exc:
            return _error(400, ErrorCode.MALFORMED, str(exc))
        pipeline.register_user(store, body.uid)
        with user_lock(body.uid):
            try:
                session = sessions.start_session(body.uid, mood, datetime.now(timezone.utc))
            except AlreadyWatching as exc:
                return _error(409, ErrorCode.STATE_CONFLICT, str(exc))
        return {"ok": True, "session": _session_record(session).model_dump(by_alias=True, exclude_none=True)}

    @app.post("/api/session/stop")
    def session_stop(body: SessionRequest):
        try:
            mood = Mood.from_wire(body.mood)
        except ValueError as exc:
            return _error(400, ErrorCode.MALFORMED, str(exc))
        with user_lock(body.uid):
            try:
                session = sessions.stop_session(body.uid, mood, datetime.now(timezone.utc))
            except NotWatching as exc:
                return _error(409, ErrorCode.STATE_CONFLICT, str(exc))
            except ClockSkew as exc:
                return _error(409, ErrorCode.STATE_CONFLICT, str(exc))
        return {"ok": True, "session": _session_record(session).model_dump(by_alias=True, exclude_none=True)}

    @app.get("/api/session/state")
    def session_state(uid: str):
        watching = sessions.is_watching(uid, datetime.now(timezone.utc))
        return {"ok": True, "watching": watching}

    return app
