"""Mood session state machine: start/stop recording with mood change status.

A session is keyed by its start time rendered as a local wall-clock string;
the stop data is merged into the same document. A user has at most one open
session at a time; violating transitions raise with the exact alert texts
the UI shows ("You are already watching" / "You are not watching anything").
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Optional, Sequence

from .ingest import DEFAULT_ZONE, LOCAL_FORMAT, render_local
from .store import Document, DocumentStore

# Wire field names for Mood Records documents.
F_BEFORE = "Before Watch Mood"
F_START = "Start Watch Time"
F_AFTER = "After Watch Mood"
F_STOP = "Stop Watch Time"
F_STATUS = "Mood Change Status"
F_ABANDONED = "Abandoned"

ALREADY_WATCHING_MSG = "You are already watching"
NOT_WATCHING_MSG = "You are not watching anything"

ABANDON_AFTER = timedelta(hours=24)


class Mood(enum.Enum):
    GOOD = "Good"
    OKAY = "Okay"
    NOT_GOOD = "Not good"

    @property
    def rank(self) -> int:
        return {Mood.NOT_GOOD: 0, Mood.OKAY: 1, Mood.GOOD: 2}[self]

    @property
    def wire(self) -> str:
        return self.value

    @classmethod
    def from_wire(cls, text: str) -> "Mood":
        for mood in cls:
            if mood.value == text:
                return mood
        raise ValueError(f"unknown mood {text!r}")


class ChangeStatus(enum.Enum):
    BETTER = "Better"
    SAME = "Same"
    WORSE = "Worse"


class SessionError(Exception):
    pass


class AlreadyWatching(SessionError):
    def __init__(self):
        super().__init__(ALREADY_WATCHING_MSG)


class NotWatching(SessionError):
    def __init__(self):
        super().__init__(NOT_WATCHING_MSG)


class ClockSkew(SessionError):
    pass


def change_status(before: Mood, after: Mood) -> ChangeStatus:
    """Better/Same/Worse from the mood ordinal difference."""
    if after.rank > before.rank:
        return ChangeStatus.BETTER
    if after.rank < before.rank:
        return ChangeStatus.WORSE
    return ChangeStatus.SAME


@dataclass(frozen=True)
class MoodSession:
    """One start/stop viewing episode. Complete or open, never partial."""

    id: str  # equals start_local
    start_local: str
    before: Mood
    stop_local: Optional[str] = None
    after: Optional[Mood] = None
    status: Optional[ChangeStatus] = None

    def __post_init__(self):
        stop_fields = (self.stop_local, self.after, self.status)
        if any(f is None for f in stop_fields) and any(f is not None for f in stop_fields):
            raise ValueError("session must be fully open or fully complete")
        if self.status is not None and self.status != change_status(self.before, self.after):
            raise ValueError("status inconsistent with before/after moods")

    @property
    def complete(self) -> bool:
        return self.stop_local is not None

    @property
    def start_date(self) -> str:
        return self.start_local[:10]

    def to_doc(self) -> Document:
        doc: Document = {F_BEFORE: self.before.wire, F_START: self.start_local}
        if self.complete:
            doc[F_AFTER] = self.after.wire
            doc[F_STOP] = self.stop_local
            doc[F_STATUS] = self.status.value
        return doc

    @classmethod
    def from_doc(cls, name: str, doc: Document) -> "MoodSession":
        after = doc.get(F_AFTER)
        return cls(
            id=name,
            start_local=str(doc[F_START]),
            before=Mood.from_wire(str(doc[F_BEFORE])),
            stop_local=str(doc[F_STOP]) if after is not None else None,
            after=Mood.from_wire(str(after)) if after is not None else None,
            status=ChangeStatus(str(doc[F_STATUS])) if after is not None else None,
        )


def _mood_records_path(uid: str) -> list[str]:
    return ["Users", uid, "Mood Records"]


class SessionService:
    """Per-user start/stop transitions persisted through the document store.

    State is derived from the store, so a restart cannot lose an open
    session. Open sessions older than 24 hours are marked Abandoned: they
    stop blocking a new start and reports exclude them.
    """

    def __init__(self, store: DocumentStore, zone: str = DEFAULT_ZONE):
        self.store = store
        self.zone = zone

    def _open_session(self, uid: str, now: datetime) -> Optional[tuple[str, Document]]:
        for name, doc in self.store.list_collection(_mood_records_path(uid)):
            if F_AFTER in doc or doc.get(F_ABANDONED):
                continue
            started = datetime.strptime(str(doc[F_START]), LOCAL_FORMAT)
            local_now = datetime.strptime(render_local(now, self.zone), LOCAL_FORMAT)
            if local_now - started > ABANDON_AFTER:
                self.store.update_fields(_mood_records_path(uid) + [name], {F_ABANDONED: True})
                continue
            return name, doc
        return None

    def start_session(self, uid: str, mood: Mood, now: datetime) -> MoodSession:
        if self._open_session(uid, now) is not None:
            raise AlreadyWatching()
        start_local = render_local(now, self.zone)
        session = MoodSession(id=start_local, start_local=start_local, before=mood)
        path = _mood_records_path(uid) + [session.id]
        if self.store.has_document(path):
            # two starts rendering the same local second collide on the id
            raise AlreadyWatching()
        self.store.put_document(path, session.to_doc())
        return session

    def stop_session(self, uid: str, mood: Mood, now: datetime) -> MoodSession:
        found = self._open_session(uid, now)
        if found is None:
            raise NotWatching()
        name, doc = found
        stop_local = render_local(now, self.zone)
        if stop_local < str(doc[F_START]):
            raise ClockSkew(f"stop {stop_local} precedes start {doc[F_START]}")
        before = Mood.from_wire(str(doc[F_BEFORE]))
        status = change_status(before, mood)
        self.store.update_fields(
            _mood_records_path(uid) + [name],
            {F_AFTER: mood.wire, F_STOP: stop_local, F_STATUS: status.value},
        )
        return MoodSession(
            id=name,
            start_local=str(doc[F_START]),
            before=before,
            stop_local=stop_local,
            after=mood,
            status=status,
        )

    def is_watching(self, uid: str, now: datetime) -> bool:
        return self._open_session(uid, now) is not None


def load_sessions(store: DocumentStore, uid: str) -> list[MoodSession]:
    """All parseable sessions for a user, chronological, abandoned excluded."""
    sessions = []
    for name, doc in store.list_collection(_mood_records_path(uid)):
        if doc.get(F_ABANDONED):
            continue
        sessions.append(MoodSession.from_doc(name, doc))
    return sessions
