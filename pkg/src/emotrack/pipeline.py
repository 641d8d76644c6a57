"""Glue between the parsing/reporting core and the document store.

The store layout per user:

* ``Users/{uid}/Mood Records/{startLocal}`` — mood sessions,
* ``Users/{uid}/YouTube Watch History/{isoWatchTime}`` — one document per
  event holding the URL and the converted local-time string,
* ``Users/{uid}/Analysis Report/{date}/...`` — generated reports.
"""

from __future__ import annotations

from typing import Callable, Optional, Union

from .categorize import UNKNOWN_LABEL, Categorizer, categorize
from .ingest import (
    DEFAULT_ZONE,
    Skipped,
    WatchEvent,
    events_from_takeout,
    parse_instant,
)
from .metadata import MetadataProvider, extract_video_id
from .store import DocumentStore

HISTORY_COLLECTION = "YouTube Watch History"
PROFILE_DOC = "Profile"

F_URL = "url"
F_TIME = "time"


def _history_path(uid: str) -> list[str]:
    return ["Users", uid, HISTORY_COLLECTION]


def _iso_key(event: WatchEvent) -> str:
    return event.watched_at_utc.strftime("%Y-%m-%dT%H:%M:%SZ")


def register_user(store: DocumentStore, uid: str) -> None:
    store.put_document(["Users", uid, "Meta", PROFILE_DOC], {"uid": uid})


def user_exists(store: DocumentStore, uid: str) -> bool:
    return store.has_document(["Users", uid, "Meta", PROFILE_DOC])


def ingest_into_store(
    store: DocumentStore, uid: str, content: bytes, zone: str = DEFAULT_ZONE
) -> tuple[int, int]:
    """Parse an export and write one event document per watch.

    Returns (ingested, skipped). Documents are keyed by the ISO watch time,
    so replaying the same file overwrites with identical contents.
    """
    events, skipped = events_from_takeout(content, zone)
    for event in events:
        store.put_document(
            _history_path(uid) + [_iso_key(event)],
            {F_URL: event.url, F_TIME: event.watched_at_local},
        )
    return len(events), len(skipped)


def load_events(store: DocumentStore, uid: str) -> list[WatchEvent]:
    """Rebuild watch events from stored history documents, chronological."""
    events = []
    for index, (name, doc) in enumerate(store.list_collection(_history_path(uid))):
        url = str(doc.get(F_URL, ""))
        video_id = extract_video_id(url)
        events.append(
            WatchEvent(
                video_id=video_id or "",
                url=url,
                watched_at_utc=parse_instant(name),
                watched_at_local=str(doc.get(F_TIME, "")),
                is_short="/shorts/" in url,
                source_index=index,
            )
        )
    return events


def make_event_categorizer(
    provider: MetadataProvider, impl: Categorizer
) -> Callable[[WatchEvent], str]:
    """Compose metadata lookup and categorization, memoized per video id."""
    cache: dict[str, str] = {}

    def categorize_event(event: WatchEvent) -> str:
        if not event.video_id:
            return UNKNOWN_LABEL
        if event.video_id not in cache:
            cache[event.video_id] = categorize(provider.fetch(event.video_id), impl)
        return cache[event.video_id]

    return categorize_event
