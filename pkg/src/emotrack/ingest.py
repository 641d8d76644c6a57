"""Parse Google Takeout ``watch-history.json`` exports into watch events.

The export is a UTF-8 JSON array of entry objects. Each entry carries the
watch instant as an ISO 8601 UTC timestamp; we render it to a local
wall-clock string ("YYYY-MM-DD HH:MM:SS") in a configurable IANA zone,
honoring DST. Entries without a URL (removed videos) or with non-YouTube
hosts become ``Skipped`` records instead of aborting the batch.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Union
from urllib.parse import parse_qs, urlparse
from zoneinfo import ZoneInfo, ZoneInfoNotFoundError

DEFAULT_ZONE = "Europe/London"
LOCAL_FORMAT = "%Y-%m-%d %H:%M:%S"

_VIDEO_ID_RE = re.compile(r"^[0-9A-Za-z_-]+$")
_YOUTUBE_HOSTS = frozenset({"www.youtube.com", "youtube.com"})


class IngestError(Exception):
    pass


class MalformedDocument(IngestError):
    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MissingField(IngestError):
    def __init__(self, index: int, fieldname: str):
        super().__init__(f"entry {index} is missing required field {fieldname!r}")
        self.index = index
        self.field = fieldname


class InvalidTimestamp(IngestError):
    pass


class UnknownZone(IngestError):
    pass


@dataclass(frozen=True)
class RawTakeoutEntry:
    header: str
    title: str
    time: str
    title_url: Optional[str] = None
    subtitles: tuple[dict, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class WatchEvent:
    video_id: str
    url: str
    watched_at_utc: datetime
    watched_at_local: str
    is_short: bool
    source_index: int


@dataclass(frozen=True)
class Skipped:
    reason: str
    source_index: int


def parse_takeout(content: bytes) -> list[RawTakeoutEntry]:
    """Parse export bytes into raw entries, preserving file order.

    Entries lacking ``titleUrl`` are still yielded (they represent removed
    videos and are skipped later); entries lacking ``time`` are rejected.
    """
    try:
        document = json.loads(content.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise MalformedDocument("not valid UTF-8", exc.start) from exc
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, exc.pos) from exc
    if not isinstance(document, list):
        raise MalformedDocument("top level is not an array")

    entries = []
    for index, item in enumerate(document):
        if not isinstance(item, dict):
            raise MalformedDocument(f"entry {index} is not an object")
        if "time" not in item:
            raise MissingField(index, "time")
        entries.append(
            RawTakeoutEntry(
                header=str(item.get("header", "")),
                title=str(item.get("title", "")),
                time=str(item["time"]),
                title_url=item.get("titleUrl"),
                subtitles=tuple(item.get("subtitles") or ()),
            )
        )
    return entries


def parse_instant(iso: str) -> datetime:
    """Parse an ISO 8601 instant to an aware UTC datetime."""
    text = iso.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise InvalidTimestamp(f"not an ISO 8601 instant: {iso!r}") from exc
    if parsed.tzinfo is None:
        raise InvalidTimestamp(f"timestamp lacks a UTC marker: {iso!r}")
    return parsed.astimezone(timezone.utc)


def convert_time(iso: str, zone: str = DEFAULT_ZONE) -> str:
    """Render an ISO UTC instant as a local wall-clock string.

    Fractional seconds are truncated, not rounded, so the string matches
    the second-precision document key format.
    """
    instant = parse_instant(iso)
    return render_local(instant, zone)


def render_local(instant: datetime, zone: str = DEFAULT_ZONE) -> str:
    try:
        tz = ZoneInfo(zone)
    except (ZoneInfoNotFoundError, ValueError) as exc:
        raise UnknownZone(zone) from exc
    return instant.astimezone(tz).strftime(LOCAL_FORMAT)


def to_watch_event(
    entry: RawTakeoutEntry, zone: str = DEFAULT_ZONE, index: int = 0
) -> Union[WatchEvent, Skipped]:
    """Turn one raw entry into a watch event, or a Skipped record.

    Non-conforming entries (no URL, non-YouTube host, no extractable video
    id) never abort the batch.
    """
    if not entry.title_url:
        return Skipped("no url", index)
    parsed = urlparse(entry.title_url)
    if parsed.netloc not in _YOUTUBE_HOSTS:
        return Skipped(f"non-YouTube host {parsed.netloc!r}", index)
    video_id, is_short = _id_from_url(parsed)
    if video_id is None or not _VIDEO_ID_RE.match(video_id):
        return Skipped("no video id in url", index)
    instant = parse_instant(entry.time)
    return WatchEvent(
        video_id=video_id,
        url=entry.title_url,
        watched_at_utc=instant,
        watched_at_local=render_local(instant, zone),
        is_short=is_short,
        source_index=index,
    )


def _id_from_url(parsed) -> tuple[Optional[str], bool]:
    if parsed.path.startswith("/shorts/"):
        segment = parsed.path[len("/shorts/"):].split("/")[0]
        return (segment or None), True
    if parsed.path == "/watch":
        return parse_qs(parsed.query).get("v", [None])[0], False
    return None, False


def events_from_takeout(
    content: bytes, zone: str = DEFAULT_ZONE
) -> tuple[list[WatchEvent], list[Skipped]]:
    """Full ingest: parse, convert, and deduplicate.

    Duplicates (same video id at the identical instant) are kept once;
    the store keys event documents by watch time, so later duplicates
    would overwrite earlier ones anyway.
    """
    events: list[WatchEvent] = []
    skipped: list[Skipped] = []
    seen: set[tuple[str, datetime]] = set()
    for index, entry in enumerate(parse_takeout(content)):
        result = to_watch_event(entry, zone, index)
        if isinstance(result, Skipped):
            skipped.append(result)
            continue
        key = (result.video_id, result.watched_at_utc)
        if key in seen:
            continue
        seen.add(key)
        events.append(result)
    return events, skipped
