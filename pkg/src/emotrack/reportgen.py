"""Correlate watch events with mood sessions into per-session details and
per-day summaries.

An event belongs to a session when its local timestamp falls inside the
inclusive [start, stop] window. Details are keyed under the session's start
date (sessions crossing midnight attach wholly to the start date); daily
summaries count session statuses and sum video counts. Generated reports
overwrite prior stored ones for the same dates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Callable, Optional, Sequence

from .ingest import WatchEvent
from .session import ChangeStatus, MoodSession
from .store import Document, DocumentStore

# Wire field names for report documents.
F_BETTER = "Better"
F_SAME = "Same"
F_WORSE = "Worse"
F_TOTAL = "Watch Total Number"
F_STATUS = "Mood Change Status"

EventCategorizer = Callable[[WatchEvent], str]


class ReportError(Exception):
    pass


class InvalidRange(ReportError):
    pass


@dataclass(frozen=True)
class TimeRange:
    start: date
    end: date

    def __post_init__(self):
        if self.start > self.end:
            raise InvalidRange(f"{self.start} > {self.end}")

    def __contains__(self, day: date) -> bool:
        return self.start <= day <= self.end


class RangePreset(enum.Enum):
    LAST_WEEK = "lastweek"
    LAST_MONTH = "lastmonth"
    LAST_THREE_MONTHS = "last3months"
    LAST_HALF_YEAR = "halfyear"


_PRESET_DAYS = {
    RangePreset.LAST_WEEK: 6,
    RangePreset.LAST_MONTH: 29,
    RangePreset.LAST_THREE_MONTHS: 89,
    RangePreset.LAST_HALF_YEAR: 181,
}


def resolve_range(
    preset: Optional[RangePreset],
    today: date,
    custom: Optional[tuple[date, date]] = None,
) -> TimeRange:
    """Preset windows end at today inclusive; LastWeek spans seven dates."""
    if custom is not None:
        return TimeRange(custom[0], custom[1])
    if preset is None:
        raise InvalidRange("neither preset nor custom range given")
    return TimeRange(today - timedelta(days=_PRESET_DAYS[preset]), today)


@dataclass(frozen=True)
class SessionDetail:
    session_id: str
    status: ChangeStatus
    video_count: int
    category_counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.video_count != sum(self.category_counts.values()):
            raise ValueError("video_count must equal the sum of category counts")


@dataclass(frozen=True)
class DailySummary:
    day: date
    better: int = 0
    same: int = 0
    worse: int = 0
    total_videos: int = 0


def videos_in_session(session: MoodSession, events: Sequence[WatchEvent]) -> list[WatchEvent]:
    """Events whose local time lies in [start, stop], both inclusive.

    The fixed "YYYY-MM-DD HH:MM:SS" format makes lexicographic comparison
    chronological. Input order is preserved.
    """
    if not session.complete:
        raise ValueError("session is not complete")
    return [
        e for e in events
        if session.start_local <= e.watched_at_local <= session.stop_local
    ]


def build_detail(
    session: MoodSession,
    events: Sequence[WatchEvent],
    categorize_event: EventCategorizer,
) -> SessionDetail:
    """Count each in-window event once under its category."""
    counts: dict[str, int] = {}
    in_window = videos_in_session(session, events)
    for event in in_window:
        label = categorize_event(event)
        counts[label] = counts.get(label, 0) + 1
    return SessionDetail(
        session_id=session.id,
        status=session.status,
        video_count=len(in_window),
        category_counts=counts,
    )


def build_summary(day: date, details: Sequence[SessionDetail]) -> DailySummary:
    statuses = [d.status for d in details]
    return DailySummary(
        day=day,
        better=statuses.count(ChangeStatus.BETTER),
        same=statuses.count(ChangeStatus.SAME),
        worse=statuses.count(ChangeStatus.WORSE),
        total_videos=sum(d.video_count for d in details),
    )


Report = dict[date, tuple[DailySummary, list[SessionDetail]]]


def build_report(
    uid: str,
    time_range: TimeRange,
    events: Sequence[WatchEvent],
    sessions: Sequence[MoodSession],
    categorize_event: EventCategorizer,
    store: Optional[DocumentStore] = None,
) -> Report:
    """Per-date summaries and details for completed sessions starting in range.

    Dates with no sessions are absent from the map. When a store is given,
    the results are written to the user's Analysis Report collection,
    overwriting prior reports for the same dates.
    """
    by_date: dict[date, list[SessionDetail]] = {}
    for session in sessions:
        if not session.complete:
            continue
        day = date.fromisoformat(session.start_date)
        if day not in time_range:
            continue
        by_date.setdefault(day, []).append(build_detail(session, events, categorize_event))

    report: Report = {}
    for day in sorted(by_date):
        details = by_date[day]
        summary = build_summary(day, details)
        assert summary.total_videos == sum(d.video_count for d in details)
        report[day] = (summary, details)

    if store is not None:
        persist_report(store, uid, report)
    return report


def persist_report(store: DocumentStore, uid: str, report: Report) -> None:
    """Write Details and Summary documents under Analysis Report/{date}."""
    for day, (summary, details) in report.items():
        base = ["Users", uid, "Analysis Report", day.isoformat()]
        for detail in details:
            doc: Document = {F_STATUS: detail.status.value, F_TOTAL: detail.video_count}
            doc.update(detail.category_counts)
            store.put_document(base + ["Details", detail.session_id], doc)
        store.put_document(
            base + ["Summary", day.isoformat()],
            {
                F_BETTER: summary.better,
                F_SAME: summary.same,
                F_WORSE: summary.worse,
                F_TOTAL: summary.total_videos,
            },
        )


def report_to_wire(report: Report) -> dict[str, dict]:
    """JSON-ready shape keyed by ISO date, field names per the store layout."""
    wire: dict[str, dict] = {}
    for day, (summary, details) in report.items():
        wire[day.isoformat()] = {
            F_BETTER: summary.better,
            F_SAME: summary.same,
            F_WORSE: summary.worse,
            F_TOTAL: summary.total_videos,
            "Details": [
                {
                    "Session": d.session_id,
                    F_STATUS: d.status.value,
                    F_TOTAL: d.video_count,
                    "Video Category": dict(d.category_counts),
                }
                for d in details
            ],
        }
    return wire
