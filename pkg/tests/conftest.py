from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

import pytest

from emotrack.ingest import WatchEvent
from emotrack.session import ChangeStatus, Mood, MoodSession, change_status
from emotrack.store import DocumentStore

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def store(tmp_path):
    return DocumentStore(tmp_path / "data")


def make_event(local: str, video_id: str = "vid01", is_short: bool = False, index: int = 0):
    """Watch event with a given local wall-clock string; UTC is synthesized
    from the same wall clock (sufficient for window tests)."""
    return WatchEvent(
        video_id=video_id,
        url=(
            f"https://www.youtube.com/shorts/{video_id}"
            if is_short
            else f"https://www.youtube.com/watch?v={video_id}"
        ),
        watched_at_utc=datetime.strptime(local, "%Y-%m-%d %H:%M:%S").replace(
            tzinfo=timezone.utc
        ),
        watched_at_local=local,
        is_short=is_short,
        source_index=index,
    )


def make_session(start: str, stop: str, before: Mood = Mood.OKAY, after: Mood = Mood.GOOD):
    return MoodSession(
        id=start,
        start_local=start,
        before=before,
        stop_local=stop,
        after=after,
        status=change_status(before, after),
    )


STATUS_MOODS = {
    ChangeStatus.BETTER: (Mood.OKAY, Mood.GOOD),
    ChangeStatus.SAME: (Mood.OKAY, Mood.OKAY),
    ChangeStatus.WORSE: (Mood.OKAY, Mood.NOT_GOOD),
}


def session_with_status(start: str, stop: str, status: ChangeStatus) -> MoodSession:
    before, after = STATUS_MOODS[status]
    return make_session(start, stop, before, after)
