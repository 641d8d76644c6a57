import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emotrack.ingest import (
    MalformedDocument,
    MissingField,
    InvalidTimestamp,
    Skipped,
    UnknownZone,
    convert_time,
    events_from_takeout,
    parse_takeout,
    to_watch_event,
    RawTakeoutEntry,
)

from conftest import FIXTURES


def test_empty_export():
    assert parse_takeout(b"[]") == []


def test_direct_field_mapping():
    entry = {
        "header": "YouTube",
        "title": "Watched X",
        "titleUrl": "https://www.youtube.com/watch?v=abc123",
        "time": "2024-01-15T12:00:00Z",
    }
    [parsed] = parse_takeout(json.dumps([entry]).encode())
    assert parsed.header == "YouTube"
    assert parsed.title == "Watched X"
    assert parsed.title_url == "https://www.youtube.com/watch?v=abc123"
    assert parsed.time == "2024-01-15T12:00:00Z"


def test_missing_time_rejected():
    with pytest.raises(MissingField) as exc:
        parse_takeout(b'[{"header": "YouTube", "title": "Watched X"}]')
    assert exc.value.field == "time"
    assert exc.value.index == 0


def test_missing_title_url_is_yielded():
    [entry] = parse_takeout(b'[{"header": "h", "title": "t", "time": "2024-01-15T12:00:00Z"}]')
    assert entry.title_url is None


def test_not_an_array():
    with pytest.raises(MalformedDocument):
        parse_takeout(b'{"a": 1}')


def test_syntax_error_carries_offset():
    with pytest.raises(MalformedDocument) as exc:
        parse_takeout(b"[tru")
    assert exc.value.offset >= 0


class TestConvertTime:
    def test_winter_offset_zero(self):
        assert convert_time("2024-01-15T12:00:00Z", "Europe/London") == "2024-01-15 12:00:00"

    def test_bst_offset(self):
        # Europe/London is UTC+1 on 2024-04-22 (confirmed against the tz db)
        assert convert_time("2024-04-22T19:30:00Z", "Europe/London") == "2024-04-22 20:30:00"

    def test_spring_forward_boundary(self):
        assert convert_time("2024-03-31T00:59:59Z", "Europe/London") == "2024-03-31 00:59:59"
        assert convert_time("2024-03-31T01:00:00Z", "Europe/London") == "2024-03-31 02:00:00"

    def test_fractional_seconds_truncated(self):
        assert convert_time("2024-01-15T12:00:00.999Z", "Europe/London") == "2024-01-15 12:00:00"

    def test_invalid_timestamp(self):
        with pytest.raises(InvalidTimestamp):
            convert_time("yesterday", "Europe/London")

    def test_unknown_zone(self):
        with pytest.raises(UnknownZone):
            convert_time("2024-01-15T12:00:00Z", "Mars/Olympus_Mons")


class TestToWatchEvent:
    def entry(self, url):
        return RawTakeoutEntry(header="YouTube", title="t", time="2024-01-15T12:00:00Z", title_url=url)

    def test_watch_url(self):
        event = to_watch_event(self.entry("https://www.youtube.com/watch?v=abc123"))
        assert event.video_id == "abc123"
        assert event.is_short is False

    def test_shorts_url(self):
        event = to_watch_event(self.entry("https://www.youtube.com/shorts/xyz789"))
        assert event.video_id == "xyz789"
        assert event.is_short is True

    def test_no_url_skipped(self):
        result = to_watch_event(self.entry(None))
        assert isinstance(result, Skipped)
        assert result.reason == "no url"

    def test_music_host_skipped(self):
        result = to_watch_event(self.entry("https://music.youtube.com/watch?v=abc"))
        assert isinstance(result, Skipped)

    def test_foreign_host_skipped(self):
        result = to_watch_event(self.entry("https://example.com/watch?v=zzz"))
        assert isinstance(result, Skipped)


def test_fixture_corpus_counts():
    events, skipped = events_from_takeout((FIXTURES / "watch_history" / "mixed.json").read_bytes())
    assert len(events) == 5 and not skipped
    assert [e.is_short for e in events] == [False, True, False, False, True]

    events, skipped = events_from_takeout(
        (FIXTURES / "watch_history" / "missing_url.json").read_bytes()
    )
    assert len(events) == 3 and len(skipped) == 1


def test_order_preserved_and_source_index_increasing():
    events, _ = events_from_takeout((FIXTURES / "watch_history" / "mixed.json").read_bytes())
    indexes = [e.source_index for e in events]
    assert indexes == sorted(indexes)


def test_duplicates_kept_once():
    entry = {
        "header": "YouTube",
        "title": "t",
        "titleUrl": "https://www.youtube.com/watch?v=abc123",
        "time": "2024-01-15T12:00:00Z",
    }
    events, skipped = events_from_takeout(json.dumps([entry, entry]).encode())
    assert len(events) == 1 and not skipped


def test_local_utc_consistency():
    events, _ = events_from_takeout((FIXTURES / "watch_history" / "mixed.json").read_bytes())
    for event in events:
        iso = event.watched_at_utc.strftime("%Y-%m-%dT%H:%M:%SZ")
        assert convert_time(iso) == event.watched_at_local


@settings(max_examples=200)
@given(st.binary(max_size=512))
def test_parser_never_crashes(blob):
    try:
        parse_takeout(blob)
    except (MalformedDocument, MissingField):
        pass


@settings(max_examples=100)
@given(st.binary(max_size=256))
def test_determinism(blob):
    def run(data):
        try:
            return events_from_takeout(data)
        except (MalformedDocument, MissingField, InvalidTimestamp):
            return "error"

    assert run(blob) == run(blob)
