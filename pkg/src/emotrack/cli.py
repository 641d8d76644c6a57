"""Operator command line: ingest exports, record sessions, print reports,
compute stats, score SUS sheets, and run the HTTP service.

Exit codes: 0 success, 2 usage/input error, 3 session state conflict.
The CLI drives the same core as the service, so both paths write identical
store contents for identical inputs.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from datetime import date, datetime, timezone
from pathlib import Path

import click

from . import pipeline
from .analytics import (
    EmptyInput,
    InvalidResponse,
    SusResponse,
    frequency_class,
    long_short_split,
    mood_change_distribution,
    period_histogram,
    start_mood_distribution,
    sus_score,
)
from .categorize import KeywordCategorizer
from .ingest import DEFAULT_ZONE, IngestError, UnknownZone, render_local
from .metadata import FixtureProvider
from .reportgen import (
    InvalidRange,
    RangePreset,
    TimeRange,
    build_report,
    report_to_wire,
    resolve_range,
)
from .service.app import ServiceConfig, create_app
from .session import Mood, SessionError, SessionService, load_sessions
from .store import DocumentStore

EXIT_USAGE = 2
EXIT_CONFLICT = 3

_MOOD_WORDS = {"good": Mood.GOOD, "okay": Mood.OKAY, "notgood": Mood.NOT_GOOD}


def _store(data_dir: str) -> DocumentStore:
    return DocumentStore(data_dir)


data_dir_option = click.option(
    "--data-dir",
    envvar="EMOTRACK_DATA_DIR",
    default="./emotrack-data",
    show_default=True,
    help="Store root (env EMOTRACK_DATA_DIR).",
)


@click.group()
def main():
    """Mood-aware YouTube watch tracking."""


@main.command()
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--user", "uid", required=True)
@click.option("--zone", default=DEFAULT_ZONE, show_default=True)
@data_dir_option
def ingest(file: Path, uid: str, zone: str, data_dir: str):
    """Ingest a Takeout watch-history JSON file for a user."""
    if not file.is_file():
        click.echo(f"error: no such file: {file}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        render_local(datetime.now(timezone.utc), zone)  # validate zone up front
    except UnknownZone:
        click.echo(f"error: unknown timezone: {zone}", err=True)
        sys.exit(EXIT_USAGE)
    store = _store(data_dir)
    pipeline.register_user(store, uid)
    try:
        ingested, skipped = pipeline.ingest_into_store(store, uid, file.read_bytes(), zone)
    except IngestError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(json.dumps({"ingested": ingested, "skipped": skipped}))


@main.command()
@click.argument("action", type=click.Choice(["start", "stop"]))
@click.option("--user", "uid", required=True)
@click.option("--mood", required=True)
@click.option("--zone", default=DEFAULT_ZONE, show_default=True)
@data_dir_option
def session(action: str, uid: str, mood: str, zone: str, data_dir: str):
    """Record the start or stop of a viewing session."""
    word = _MOOD_WORDS.get(mood.lower().replace(" ", "").replace("_", ""))
    if word is None:
        click.echo(f"error: invalid mood {mood!r} (good|okay|notgood)", err=True)
        sys.exit(EXIT_USAGE)
    store = _store(data_dir)
    pipeline.register_user(store, uid)
    service = SessionService(store, zone)
    now = datetime.now(timezone.utc)
    try:
        if action == "start":
            record = service.start_session(uid, word, now)
        else:
            record = service.stop_session(uid, word, now)
    except SessionError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_CONFLICT)
    click.echo(json.dumps({"id": record.id, **record.to_doc()}))


@main.command()
@click.option("--user", "uid", required=True)
@click.option("--preset", type=click.Choice([p.value for p in RangePreset]))
@click.option("--from", "start", type=str)
@click.option("--to", "end", type=str)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
@click.option("--zone", default=DEFAULT_ZONE, show_default=True)
@click.option("--fixture", type=click.Path(exists=True, path_type=Path), help="Metadata fixture table.")
@data_dir_option
def report(uid, preset, start, end, fmt, zone, fixture, data_dir):
    """Generate and print the mood/watch report for a time range."""
    try:
        if preset:
            time_range = resolve_range(RangePreset(preset), date.today())
        elif start and end:
            time_range = TimeRange(date.fromisoformat(start), date.fromisoformat(end))
        else:
            click.echo("error: give --preset or both --from and --to", err=True)
            sys.exit(EXIT_USAGE)
    except (ValueError, InvalidRange) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)

    store = _store(data_dir)
    events = pipeline.load_events(store, uid)
    sessions = load_sessions(store, uid)
    provider = FixtureProvider(fixture) if fixture else _NoMetadata()
    categorize_event = pipeline.make_event_categorizer(provider, KeywordCategorizer())
    result = build_report(uid, time_range, events, sessions, categorize_event, store)
    if not result:
        click.echo("no data")
        return
    wire = report_to_wire(result)
    if fmt == "json":
        click.echo(json.dumps(wire, indent=2, sort_keys=True))
    else:
        _print_table(wire)


class _NoMetadata:
    def fetch(self, video_id):
        from .metadata import UNAVAILABLE

        return UNAVAILABLE


def _print_table(wire: dict) -> None:
    header = f"{'Date':<12}{'Better':>8}{'Same':>8}{'Worse':>8}{'Videos':>8}"
    click.echo(header)
    click.echo("-" * len(header))
    for day in sorted(wire):
        row = wire[day]
        click.echo(
            f"{day:<12}{row['Better']:>8}{row['Same']:>8}"
            f"{row['Worse']:>8}{row['Watch Total Number']:>8}"
        )


@main.command()
@click.option("--user", "uid", required=True)
@click.option("--from", "start", type=str, required=True)
@click.option("--to", "end", type=str, required=True)
@data_dir_option
def stats(uid, start, end, data_dir):
    """Usage statistics over the given date range."""
    try:
        time_range = TimeRange(date.fromisoformat(start), date.fromisoformat(end))
    except (ValueError, InvalidRange) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    store = _store(data_dir)
    events = [
        e for e in pipeline.load_events(store, uid)
        if time_range.start.isoformat() <= e.watched_at_local[:10] <= time_range.end.isoformat()
    ]
    sessions = [
        s for s in load_sessions(store, uid)
        if time_range.start.isoformat() <= s.start_date <= time_range.end.isoformat()
    ]
    days_watched = min(7, len({e.watched_at_local[:10] for e in events}))
    short, long_ = long_short_split(events)
    out = {
        "daysWatched": days_watched,
        "frequencyClass": frequency_class(days_watched).value,
        "periodHistogram": {p.value: n for p, n in period_histogram(events).items()},
        "shortCount": short,
        "longCount": long_,
    }
    try:
        out["moodChangeDist"] = {
            s.value: f for s, f in mood_change_distribution(sessions).items()
        }
        out["startMoodDist"] = {m.wire: f for m, f in start_mood_distribution(sessions).items()}
    except EmptyInput:
        pass
    click.echo(json.dumps(out, indent=2))


@main.command()
@click.argument("csvfile", type=click.Path(path_type=Path))
def sus(csvfile: Path):
    """Score a SUS questionnaire CSV (one respondent per row, 10 columns)."""
    if not csvfile.is_file():
        click.echo(f"error: no such file: {csvfile}", err=True)
        sys.exit(EXIT_USAGE)
    responses = []
    try:
        with open(csvfile, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or not row[0].strip():
                    continue
                if not row[0].strip().lstrip("-").isdigit():
                    continue  # header row
                responses.append(SusResponse(tuple(int(c.strip()) for c in row)))
        per_respondent, mean = sus_score(responses)
    except (ValueError, InvalidResponse) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(json.dumps({"perRespondent": per_respondent, "mean": round(mean, 2)}))


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--allow-origin", default="http://localhost:5173", show_default=True)
@click.option("--zone", default=DEFAULT_ZONE, show_default=True)
@click.option("--categorizer", type=click.Choice(["keyword", "llm"]), default="keyword")
@click.option("--metadata", type=click.Choice(["fixture", "remote"]), default="fixture")
@click.option("--fixture", type=click.Path(path_type=Path))
@data_dir_option
def serve(port, host, allow_origin, zone, categorizer, metadata, fixture, data_dir):
    """Run the HTTP service until interrupted."""
    import uvicorn

    config = ServiceConfig(
        data_dir=Path(data_dir),
        zone=zone,
        allow_origin=allow_origin,
        categorizer_mode=categorizer,
        metadata_mode=metadata,
        fixture_path=fixture,
        youtube_api_key=os.environ.get("YOUTUBE_API_KEY", ""),
        llm_api_key=os.environ.get("OPENAI_API_KEY", ""),
    )
    try:
        uvicorn.run(create_app(config), host=host, port=port)
    except SystemExit:
        raise
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
