import json

import pytest
from click.testing import CliRunner

from emotrack.cli import main

from conftest import FIXTURES


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def data_dir(tmp_path, monkeypatch):
    d = tmp_path / "data"
    monkeypatch.setenv("EMOTRACK_DATA_DIR", str(d))
    return d


def test_ingest_counts(runner, data_dir):
    result = runner.invoke(
        main, ["ingest", str(FIXTURES / "watch_history" / "missing_url.json"), "--user", "u1"]
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.output) == {"ingested": 3, "skipped": 1}


def test_ingest_missing_file(runner, data_dir):
    result = runner.invoke(main, ["ingest", "/nope/none.json", "--user", "u1"])
    assert result.exit_code == 2


def test_ingest_bad_zone(runner, data_dir):
    result = runner.invoke(
        main,
        ["ingest", str(FIXTURES / "watch_history" / "empty.json"), "--user", "u1", "--zone", "Nowhere/City"],
    )
    assert result.exit_code == 2


def test_session_stop_first_conflict(runner, data_dir):
    result = runner.invoke(main, ["session", "stop", "--user", "u1", "--mood", "good"])
    assert result.exit_code == 3
    assert "You are not watching anything" in result.output


def test_session_start_stop(runner, data_dir):
    start = runner.invoke(main, ["session", "start", "--user", "u1", "--mood", "okay"])
    assert start.exit_code == 0, start.output
    stop = runner.invoke(main, ["session", "stop", "--user", "u1", "--mood", "good"])
    assert stop.exit_code == 0, stop.output
    record = json.loads(stop.output)
    assert record["Mood Change Status"] == "Better"


def test_session_invalid_mood(runner, data_dir):
    result = runner.invoke(main, ["session", "start", "--user", "u1", "--mood", "meh"])
    assert result.exit_code == 2


def test_report_empty_is_no_data(runner, data_dir):
    result = runner.invoke(
        main, ["report", "--user", "u1", "--from", "2024-04-01", "--to", "2024-04-07"]
    )
    assert result.exit_code == 0
    assert "no data" in result.output


def test_report_inverted_range(runner, data_dir):
    result = runner.invoke(
        main, ["report", "--user", "u1", "--from", "2024-05-01", "--to", "2024-04-01"]
    )
    assert result.exit_code == 2


def _seed_worked_example(runner, data_dir):
    from emotrack.store import DocumentStore

    runner.invoke(
        main, ["ingest", str(FIXTURES / "watch_history" / "mixed.json"), "--user", "u1"]
    )
    store = DocumentStore(data_dir)
    for start, stop, after, status in [
        ("2024-04-22 09:00:00", "2024-04-22 09:30:00", "Good", "Better"),
        ("2024-04-22 12:00:00", "2024-04-22 12:30:00", "Good", "Better"),
        ("2024-04-22 19:00:00", "2024-04-22 21:30:00", "Okay", "Same"),
        ("2024-04-22 23:00:00", "2024-04-22 23:30:00", "Not good", "Worse"),
    ]:
        store.put_document(
            ["Users", "u1", "Mood Records", start],
            {
                "Before Watch Mood": "Okay",
                "Start Watch Time": start,
                "After Watch Mood": after,
                "Stop Watch Time": stop,
                "Mood Change Status": status,
            },
        )


def test_report_table_worked_example(runner, data_dir):
    _seed_worked_example(runner, data_dir)
    result = runner.invoke(
        main,
        [
            "report", "--user", "u1", "--from", "2024-04-22", "--to", "2024-04-28",
            "--format", "table",
        ],
    )
    assert result.exit_code == 0, result.output
    row = next(line for line in result.output.splitlines() if line.startswith("2024-04-22"))
    assert row.split()[1:4] == ["2", "1", "1"]


def test_report_json_matches_service_wire_shape(runner, data_dir):
    _seed_worked_example(runner, data_dir)
    result = runner.invoke(
        main, ["report", "--user", "u1", "--from", "2024-04-22", "--to", "2024-04-28"]
    )
    report = json.loads(result.output)
    day = report["2024-04-22"]
    assert {"Better", "Same", "Worse", "Watch Total Number", "Details"} <= set(day)
    assert day["Better"] == 2 and day["Same"] == 1 and day["Worse"] == 1


def test_stats_output(runner, data_dir):
    _seed_worked_example(runner, data_dir)
    result = runner.invoke(
        main, ["stats", "--user", "u1", "--from", "2024-04-22", "--to", "2024-04-28"]
    )
    assert result.exit_code == 0, result.output
    stats = json.loads(result.output)
    assert stats["shortCount"] == 2 and stats["longCount"] == 3
    assert sum(stats["periodHistogram"].values()) == 5
    assert abs(sum(stats["moodChangeDist"].values()) - 1) < 1e-9


def test_sus_all_threes(runner, tmp_path):
    sheet = tmp_path / "sus.csv"
    sheet.write_text("3,3,3,3,3,3,3,3,3,3\n")
    result = runner.invoke(main, ["sus", str(sheet)])
    assert result.exit_code == 0
    assert json.loads(result.output)["mean"] == 50.0


def test_sus_with_header_row(runner, tmp_path):
    sheet = tmp_path / "sus.csv"
    sheet.write_text("q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\n5,1,5,1,5,1,5,1,5,1\n")
    result = runner.invoke(main, ["sus", str(sheet)])
    assert json.loads(result.output)["mean"] == 100.0


def test_sus_malformed_row(runner, tmp_path):
    sheet = tmp_path / "sus.csv"
    sheet.write_text("3,3,3\n")
    result = runner.invoke(main, ["sus", str(sheet)])
    assert result.exit_code == 2


def test_cli_and_service_store_contents_identical(runner, tmp_path, monkeypatch):
    """Golden check: both entry points share the core and write the same bytes."""
    from fastapi.testclient import TestClient

    from emotrack.service import ServiceConfig, create_app

    cli_dir = tmp_path / "cli-data"
    monkeypatch.setenv("EMOTRACK_DATA_DIR", str(cli_dir))
    payload = FIXTURES / "watch_history" / "mixed.json"
    result = runner.invoke(main, ["ingest", str(payload), "--user", "u1"])
    assert result.exit_code == 0

    svc_dir = tmp_path / "svc-data"
    with TestClient(create_app(ServiceConfig(data_dir=svc_dir))) as client:
        client.post(
            "/api/upload",
            data={"uid": "u1"},
            files={"file": ("watch-history.json", payload.read_bytes())},
        )
        client.post(
            "/api/handle_file",
            json={"uid": "u1", "uploadOk": True, "fileName": "watch-history.json"},
        )

    def snapshot(root):
        history = root / "Users" / "u1" / "YouTube%20Watch%20History"
        return {p.name: p.read_bytes() for p in sorted(history.iterdir())}

    assert snapshot(cli_dir) == snapshot(svc_dir)
