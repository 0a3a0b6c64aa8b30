import json

import pytest

from entrowatch.cli import main
from entrowatch.profile import load_profile
from entrowatch.trace import read_trace


@pytest.fixture
def paths(tmp_path):
    return {
        "log": tmp_path / "baseline.jsonl",
        "session": tmp_path / "session.jsonl",
        "profile": tmp_path / "profile.json",
        "trace": tmp_path / "trace.csv",
    }


def test_full_offline_workflow(paths, capsys):
    assert main(["simulate", "--out", str(paths["log"]), "--duration", "150", "--seed", "3"]) == 0
    assert "3000 commands" in capsys.readouterr().out

    assert main(["baseline", "--log", str(paths["log"]), "--out", str(paths["profile"])]) == 0
    assert "alpha_lin=" in capsys.readouterr().out
    doc = load_profile(paths["profile"])
    assert doc.profile.alpha_lin > 0

    assert (
        main(
            [
                "simulate",
                "--out",
                str(paths["session"]),
                "--duration",
                "100",
                "--seed",
                "4",
                "--schedule",
                "50:1.0,50:4.0",
            ]
        )
        == 0
    )
    capsys.readouterr()

    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--profile",
                str(paths["profile"]),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "40 computations" in out
    rows = read_trace(paths["trace"])
    assert len(rows) == 40

    assert main(["report", "--trace", str(paths["trace"]), "--segments", "calm:50,busy:50"]) == 0
    report = capsys.readouterr().out
    assert "calm" in report and "busy" in report


def test_baseline_skip_writes_defaults(paths):
    assert main(["baseline", "--skip", "--out", str(paths["profile"])]) == 0
    payload = json.loads(paths["profile"].read_text())
    assert payload["alpha_lin"] == 0.25
    assert payload["dpu"]["avg"] == "inf"


def test_baseline_without_log_fails(paths, capsys):
    assert main(["baseline", "--out", str(paths["profile"])]) == 1
    assert "requires --log" in capsys.readouterr().err


def test_baseline_too_short_fails(paths, capsys):
    assert main(["simulate", "--out", str(paths["log"]), "--duration", "10"]) == 0
    capsys.readouterr()
    assert main(["baseline", "--log", str(paths["log"]), "--out", str(paths["profile"])]) == 1
    assert "insufficient baseline data" in capsys.readouterr().err


def test_replay_empty_log_warns_but_succeeds(paths, capsys):
    paths["session"].write_text("")
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
            ]
        )
        == 0
    )
    captured = capsys.readouterr()
    assert "empty log" in captured.err
    assert read_trace(paths["trace"]) == []


def test_replay_corrupt_log_names_line(paths, capsys):
    paths["session"].write_text(
        '{"t_ms": 0, "lin": 0.1, "ang": 0.0}\n{"t_ms": "soon", "lin": 0.1, "ang": 0.0}\n'
    )
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
            ]
        )
        == 1
    )
    assert "line 2" in capsys.readouterr().err


def test_replay_missing_log_fails(paths, capsys):
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
            ]
        )
        == 1
    )
    assert "error:" in capsys.readouterr().err


def test_replay_profile_out_written(paths, capsys):
    assert main(["simulate", "--out", str(paths["session"]), "--duration", "60"]) == 0
    out_profile = paths["profile"]
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
                "--profile-out",
                str(out_profile),
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert load_profile(out_profile).profile.alpha_lin == 0.25


def test_bad_schedule_fails(paths, capsys):
    assert (
        main(["simulate", "--out", str(paths["log"]), "--schedule", "60:1.0,oops"]) == 1
    )
    assert "bad schedule segment" in capsys.readouterr().err


def test_bad_period_fails(paths, capsys):
    assert main(["simulate", "--out", str(paths["session"]), "--duration", "20"]) == 0
    capsys.readouterr()
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
                "--period",
                "9.0",
            ]
        )
        == 1
    )
    assert "period" in capsys.readouterr().err


def test_report_rejects_bad_segments(paths, capsys):
    assert main(["simulate", "--out", str(paths["session"]), "--duration", "20"]) == 0
    assert (
        main(
            [
                "replay",
                "--log",
                str(paths["session"]),
                "--trace",
                str(paths["trace"]),
                "--default-profile",
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert main(["report", "--trace", str(paths["trace"]), "--segments", "nope"]) == 1
    assert "bad segment" in capsys.readouterr().err


def test_report_rejects_garbage_trace(paths, capsys):
    paths["trace"].write_text("not,a,trace\n")
    assert main(["report", "--trace", str(paths["trace"]), "--segments", "all:60"]) == 1
    assert "line 1" in capsys.readouterr().err
