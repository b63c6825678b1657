"""Command line behavior: exit codes, formats, cache, scan filters."""

import json

import pytest

from descent3.cli import main, _parse_range, _recover_seed
from descent3.errors import ValidationError


def test_analyze_csv_exit_zero(capsys):
    rc = main(["analyze", "--m", "1", "--n", "1", "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = [l for l in out.strip().splitlines() if l]
    assert lines[-1].startswith("1,1,-23,1,")


def test_analyze_json_fields(capsys):
    rc = main(["analyze", "--m", "2", "--n", "1", "--format", "json"])
    assert rc == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["seed"] == {"m": "2", "n": "1", "disc": "5"}
    assert blob["r3"] == "0"


def test_analyze_text_mentions_conditionality(capsys):
    rc = main(["analyze", "--m", "1", "--n", "1", "--format", "text"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "-23" in out
    assert "conditional" in out.lower()


def test_analyze_gcd_violation_exit_2(capsys):
    rc = main(["analyze", "--m", "2", "--n", "2"])
    assert rc == 2
    assert "error" in capsys.readouterr().err.lower()


def test_analyze_disc_recovery(capsys):
    rc = main(["analyze", "--disc", "-23", "--format", "csv"])
    assert rc == 0
    assert ",-23," in capsys.readouterr().out


def test_analyze_rejects_seed_and_disc_together(capsys):
    rc = main(["analyze", "--m", "1", "--n", "1", "--disc", "-23"])
    assert rc == 2


def test_recover_seed():
    s = _recover_seed(-4897363)
    assert (s.m, s.n) == (-34, 419)
    with pytest.raises(ValidationError):
        _recover_seed(7)            # not in the family


def test_parse_range():
    assert _parse_range("1..3") == range(1, 4)
    assert _parse_range("-2..2") == range(-2, 3)
    with pytest.raises(ValidationError):
        _parse_range("3..")


def test_forms_lists_classes(capsys):
    rc = main(["forms", "--disc", "48035713"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.count("\n") >= 4
    assert "monic" in out


def test_hasse_subcommand(capsys):
    rc = main(["hasse", "--m", "1", "--n", "1"])
    assert rc == 0
    assert "HasGlobalPoint" in capsys.readouterr().out


def test_scan_filter_and_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "scan.ndjson"
    rc = main(["scan", "--m", "1..3", "--n", "1..3", "--format", "csv",
               "--filter", "r3>=1", "--cache", str(cache)])
    assert rc == 0
    first = capsys.readouterr().out
    rows = [l for l in first.strip().splitlines() if l and not l.startswith("m,")]
    assert len(rows) == 3                      # D = 5 fails the filter
    assert all(",5," not in l for l in rows)
    cached = [json.loads(l) for l in cache.read_text().splitlines()]
    assert len(cached) == 4                    # cache keeps everything

    rc = main(["scan", "--m", "1..3", "--n", "1..3", "--format", "csv",
               "--filter", "r3>=1", "--cache", str(cache)])
    assert rc == 0
    second = capsys.readouterr().out
    assert second == first                     # cache replay is identical


def test_scan_bad_filter_exit_2(capsys):
    rc = main(["scan", "--m", "1..2", "--n", "1..2",
               "--filter", "bogus>=1"])
    assert rc == 2


def test_scan_jobs_deterministic(tmp_path, capsys):
    rc = main(["scan", "--m", "1..3", "--n", "1..3", "--format", "csv"])
    assert rc == 0
    solo = capsys.readouterr().out
    rc = main(["scan", "--m", "1..3", "--n", "1..3", "--format", "csv",
               "--jobs", "2"])
    assert rc == 0
    assert capsys.readouterr().out == solo


def test_tables_regenerate(capsys):
    rc = main(["tables", "--which", "4"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "1129" in out


def test_tables_mismatch_exit_3(monkeypatch, capsys):
    import descent3.tables as tb
    monkeypatch.setitem(tb.TABLE_4_STATS, "r3", 9)
    rc = main(["tables", "--which", "4"])
    assert rc == 3
