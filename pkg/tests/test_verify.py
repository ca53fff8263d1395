import json
from pathlib import Path

import pytest

from lueroth_kit import verify

README = Path(__file__).resolve().parent.parent / "README.md"


def test_ids_and_anchors_unique():
    ids = verify.statement_ids()
    assert len(ids) == len(set(ids)) == len(verify.STATEMENTS)
    anchors = [s.anchor for s in verify.STATEMENTS]
    assert len(anchors) == len(set(anchors))
    assert ids == sorted(ids)


def test_every_id_documented():
    text = README.read_text()
    for s in verify.STATEMENTS:
        assert f"`{s.id}`" in text, s.id
        assert s.anchor in text, s.anchor


def test_select():
    assert {s.module for s in verify.select(["geiser"])} == {"geiser"}
    assert [s.id for s in verify.select(["S04"])] == ["S04-example-pencil"]
    assert len(verify.select(None)) == len(verify.STATEMENTS)
    with pytest.raises(ValueError):
        verify.select(["nothing"])


def test_report_json_shape():
    report = verify.verify_paper(seed=1, only=["S01", "S05", "S11"])
    data = json.loads(report.dumps())
    assert data["ok"] and data["first_failure"] is None
    assert [s["id"] for s in data["statements"]] == ["S01-calibration", "S05-base-points", "S11-rep-tables"]
    assert "elapsed" not in report.dumps()
    assert "S05-base-points" in report.table()


def test_failure_is_reported(monkeypatch):
    bad = verify.Statement("S99-broken", "test", "always fails", verify.BLOCKING, lambda seed: (False, {}))
    monkeypatch.setattr(verify, "STATEMENTS", verify.STATEMENTS + (bad,))
    report = verify.verify_paper(seed=0, only=["S99"])
    assert not report.ok and report.first_failure == "S99-broken"


def test_exceptions_become_failures(monkeypatch):
    def boom(seed):
        raise RuntimeError("kaput")

    bad = verify.Statement("S98-raises", "test", "raises", verify.BLOCKING, boom)
    monkeypatch.setattr(verify, "STATEMENTS", verify.STATEMENTS + (bad,))
    out = verify.run_statement("S98-raises", 0)
    assert out.status == "fail" and "kaput" in json.dumps(out.details)
