import json

import pytest

from qoslab import cli


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _strip_times(doc):
    for rec in doc["checks"]:
        rec.pop("wall_time_ms")
    return doc


def test_check_tetra_all(capsys, tmp_path):
    out = tmp_path / "rep.json"
    assert cli.main(["check", "tetra", "--all", "--json", str(out)]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l]
    assert len(lines) == 3
    assert all(l.startswith("PASS") for l in lines)
    doc = _load(out)
    assert doc["schema"] == 1
    assert {r["name"] for r in doc["checks"]} == {
        "tetra_ML", "tetra_NN", "tetra_torus"}
    for rec in doc["checks"]:
        assert set(rec) == {"name", "params", "mode", "residual", "passed",
                            "wall_time_ms", "detail"}


def test_control_run_exits_zero(capsys):
    assert cli.main(["check", "ml-exchange", "--control"]) == 0
    out = capsys.readouterr().out
    assert "ml_exchange_control" in out


def test_failing_check_exits_nonzero(capsys):
    # the two-row fold orderings genuinely differ; see the acceptance notes
    assert cli.main(["check", "statement22", "--n", "2"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_report_deterministic(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["classical", "demo", "--json", str(f1)])
    cli.main(["classical", "demo", "--json", str(f2)])
    capsys.readouterr()
    assert _strip_times(_load(f1)) == _strip_times(_load(f2))


def test_transfer_build_lists_support(capsys):
    assert cli.main(["transfer", "build", "--n", "1", "--m", "2"]) == 0
    out = capsys.readouterr().out
    assert "support=" in out and "(1, 2)" in out


def test_invalid_target_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["check", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()
