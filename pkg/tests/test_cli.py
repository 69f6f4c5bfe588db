import csv
import io
import json
import subprocess
import sys

import pytest

from commgraph import cli
from commgraph.verify import ClaimResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--from", "4", "--to", "8", "--deterministic-timing")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == cli.TABLE_COLUMNS
    assert [r["diameter"] for r in rows] == ["3", "4", "5", "6", "7"]
    assert all(r["seconds"] == "0.000000" for r in rows)
    assert "\r" not in out


def test_table_identical_across_threads(capsys, tmp_path):
    outs = []
    for threads in ("1", "3"):
        path = tmp_path / f"t{threads}.csv"
        args = ["table", "--from", "4", "--to", "10", "--algo", "exact_all_sources"]
        code, _, _ = run(capsys, *args, "--threads", threads, "--deterministic-timing", "-o", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--from", "4", "--to", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["diameter"] for d in data] == [3, 4]


def test_verify_gamma4(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "gamma4")
    assert code == 0
    data = json.loads(out)
    assert data[0]["claim_id"] == "gamma4_star" and data[0]["passed"]
    assert set(data[0]) == {"claim_id", "m", "passed", "details", "elapsed"}


def test_verify_csv_and_determinism(capsys):
    args = ["verify", "--claim", "support_bound", "--from", "4", "--to", "9", "--format", "csv", "--deterministic-timing"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    rows = list(csv.DictReader(io.StringIO(out1)))
    assert len(rows) == 6 and all(r["passed"] == "true" for r in rows)


def test_verify_failure_exits_1(capsys, monkeypatch):
    def fake(claim, ms, algo="pruned", threads=1):
        return [ClaimResult("support_bound", 4, False, {"counterexample": {"d": 1}})]

    monkeypatch.setattr(cli, "run_claim", fake)
    code, out, _ = run(capsys, "verify", "--claim", "support_bound", "-m", "4")
    assert code == 1
    assert json.loads(out)[0]["passed"] is False


def test_verify_no_applicable_m(capsys):
    code, _, err = run(capsys, "verify", "--claim", "embedding", "-m", "4")
    assert code == 2
    assert "no m" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["diameter", "-m", "99"],
        ["diameter", "-m", "3"],
        ["table", "--from", "8", "--to", "5"],
        ["bfs", "-m", "5", "--source", "0"],
        ["diameter", "-m", "5", "--threads", "0"],
        ["export", "-m", "7"],
        ["export", "-m", "11", "--format", "csv"],
        ["verify", "--claim", "bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 2


def test_range_message(capsys):
    code, _, err = run(capsys, "diameter", "-m", "99")
    assert code == 2
    assert "[4, 20]" in err


def test_max_m_override(capsys):
    code, _, _ = run(capsys, "diameter", "-m", "5", "--max-m", "4")
    assert code == 2


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "export", "-m", "4", "-o", str(tmp_path / "missing" / "g.dot"))
    assert code == 2
    assert "cannot write" in err


def test_diameter_json(capsys):
    code, out, _ = run(capsys, "diameter", "-m", "7", "--deterministic-timing")
    d = json.loads(out)
    assert code == 0
    assert d["diameter"] == 6 and d["connected"] and d["elapsed"] == 0.0


def test_bfs_csv(capsys):
    code, out, _ = run(capsys, "bfs", "-m", "5", "--source", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 31
    assert {r["label"] for r in rows if r["distance"] == "1"} == {"x2", "x1+x2"}


def test_export_dot_and_csv(capsys):
    code, out, _ = run(capsys, "export", "-m", "4")
    assert code == 0 and out.count(" -- ") == 21
    code, out, _ = run(capsys, "export", "-m", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["code_u", "code_v"] and len(rows) == 58


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "commgraph", "verify", "--claim", "gamma4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["passed"]
