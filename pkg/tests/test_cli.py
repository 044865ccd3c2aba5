import json
import subprocess
import sys

import pytest

from charsum.cli import read_csv, run, write_csv
from charsum.verify.sweep import SweepRecord, fit_constant


def test_sum_example(capsys):
    assert run(["sum", "--q1", "3", "--chi1", "1", "--q2", "3", "--chi2", "1", "--T", "4"]) == 0
    out = capsys.readouterr().out
    assert "S = 2+0i" in out and "|S| = 2" in out


def test_sum_json_and_check(capsys):
    assert run(["sum", "--q1", "5", "--chi1", "1", "--q2", "7", "--chi2", "2", "--T", "300", "--check",
                "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert set(d) == {"S", "abs", "order"}


def test_bogus_flag():
    assert run(["--bogus-flag"]) == 2
    assert run(["sum", "--bogus-flag"]) == 2
    assert run([]) == 2


def test_bad_character_is_usage_error(capsys):
    assert run(["sum", "--q1", "3", "--chi1", "9", "--q2", "3", "--chi2", "1", "--T", "4"]) == 2
    assert run(["sum", "--q1", "3", "--chi1", "1", "--q2", "3", "--chi2", "1", "--T", "-1"]) == 2


def test_verify_lemmas_example(capsys):
    assert run(["verify-lemmas", "--T", "16", "--k", "1", "--depth", "6", "--chains", "100"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out and "[PASS] lemma3" in out


def test_cover_exit_codes(capsys):
    assert run(["cover", "--T", "16", "--k", "1", "--depth", "6"]) == 0
    assert run(["cover", "--T", "2000", "--depth", "1"]) == 1


def test_chars(capsys):
    assert run(["chars", "--q", "9", "--primitive", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4 and all(r["conductor"] == 9 for r in rows)


def test_bench(capsys):
    assert run(["bench", "--q1", "5", "--chi1", "2", "--q2", "7", "--chi2", "3", "--T", "100", "1000"]) == 0
    assert capsys.readouterr().out.count("True") == 2


def test_family_svg(tmp_path):
    out = tmp_path / "f.svg"
    assert run(["family-svg", "--T", "16", "--k", "1", "--depth", "3", "-o", str(out)]) == 0
    assert out.read_text().count("<rect") == 16


CFG = "q1 = 3..5\nq2 = 3..7\nT = 10\nT = 60.5\ntheorem = thm1\n"


def test_sweep_csv_and_json(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text(CFG)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["sweep", "--config", str(cfg), "-o", str(a)]) == 0
    monkeypatch.setenv("CHARSUM_JOBS", "2")
    assert run(["sweep", "--config", str(cfg), "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
    assert a.read_text().splitlines()[0] == "q1,chi1,q2,chi2,T,abs_S,bound,ratio,regime,ms"
    j = tmp_path / "a.json"
    assert run(["sweep", "--config", str(cfg), "--format", "json", "-o", str(j)]) == 0
    recs = json.loads(j.read_text())
    assert len(recs) == len(read_csv(a)) and set(recs[0]) == set(SweepRecord.__dataclass_fields__)


def test_sweep_bad_config(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("q1 = 3\nfoo = 1\n")
    assert run(["sweep", "--config", str(cfg)]) == 2
    assert run(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_write_csv_examples(tmp_path):
    p = tmp_path / "e.csv"
    write_csv([], p)
    assert p.read_text() == "q1,chi1,q2,chi2,T,abs_S,bound,ratio,regime,ms\n"
    r = SweepRecord(3, 1, 5, 2, 12.5, 1.0 / 3, 7.0, 1.0 / 21, "thm1.v1.b1", 0.0)
    write_csv([r], p)
    lines = p.read_text().splitlines()
    assert len(lines) == 2 and lines[1] == "3,1,5,2,12.5,0.333333333333,7,0.047619047619,thm1.v1.b1,0"
    q = tmp_path / "f.csv"
    write_csv([r], q)
    assert p.read_bytes() == q.read_bytes()


def test_csv_round_trip(tmp_path):
    recs = [SweepRecord(3, 1, 5, i, 10.0 + i, 0.1 * i + 1e-7, 3.3, (0.1 * i + 1e-7) / 3.3, "x") for i in range(1, 4)]
    p = tmp_path / "r.csv"
    write_csv(recs, p)
    back = read_csv(p)
    assert fit_constant(back) == pytest.approx(fit_constant(recs), rel=1e-11)
    for a, b in zip(recs, back):
        assert b.key() == pytest.approx(a.key()) and b.ratio == pytest.approx(a.ratio, rel=1e-11)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "charsum", "sum", "--q1", "1", "--chi1", "0", "--q2", "1",
                          "--chi2", "0", "--T", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and "S = 5+0i" in res.stdout
