import dataclasses
import json

import pytest

from qracah.cli import run_cli

GENERIC = ["--field", "rational", "--q", "2", "--a", "3", "--b", "5", "--c", "7", "--d", "2"]


def test_verify_json(capsys):
    assert run_cli(GENERIC + ["--mode", "verify", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["fail"] == 0
    assert data["params"]["field"] == "rational"


def test_verify_text_both_bases(capsys):
    assert run_cli(GENERIC + ["--basis", "both", "--checks", "prod.*"]) == 0
    out = capsys.readouterr().out
    assert "basis=first" in out and "basis=second" in out
    assert "scalar = 4/11025" in out


@pytest.mark.parametrize(
    "args,message",
    [
        (["--field", "rational", "--q", "1", "--a", "3", "--b", "5", "--c", "7", "--d", "2"], "assumption violated: q^4 = 1"),
        (["--field", "rational", "--q", "2", "--a", "2", "--b", "5", "--c", "7", "--d", "2"], "(ii)"),
        (["--field", "rational", "--q", "2", "--d", "2"], "needs --a"),
        (["--field", "rational", "--q", "x", "--a", "3", "--b", "5", "--c", "7", "--d", "2"], "malformed"),
        (["--field", "rational", "--q", "2/0", "--a", "3", "--b", "5", "--c", "7", "--d", "2"], "division by zero"),
        (["--field", "fp:9", "--d", "2", "--mode", "sample"], "odd prime"),
        (["--field", "rational", "--d", "2", "--mode", "sample"], "prime field"),
        (["--field", "fp:1000003", "--d", "2", "--mode", "sample", "--trials", "0"], "at least 1"),
        (GENERIC + ["--checks", "zzz*"], "no check id"),
        (["--format", "yaml"], "invalid choice"),
        (["--bogus"], "unrecognized"),
        (["--field", "fp:5", "--d", "3", "--mode", "sample"], "sampling exhausted"),
    ],
)
def test_usage_errors(capsys, args, message):
    assert run_cli(args) == 2
    assert message in capsys.readouterr().err


def test_sample_mode(capsys):
    args = ["--field", "fp:1000003", "--d", "4", "--mode", "sample", "--trials", "50", "--seed", "7", "--format", "json"]
    assert run_cli(args) == 0
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 50
    assert all(r["summary"]["fail"] == 0 for r in reports)


def test_sweep_mode(capsys):
    args = ["--field", "fp:1000003", "--d", "3", "--mode", "sweep", "--trials", "1", "--format", "json"]
    assert run_cli(args) == 0
    reports = json.loads(capsys.readouterr().out)
    # the sample, its cyclic and swapped relabelings, each with 8 inversions
    assert len(reports) == 24
    assert all(r["summary"]["fail"] == 0 for r in reports)


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run_cli(GENERIC + ["--format", "json", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["summary"]["fail"] == 0


def test_failure_exit_code(monkeypatch, capsys):
    import qracah.cli as cli

    real = cli.build_triple

    def corrupted(p, basis):
        r = real(p, basis)
        return dataclasses.replace(r, C=r.C.with_entry(0, 0, r.C[0, 0] + 1))

    monkeypatch.setattr(cli, "build_triple", corrupted)
    assert run_cli(GENERIC + ["--checks", "triple.zrel.*"]) == 1
    out = capsys.readouterr().out
    assert "fail=3" in out and "!=" in out
