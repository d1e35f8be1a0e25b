from pathlib import Path

import pytest

from tronlab.cli import main

ROOT = Path(__file__).resolve().parent.parent
P5 = str(ROOT / "instances" / "p5_uniform.tron")
K13 = str(ROOT / "instances" / "k13_uniform.tron")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", P5)
    assert code == 0
    assert "delta = -1/5" in out
    assert "optimal starts: {2}" in out
    assert "principal variation: A+2" in out


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "missing.tron")
    assert code == 2
    assert "missing.tron" in err


def test_solve_backend_flag(capsys):
    code, out, _ = run(capsys, "solve", P5, "--backend", "general")
    assert code == 0
    assert "delta = -1/5" in out


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", P5)
    assert code == 0
    assert "crossing edge: (1, 2)" in out
    assert "alpha=4/15" in out


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", K13)
    assert code == 0
    assert "bound anchor_left as_stated yes -1/4 holds" in out
    assert "check fifth_chain dual ok" in out


def test_certify_rejects_cycles(capsys):
    code, _, err = run(capsys, "certify", str(ROOT / "instances" / "c6_uniform.tron"))
    assert code == 2


def test_simulate(capsys):
    code, out, _ = run(
        capsys, "simulate", P5, "--alice", "avoidbob:u=2", "--bob", "optimal"
    )
    assert code == 0
    assert out.startswith("A+2\n")
    assert "# value" in out


def test_simulate_bad_policy(capsys):
    code, _, err = run(capsys, "simulate", P5, "--alice", "nonsense")
    assert code == 2


def test_fuzz_small(capsys):
    code, out, _ = run(
        capsys, "fuzz", "--family", "random", "--count", "15", "--n-max", "7",
        "--seed", "3",
    )
    assert code == 0
    assert "violations: 0" in out


def test_search_writes_results(capsys, tmp_path):
    code, out, _ = run(
        capsys, "search", "--budget", "60", "--seed", "1", "--out", str(tmp_path)
    )
    assert code == 0
    assert (tmp_path / "best.tron").exists()
    assert (tmp_path / "search.json").exists()
    assert "best delta:" in out


def test_scan_trees(capsys):
    code, out, _ = run(capsys, "scan", "unweighted_trees", "--n-max", "7")
    assert code == 0
    assert "max delta:" in out


def test_scan_cycles(capsys, tmp_path):
    code, out, _ = run(
        capsys, "scan", "cycles", "--n-max", "8", "--count", "10", "--seed", "2",
        "--out", str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "scan.json").exists()


def test_replay(capsys, tmp_path):
    transcript = tmp_path / "game.txt"
    transcript.write_text("A+2\nB+1\nA>3\nB>0\nA>4\nB--\nA--\n")
    code, out, _ = run(capsys, "replay", P5, str(transcript))
    assert code == 0
    assert "value: -1/5" in out


def test_replay_rejects_bad_transcript(capsys, tmp_path):
    transcript = tmp_path / "bad.txt"
    transcript.write_text("A+2\nA+3\n")
    code, _, err = run(capsys, "replay", P5, str(transcript))
    assert code == 2


def test_unknown_verb(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_normalize_flag(capsys, tmp_path):
    raw = tmp_path / "raw.tron"
    raw.write_text("tron v1\nn 2\nw 0 3\nw 1 1\ne 0 1\n")
    code, _, err = run(capsys, "solve", str(raw))
    assert code == 2
    code, out, _ = run(capsys, "solve", str(raw), "--normalize")
    assert code == 0
    assert "delta = -1/2" in out
