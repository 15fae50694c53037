import io
import json
import subprocess
import sys

import jsonschema
import pytest

from burnt_pancakes.cli import main
from burnt_pancakes.corpus import load_entry
from burnt_pancakes.formats import SEQUENCE_SCHEMA
from burnt_pancakes.search import WORKERS_ENV

RESULT_KEYS = {"n", "mode", "seed", "examined", "rejected_splits", "successes", "elapsed_s",
               "candidates", "provenance"}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_text(capsys):
    code, out, _ = run(capsys, "generate", 53)
    assert code == 0
    assert out.startswith("# n=53 family=S5")
    nums = [int(x) for line in out.splitlines() if not line.startswith("#")
            for x in line.split(":", 1)[1].split()]
    assert len(nums) == 81 and nums[:4] == [53, 44, 4, 10]


def test_generate_json_document(capsys):
    code, out, _ = run(capsys, "generate", 29, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SEQUENCE_SCHEMA)
    assert doc["n"] == 29 and len(doc["flips"]) == 45 and len(doc["phases"]) == 45
    assert doc["family"] == "S5" and doc["provenance"]


def test_generate_bad_n(capsys):
    code, _, err = run(capsys, "generate", 24)
    assert code == 2 and "even n" in err
    assert run(capsys, "generate", 23)[0] == 2
    assert run(capsys, "generate", 25)[0] == 2


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--corpus", "b53")
    assert code == 0
    assert "wastes=28" in out and "improves=53" in out
    code, out, _ = run(capsys, "verify", "--corpus", "a61", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["sorted"] and rep["total_flips"] == 93


def test_verify_altered_corpus_fails(tmp_path, capsys):
    doc = load_entry("b53").document().to_dict()
    doc["flips"][40] = 1 if doc["flips"][40] != 1 else 2
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "verify", path)[0] == 1


def test_verify_malformed(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("this is not a flip list\n")
    assert run(capsys, "verify", path, "--n", 5)[0] == 2
    path.write_text('{"n": 5, "flips": [1, 9]}')
    assert run(capsys, "verify", path)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_verify_inline_and_stdin(capsys, monkeypatch):
    assert run(capsys, "verify", "--n", 1, "--flips", 1)[0] == 0
    assert run(capsys, "verify", "--n", 3, "--flips", 3)[0] == 1
    monkeypatch.setattr(sys, "stdin", io.StringIO("2 2\n"))
    assert run(capsys, "verify", "--n", 2, "--stdin")[0] == 1
    monkeypatch.setattr(sys, "stdin", io.StringIO("1 2 1 2\n"))
    assert run(capsys, "verify", "--n", 2, "--stdin")[0] == 0


@pytest.mark.parametrize("n", [29, 33, 37, 41, 53, 57, 61, 101])
def test_generate_verify_roundtrip(tmp_path, capsys, n):
    for fmt in ("json", "text"):
        path = tmp_path / f"seq.{fmt}"
        assert run(capsys, "generate", n, "--format", fmt, "--out", path)[0] == 0
        code, out, _ = run(capsys, "verify", path)
        assert code == 0 and "phase_violations=0" in out


@pytest.mark.parametrize("n,golden", [(61, "a61"), (57, "c57"), (53, "b53")])
def test_trace_golden(capsys, n, golden):
    code, out, err = run(capsys, "trace", n, "--golden", golden)
    assert code == 0 and "all" in err
    assert out.splitlines()[1].startswith("start [-1, -2")


def test_trace_golden_mismatch(capsys):
    code, _, err = run(capsys, "trace", 53, "--golden", "c57", "--quiet")
    assert code == 1 and "divergence" in err


def test_trace_inline(capsys):
    code, out, _ = run(capsys, "trace", 5, "--flips", 5, 5)
    assert code == 0
    lines = out.splitlines()
    assert lines[-2] == "flip 5 [5, 4, 3, 2, 1]"
    assert lines[-1] == "flip 5 [-1, -2, -3, -4, -5]"


def test_search_exhaustive(tmp_path, capsys):
    out_file = tmp_path / "res.json"
    code, out, _ = run(capsys, "search", 15, "--out", out_file, "--checkpoint", tmp_path / "ck")
    assert code == 0 and "successes=1" in out
    rec = json.loads(out_file.read_text())
    assert set(rec) == RESULT_KEYS
    assert rec["candidates"][0]["flips"][:9] == [15, 10, 4, 6, 14, 6, 4, 10, 15]
    assert list((tmp_path / "ck").glob("n15_ranks_*.json"))


def test_search_expect_some(capsys):
    assert run(capsys, "search", 9)[0] == 0
    assert run(capsys, "search", 9, "--expect-some")[0] == 1
    assert run(capsys, "search", 10)[0] == 2


def test_search_randomized(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "search", 29, "--mode", "randomized", "--seed", 7,
                     "--samples", 500, "--out", out_file)
    assert code == 0
    rec = json.loads(out_file.read_text())
    assert rec["seed"] == 7 and rec["examined"] == 500 and rec["provenance"]["seed"] == 7
    for cand in rec["candidates"]:
        assert len(cand["flips"]) == 45


def test_search_workers_from_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "2")
    out_file = tmp_path / "w.json"
    assert run(capsys, "search", 11, "--out", out_file)[0] == 0
    assert json.loads(out_file.read_text())["provenance"]["workers"] == 2
    assert run(capsys, "search", 11, "--workers", 1, "--out", out_file)[0] == 0
    assert json.loads(out_file.read_text())["provenance"]["workers"] == 1


def test_solve_and_bounds(capsys):
    code, out, _ = run(capsys, "solve", 2)
    assert code == 0 and out.splitlines() == ["T(2) = 4", "witness: 1 2 1 2"]
    code, out, _ = run(capsys, "solve", 4, "--method", "ida", "--json")
    assert code == 0 and json.loads(out)["t_value"] == 8
    assert run(capsys, "solve", 9)[0] == 2
    assert run(capsys, "bounds", 20)[1].strip() == "Range 31..32"
    assert run(capsys, "bounds", 37)[1].strip() == "Exact 57"
    assert run(capsys, "bounds", 5)[1].strip() == "NeedsSolver"


def test_solve_limit_env(capsys, monkeypatch):
    monkeypatch.setenv("BURNT_PANCAKES_LIMITS", "bfs=2")
    assert run(capsys, "solve", 3)[0] == 2
    assert run(capsys, "solve", 3, "--limit", 3)[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "burnt_pancakes", "bounds", "19"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "Exact 30"
