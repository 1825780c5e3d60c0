import json
import subprocess
import sys

import pytest

from aperiodic.cli import main
from aperiodic.words import parse_word_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_stamps_verified(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "-k", "4", "--profile", "linear", "--len", "64")
    assert code == 0
    w = parse_word_file(out)
    assert len(w) == 64 and w.k == 4
    assert out.rstrip().endswith("# verified")
    f = tmp_path / "w.txt"
    assert run(capsys, "generate", "-k", "4", "--profile", "linear", "--len", "64", "--out", str(f))[0] == 0
    assert parse_word_file(f.read_text()) == w


def test_generate_empty_and_json(capsys):
    code, out, _ = run(capsys, "generate", "-k", "2", "--profile", "linear", "--len", "0")
    assert code == 0 and len(parse_word_file(out)) == 0
    code, out, _ = run(capsys, "generate", "-k", "3", "--profile", "pow2", "--len", "5",
                       "--format", "json", "--order", "random", "--seed", "3")
    d = json.loads(out)
    assert d["schema"] == "aperiodic.generate/1" and d["result"]["stamp"] == "verified"


def test_generate_failures(capsys):
    code, _, err = run(capsys, "generate", "-k", "2", "--profile", "lin", "--len", "3")
    assert code == 2 and "position 0" in err
    code, _, err = run(capsys, "generate", "-k", "2", "--profile", "pow2", "--len", "4")
    assert code == 1 and "exhausted" in err
    code, _, err = run(capsys, "generate", "-k", "2", "--profile", "linear", "--len", "500",
                       "--node-cap", "50")
    assert code == 3 and "budget" in err


def test_verify(capsys, tmp_path):
    mt = tmp_path / "mt.txt"
    assert run(capsys, "mt", "--from", "0", "--to", "1023", "--out", str(mt))[0] == 0
    code, out, _ = run(capsys, "verify", "--file", str(mt), "--profile", "linear")
    assert code == 0 and out.strip() == "ok"
    bad = tmp_path / "a.txt"
    bad.write_text("aaa\n")
    code, out, _ = run(capsys, "verify", "--file", str(bad), "--profile", "linear")
    assert code == 1 and out.strip() == "violation i=1 s=1 l=1"
    code, out, _ = run(capsys, "verify", "--file", str(bad), "--profile", "linear", "--format", "json")
    assert json.loads(out)["result"]["witness"] == {"i": 1, "s": 1, "l": 1}
    wrong = tmp_path / "b.txt"
    wrong.write_text("# k=2\n0120\n")
    code, _, err = run(capsys, "verify", "--file", str(wrong), "--profile", "linear")
    assert code == 2 and "not below k=2" in err
    code, _, _ = run(capsys, "verify", "--file", str(tmp_path / "missing"), "--profile", "linear")
    assert code == 2


def test_count_and_bound(capsys):
    code, out, _ = run(capsys, "count", "-k", "2", "--profile", "linear", "--m", "3")
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == "m,exact,bound,c_pow_m" and rows[4].startswith("3,6,")
    code, out, _ = run(capsys, "count", "-k", "4", "--profile", "linear", "--m", "10", "--c", "2",
                       "--format", "json")
    d = json.loads(out)
    assert d["result"]["condition"]["status"] == "satisfied"
    for r in d["result"]["rows"]:
        assert r["exact"] >= r["bound"] >= 2 ** r["m"]
        if r["m"] < d["result"]["m0"]:
            assert r["exact"] == 4 ** r["m"]
    code, out, _ = run(capsys, "bound", "-k", "4", "--profile", "linear", "--c", "2", "--m", "5")
    assert code == 0 and out.startswith("# condition c=2 status=satisfied")
    code, out, err = run(capsys, "count", "-k", "4", "--profile", "linear", "--m", "12",
                         "--node-cap", "5000")
    assert code == 3 and "# partial" in out


def test_recurrence_flags_square_rows(capsys, tmp_path):
    mt = tmp_path / "mt.txt"
    run(capsys, "mt", "--from", "0", "--to", "1023", "--out", str(mt))
    code, out, _ = run(capsys, "recurrence", "--file", str(mt), "--lmax", "31")
    rows = [l.split(",") for l in out.splitlines()[1:]]
    flagged = [int(l) for l, r, f in rows if f == "1"]
    assert flagged == [0, 1, 3, 7, 15, 31]


def test_mt_and_rotation(capsys):
    code, out, _ = run(capsys, "mt", "--from", "-4", "--to", "3")
    assert out.strip() == "01100110"
    code, out, _ = run(capsys, "mt", "--from", "3", "--to", "1")
    assert code == 2
    code, out, _ = run(capsys, "rotation", "--cf", "1;(1)", "--c", "7/20", "--Q", "100000")
    assert code == 0 and out.splitlines()[0] == "true"
    code, out, _ = run(capsys, "rotation", "--cf", "1;(1)", "--c", "2/5", "--Q", "10")
    assert code == 1 and out.splitlines()[0] == "false q=1"
    code, _, _ = run(capsys, "rotation", "--cf", "1;x", "--c", "2/5", "--Q", "10")
    assert code == 2


def test_hyperbolic(capsys):
    code, out, _ = run(capsys, "hyperbolic", "--n", "2", "--delta", "1/2", "--im", "1.5", "--eps0", "0.25")
    d = json.loads(out)
    assert code == 0 and d["schema"] == "aperiodic.hyperbolic/1"
    assert d["result"]["s_bar0"]["value"] == 451452826 and all(d["checks"].values())
    code, _, err = run(capsys, "hyperbolic", "--n", "2", "--delta", "1/2", "--im", "0.5", "--eps0", "0.1")
    assert code == 2 and "infeasible" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", "-k", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "table:V0,V1" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "aperiodic", "mt", "--from", "0", "--to", "7"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "01101001"
