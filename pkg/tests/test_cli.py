import json
import subprocess
import sys

import jsonschema
import pytest

from hypercover import schemas
from hypercover.cli import main
from hypercover.io import read_graph


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, kind, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, schemas.ALL[kind])
    return code, data


def test_construct_then_check_turan(tmp_path, capsys):
    target = tmp_path / "t.h3"
    code, data = run_json(capsys, "construct", "construct", "--family", "turan3", "--n", 9, "--out", target)
    assert code == 0 and data["edges"] == 27
    assert read_graph(target).m == 27
    code, out, _ = run(capsys, "check", "--pattern", "f5", "--graph", target)
    assert code == 0 and "free:" in out and "true" in out.split("free:")[1].splitlines()[0]
    code, data = run_json(capsys, "check", "check", "--pattern", "f5", "--graph", target)
    assert data["free"] is True and data["uncovered"] == list(range(9))


def test_check_vertex_on_trivial_family(tmp_path, capsys):
    target = tmp_path / "l.json"
    run(capsys, "construct", "--family", "lp3", "--n", 13, "--out", target)
    code, out, _ = run(capsys, "check", "--pattern", "lp3", "--graph", target, "--vertex", 0)
    assert code == 0 and "uncovered" in out
    # every edge holds the apex, so no vertex lies in a loose path at all
    code, data = run_json(capsys, "check", "check", "--pattern", "lp3", "--graph", target, "--vertex", 3)
    assert data["vertex_covered"] is False and data["witness"] is None
    hub = tmp_path / "k.json"
    run(capsys, "construct", "--family", "k113", "--n", 9, "--out", hub)
    code, data = run_json(capsys, "check", "check", "--pattern", "k113", "--graph", hub, "--vertex", 3)
    assert data["vertex_covered"] is True and 3 in data["witness"]


def test_check_witnesses(tmp_path, capsys):
    target = tmp_path / "k.h3"
    run(capsys, "construct", "--family", "k113", "--n", 9, "--out", target)
    code, data = run_json(capsys, "check", "check", "--pattern", "k113", "--graph", target, "--witnesses")
    assert data["uncovered"] == [8] and set(data["witnesses"]) == {str(v) for v in range(8)}
    assert data["covered"] == [True] * 8 + [False]


def test_threshold_command(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "threshold", "--pattern", "tp3", "--n", 6, "--i", 1, "--out", out_file)
    assert code == 0 and "value:" in out and out.split("value:")[1].split()[0] == "4"
    data = json.loads(out_file.read_text())
    jsonschema.validate(data, schemas.THRESHOLD)
    assert data["value"] == 4 and data["wall_seconds"] >= 0
    code, data = run_json(capsys, "threshold", "threshold", "--pattern", "c6", "--n", 6, "--i", 2,
                          "--method", "oracle")
    assert data["value"] == 1 and data["method"] == "naive-oracle"
    code, data = run_json(capsys, "threshold", "threshold", "--pattern", "gs3", "--n", 13, "--i", 1,
                          "--method", "probe", "--trials", 20, "--seed", 4)
    assert data["value"] >= 6 and data["method"] == "probe-lower-bound"


def test_threshold_threads_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("HYPERCOVER_THREADS", "2")
    code, data = run_json(capsys, "threshold", "threshold", "--pattern", "f5", "--n", 5, "--i", 1)
    assert code == 0 and data["value"] == 3
    monkeypatch.setenv("HYPERCOVER_THREADS", "zero")
    code, _, err = run(capsys, "threshold", "--pattern", "f5", "--n", 5, "--i", 1)
    assert code == 1 and "HYPERCOVER_THREADS" in err


def test_threshold_usage_errors(capsys):
    assert run(capsys, "threshold", "--pattern", "f5", "--n", 9, "--i", 1)[0] == 2
    assert run(capsys, "threshold", "--pattern", "f5", "--n", 7, "--i", 1, "--method", "oracle")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["threshold", "--pattern", "nope", "--n", "5", "--i", "1"])
    assert exc.value.code == 2


@pytest.mark.parametrize("op", ["cng", "lemma22", "matching", "tutte-berge"])
def test_analyze_ops(tmp_path, capsys, op):
    g = tmp_path / "g.txt"
    g.write_text("4\n2\n0 1\n2 3\n")
    extra = ["--s", 2] if op == "tutte-berge" else []
    code, data = run_json(capsys, "analyze", "analyze", "--op", op, "--graph", g, *extra)
    assert code == 0 and data["op"] == op
    if op == "tutte-berge":
        assert data["certificate"] == {"B": [0, 2], "components": [[1], [3]], "s": 2}
    if op == "matching":
        assert data["matching_size"] == 2
    if op == "lemma22":
        assert data["holds"] and data["lhs"] == data["rhs"] == 0
    code, out, _ = run(capsys, "analyze", "--op", op, "--graph", g, *extra)
    assert code == 0 and out


def test_analyze_cng_writes_graph(tmp_path, capsys):
    g = tmp_path / "star.json"
    g.write_text(json.dumps({"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}))
    out = tmp_path / "e.txt"
    run(capsys, "analyze", "--op", "cng", "--graph", g, "--out", out)
    assert out.read_text() == "4\n3\n1 2\n1 3\n2 3\n"


def test_analyze_certificate_absent_and_usage(tmp_path, capsys):
    g = tmp_path / "m.txt"
    g.write_text("6\n3\n0 1\n2 3\n4 5\n")
    code, data = run_json(capsys, "analyze", "analyze", "--op", "tutte-berge", "--graph", g, "--s", 2)
    assert data["certificate"] is None
    assert run(capsys, "analyze", "--op", "tutte-berge", "--graph", g)[0] == 2


def test_verify_command(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, data = run_json(capsys, "verify", "verify", "--scope", "gs3", "--n-range", "13..20",
                          "--out", out_file)
    assert code == 0 and data["passed"] and data["counts"]["total"] == 8
    assert all(r["measured"]["delta1"] == (13 + k - 1) // 2 for k, r in enumerate(data["records"]))
    jsonschema.validate(json.loads(out_file.read_text()), schemas.VERIFY)
    code, out, _ = run(capsys, "verify", "--scope", "all", "--n-range", "")
    assert code == 0 and "0 checks" in out


def test_verify_reports_failures_with_exit_three(capsys):
    code, data = run_json(capsys, "verify", "verify", "--scope", "tp3", "--n-range", "6..8")
    assert code == 3 and not data["passed"]
    failing = [r["claim"] for r in data["records"] if r["status"] == "fail"]
    assert failing == ["tp3/n=7"]


def test_verify_is_deterministic(capsys):
    args = ["verify", "--scope", "lemma22,turan", "--n-range", "3..12", "--seed", "9"]
    _, first = run_json(capsys, "verify", *args)
    _, second = run_json(capsys, "verify", *args)
    strip = lambda d: [(r["claim"], r["status"], r["measured"]) for r in d["records"]]  # noqa: E731
    assert strip(first) == strip(second) and first["seed"] == 9


def test_file_and_usage_errors(tmp_path, capsys):
    assert run(capsys, "check", "--pattern", "f5", "--graph", tmp_path / "missing.h3")[0] == 1
    bad = tmp_path / "bad.h3"
    bad.write_text("3\n1\n0 1 1\n")
    assert run(capsys, "check", "--pattern", "f5", "--graph", bad)[0] == 1
    assert run(capsys, "construct", "--family", "gs3", "--n", 5)[0] == 2
    assert run(capsys, "verify", "--scope", "nonsense", "--n-range", "1..2")[0] == 2
    good = tmp_path / "g.h3"
    good.write_text("3\n1\n0 1 2\n")
    assert run(capsys, "check", "--pattern", "f5", "--graph", good, "--vertex", 9)[0] == 2
    for argv in (["bogus"], [], ["verify", "--n-range", "a..b"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hypercover.cli", "construct", "--family", "s3",
                           "--n", "11", "--json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    jsonschema.validate(data, schemas.CONSTRUCT)
    assert data["min_degree"] == 10 and data["designated_vertex"] == 9
