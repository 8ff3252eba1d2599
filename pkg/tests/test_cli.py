from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from atlas.cli import main
from atlas.corpus import complete_graph, path_graph, write_corpus
from atlas.gadgets import star
from atlas.io import write_graph


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def k4(tmp_path):
    p = tmp_path / "K4.txt"
    write_graph(complete_graph(4), p)
    return p


def test_compute_json(capsys, k4):
    rc, out, _ = run(capsys, "compute", str(k4), "--param", "bw", "--param", "ml", "--timeout", "0")
    rep = json.loads(out)
    assert rc == 0 and rep["params"]["bw"]["value"] == 3 and rep["params"]["ml"]["value"] == 3
    assert rep["checks"][0]["name"] == "bw <= ml"


def test_compute_csv_and_aliases(capsys, k4):
    rc, out, _ = run(capsys, "compute", str(k4), "--param", "skeleton", "--format", "csv", "--timeout", "0")
    rows = list(csv.reader(io.StringIO(out)))
    assert rc == 0 and rows[0] == ["graph", "param", "value", "status"]
    assert rows[1] == ["K4", "kappa", "3", "ok"]


def test_compute_anchored(capsys, tmp_path):
    p = tmp_path / "s.txt"
    write_graph(star(5)[0], p)
    rc, out, _ = run(capsys, "compute", str(p), "--param", "hd2", "--anchor", "0", "--radius", "1/2")
    w = json.loads(out)
    assert rc == 0 and w["value"] == 1 and w["radius"] == "1/2"
    rc, _, err = run(capsys, "compute", str(p), "--anchor", "0")
    assert rc == 2 and "--radius" in err


def test_usage_errors(capsys, tmp_path, k4):
    assert run(capsys, "compute", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "compute", str(k4), "--param", "girth")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 -3\n")
    assert run(capsys, "compute", str(bad))[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_config_file(capsys, tmp_path):
    p = tmp_path / "p.txt"
    write_graph(path_graph(16), p)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"caps": {"ml": 3}, "timeout": 0}))
    rc, out, _ = run(capsys, "compute", str(p), "--param", "ml", "--config", str(cfg))
    assert rc == 0 and json.loads(out)["params"]["ml"]["status"] == "skipped-cap"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "compute", str(p), "--config", str(cfg))[0] == 2


def test_gadget_generate_and_check(capsys, tmp_path):
    out_path = tmp_path / "cat.txt"
    rc, out, _ = run(capsys, "gadget", "caterpillar", "--param", "b=3", "--param", "variant=skel-3",
                     "--out", str(out_path))
    assert rc == 0 and json.loads(out)["n"] == 8
    claims = json.loads((tmp_path / "cat.txt.claims.json").read_text())
    assert claims["variant"] == "skel-3"
    rc, out, _ = run(capsys, "gadget", "star", "--param", "n=6", "--check")
    assert rc == 0 and json.loads(out)["ok"]
    rc, out, _ = run(capsys, "gadget", "star", "--param", "n=6", "--check", "--format", "csv")
    assert out.splitlines()[0] == "family,param,relation,expected,actual,status,pass"
    assert run(capsys, "gadget", "star", "--param", "n")[0] == 2


def test_gadget_from_input_graph(capsys, tmp_path):
    p = tmp_path / "p4.txt"
    write_graph(path_graph(4), p)
    rc, out, _ = run(capsys, "gadget", "vc_reduction", "--graph", str(p), "--check")
    rep = json.loads(out)
    assert rc == 0 and rep["n"] == 9 and rep["claims"][0]["actual"] == 2 + 4 + 1


def test_embed(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("3\n0 1 3\n1 0 2\n3 2 0\n")
    rc, out, _ = run(capsys, "embed", "--metric", str(m), "--epsilon", "1/2", "--out", str(tmp_path / "g.txt"))
    rep = json.loads(out)
    assert rc == 0 and rep["distortion_ok"] and rep["L"] == 2
    assert (tmp_path / "g.txt").exists()
    assert run(capsys, "embed", "--metric", str(m), "--epsilon", "2")[0] == 2


def test_kcenter(capsys, tmp_path):
    p = tmp_path / "p5.txt"
    write_graph(path_graph(5), p)
    rc, out, _ = run(capsys, "kcenter", str(p), "--k", "1", "--exact")
    assert rc == 0 and json.loads(out)["exact"]["radius"] == "2/1"
    rc, out, _ = run(capsys, "kcenter", str(p), "--k", "2", "--ratio")
    assert rc == 0 and json.loads(out)["ratio"] == "2/1"
    assert run(capsys, "kcenter", str(p), "--k", "9")[0] == 2


def test_verify_directory(capsys, tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    rc, out, _ = run(capsys, "verify", str(empty))
    assert rc == 0 and json.loads(out) == {"graphs": [], "ok": True, "failures": 0}

    corpus = tmp_path / "corpus"
    write_corpus(corpus, [("K4", complete_graph(4)), ("S5", star(5)[0])])
    rc, out, _ = run(capsys, "verify", str(corpus), "--jobs", "2")
    rep = json.loads(out)
    assert rc == 0 and [g["graph_id"] for g in rep["graphs"]] == ["K4", "S5"]
    assert rep["graphs"][1]["params"]["kappa"]["value"] == 4

    (corpus / "zz.txt").write_text("not a graph\n")
    report_path = tmp_path / "rep.csv"
    rc, _, _ = run(capsys, "verify", str(corpus), "--format", "csv", "--out", str(report_path))
    assert rc == 1
    assert "zz,error" in report_path.read_text()


def test_module_entry_point(k4):
    res = subprocess.run([sys.executable, "-m", "atlas", "compute", str(k4), "--param", "h"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["params"]["h"]["value"] == 3
