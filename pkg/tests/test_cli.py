import json
import os
import subprocess
import sys

import pytest

from gbei.cli import main, parse_graph_spec
from gbei.graph import complete, complete_multipartite, disjoint_union, join_product, path, star


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_graph_language():
    assert parse_graph_spec("path:4") == path(4)
    assert parse_graph_spec("complete:2,complete:2") == disjoint_union([complete(2), complete(2)])
    assert parse_graph_spec("multipartite:1,2,2") == complete_multipartite([1, 2, 2])
    assert parse_graph_spec("complete:1+complete:1,complete:2") == join_product(
        [complete(1), disjoint_union([complete(1), complete(2)])]
    )
    assert parse_graph_spec("star:3,multipartite:1,1") == disjoint_union([star(3), complete(2)])
    assert parse_graph_spec("complement:complete:3").num_edges == 0


def test_ideal(capsys):
    code, data = run_json(capsys, "ideal", "--graph", "path:3", "--m", "3")
    assert code == 0 and len(data["generators"]) == 6
    code, data = run_json(capsys, "ideal", "--graph6", "A_", "--m", "2")
    assert code == 0 and len(data["generators"]) == 1
    code, _, err = run(capsys, "ideal", "--graph", "complete:1", "--m", "3")
    assert code == 2 and "no edges" in err


def test_cutsets_and_primes(capsys):
    code, data = run_json(capsys, "cutsets", "--graph", "path:4")
    assert code == 0 and data["cut_sets"] == [[], [2], [3]]
    assert run(capsys, "cutsets", "--graph", "complete:3")[1].strip() == "{∅}"
    code, out, _ = run(capsys, "primes", "--graph", "path:3", "--m", "3", "--check")
    assert code == 0 and "decomposition verified" in out


def test_cograph(capsys):
    code, data = run_json(capsys, "cograph", "--graph", "path:4")
    assert code == 0 and data["witness"] == [1, 2, 3, 4] and not data["p4_free"]
    code, data = run_json(capsys, "cograph", "--graph", "complete:4")
    assert data["cotree"]["kind"] == "join" and len(data["cotree"]["children"]) == 4
    code, data = run_json(capsys, "cograph", "--graph6", "Ct")
    assert code == 0 and data["p4_free"] and data["split"]["V1"] == [1]


def test_reg(capsys):
    for spec, value in (("path:4", 3), ("star:3", 3)):
        code, data = run_json(capsys, "reg", "--graph", spec, "--m", "3", "--mode", "both")
        assert code == 0 and data["value"] == value
    code, data = run_json(capsys, "reg", "--graph", "complete:3", "--m", "3", "--mode", "formula")
    assert data["value"] == 2 and data["provenance"] == "complete-graphs"


def test_summary(capsys):
    code, data = run_json(capsys, "summary", "--graph", "complete:3", "--m", "3")
    assert code == 0 and data["gorenstein"] and data["classification"]["extremal_gorenstein"]
    code, out, _ = run(capsys, "summary", "--graph", "path:3", "--m", "2", "--field-char", "2")
    assert code == 0 and "regularity = 2" in out


def test_verify(capsys):
    code, data = run_json(capsys, "verify", "--suite", "decomposition")
    assert code == 0 and data["ok"]
    code, _, err = run(capsys, "verify", "--suite", "unknown")
    assert code == 2 and "unknown suite" in err


def test_graphs(capsys):
    code, data = run_json(capsys, "graphs", "--n", "4", "--connected")
    assert code == 0 and len(data) == 6


def test_catalog(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(">>graph6<<Ch\nC~\n")
    out = tmp_path / "out.jsonl"
    code, data = run_json(capsys, "catalog", "--input", str(src), "--m", "3", "--output", str(out), "--no-timings")
    assert code == 0 and data == {"written": 2, "skipped": 0, "errors": 0}
    assert [json.loads(l)["reg"]["value"] for l in out.read_text().splitlines()] == [3, 2]
    code, _, err = run(capsys, "catalog", "--input", str(tmp_path / "missing"), "--m", "3", "--output", str(out))
    assert code == 3


@pytest.mark.parametrize(
    "argv, code",
    [
        (["reg", "--graph", "wheel:5", "--m", "3"], 2),
        (["reg", "--graph6", "A", "--m", "3"], 2),
        (["reg", "--graph", "path:3", "--graph6", "Bw", "--m", "3"], 2),
        (["reg", "--join", "path:3", "--m", "3"], 2),
        (["summary", "--graph", "path:5", "--m", "3", "--method", "koszul"], 3),
        (["summary", "--graph", "path:4", "--m", "3", "--max-degree", "2"], 3),
        (["cutsets", "--graph", "path:21"], 3),
        (["catalog", "--input", "-", "--m", "x", "--output", "o"], 2),
        (["ideal", "--graph", "path:3", "--m", "3", "--field-char", "4"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    before = dict(os.environ)
    assert run(capsys, *argv)[0] == code
    assert dict(os.environ) == before


def test_json_is_byte_deterministic(capsys):
    outs = {run(capsys, "reg", "--graph", "path:4", "--m", "3", "--mode", "both", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_console_script_and_usage_errors():
    res = subprocess.run([sys.executable, "-m", "gbei.cli", "cutsets", "--graph", "path:4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "{∅, {2}, {3}}"
    res = subprocess.run([sys.executable, "-m", "gbei.cli", "bogus"], capture_output=True, text=True)
    assert res.returncode == 2
