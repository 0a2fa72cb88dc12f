import io
import json

from gbei.catalog import catalog_record, read_graph6_lines, run_catalog
from gbei.graph import is_connected, isomorphism_classes, parse_graph6, write_graph6
from gbei.verify import oracle_reg

CONNECTED_4 = [write_graph6(G) for G in isomorphism_classes(4) if is_connected(G)]


def read(path):
    return [json.loads(line) for line in open(path)]


def test_header_and_blank_lines_are_skipped():
    assert list(read_graph6_lines([">>graph6<<A_\n", "\n", "  Bw \n"])) == ["A_", "Bw"]


def test_connected_four_vertex_graphs(tmp_path):
    out = tmp_path / "c.jsonl"
    counts = run_catalog(CONNECTED_4, [3], str(out))
    assert counts == {"written": 6, "skipped": 0, "errors": 0}
    records = read(out)
    assert [r["graph6"] for r in records] == CONNECTED_4
    for rec in records:
        assert rec["reg"]["value"] == oracle_reg(parse_graph6(rec["graph6"]), 3)
        assert rec["reg"]["lower"] <= rec["reg"]["upper"]
        assert set(rec["timings"]) >= {"parse", "formula", "oracle"}


def test_empty_input(tmp_path):
    out = tmp_path / "e.jsonl"
    assert run_catalog(io.StringIO(""), [3], str(out))["written"] == 0
    assert out.read_text() == ""


def test_resume_after_interrupt_writes_no_duplicates(tmp_path):
    out = tmp_path / "r.jsonl"
    run_catalog(CONNECTED_4[:3], [3], str(out), summary=False, timings=False)
    text = out.read_text()
    out.write_text(text[:-15])  # torn last line
    counts = run_catalog(CONNECTED_4, [3], str(out), resume=True, summary=False, timings=False)
    assert counts["skipped"] == 2 and counts["written"] == 4
    keys = [(r["graph6"], r["m"]) for r in read(out)]
    assert keys == [(c, 3) for c in CONNECTED_4]
    again = run_catalog(CONNECTED_4, [3], str(out), resume=True, summary=False, timings=False)
    assert again["written"] == 0 and again["skipped"] == 6


def test_output_is_deterministic_without_timings(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_catalog(CONNECTED_4, [2, 3], str(a), summary=False, timings=False)
    run_catalog(CONNECTED_4, [2, 3], str(b), workers=2, summary=False, timings=False)
    assert a.read_bytes() == b.read_bytes()


def test_bad_record_is_kept_with_an_error():
    rec = catalog_record("A", 3)
    assert rec["error"].startswith("Graph6Error") and rec["reg"] is None
    rec = catalog_record("A_", 1, summary=False)
    assert "m must be" in rec["error"]


def test_classification_note_for_small_graphs():
    rec = catalog_record("A_", 3, summary=False, timings=False)
    assert rec["classification"] is None and "classification_note" in rec
    assert "timings" not in rec and rec["reg"]["value"] == 1
