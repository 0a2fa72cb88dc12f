"""Acceptance gate: one PASS/FAIL line per criterion, printed in the run summary.

All quantities are integers and compared exactly.  Each test also asserts its
runtime budget.
"""

import time

import pytest

from gbei.graph import complete, disjoint_union, is_connected, join_product, path, star
from gbei.homology import homological_summary
from gbei.regularity import PreconditionError, construct_with_regularity, reg, reg_formula
from gbei.verify import run_suite

B = join_product([complete(1), disjoint_union([complete(1), complete(2)])])
K2K2 = disjoint_union([complete(2), complete(2)])

REPRODUCTIONS = [
    ("K3", complete(3), 3, 2),
    ("P3", path(3), 3, 2),
    ("P3", path(3), 4, 2),
    ("P4", path(4), 3, 3),
    ("K_{1,3}", star(3), 3, 3),
    ("B", B, 3, 3),
    ("K2+K2", K2K2, 3, 2),
    ("K2", complete(2), 2, 1),
    ("K2", complete(2), 3, 1),
    ("K2", complete(2), 4, 1),
]


def suite_criterion(record, number, suites, budget):
    start = time.perf_counter()
    reports = [r for name in suites for r in run_suite(name)]
    seconds = time.perf_counter() - start
    ok = all(r.ok for r in reports) and seconds < budget
    detail = "; ".join(f"{r.name} {r.checked} checked, {len(r.failures)} failed" for r in reports)
    record(number, ok, f"{detail} ({seconds:.1f}s, budget {budget}s)")
    for r in reports:
        assert r.ok, r.failures[:5]
    assert seconds < budget


def test_criterion_1_regularity_reproductions(record_acceptance):
    results = []
    for name, G, m, expected in REPRODUCTIONS:
        start = time.perf_counter()
        value = reg(G, m, "both").value
        seconds = time.perf_counter() - start
        results.append((name, m, expected, value, seconds))
    bad = [r for r in results if r[2] != r[3] or r[4] >= 60]
    detail = ", ".join(f"{n}@m={m}: {v}" for n, m, _, v, _ in results)
    record_acceptance(1, not bad, f"{detail} (slowest {max(r[4] for r in results):.1f}s)")
    assert not bad, bad


def test_criterion_2_decomposition(record_acceptance):
    suite_criterion(record_acceptance, 2, ["decomposition"], 600)


def test_criterion_3_join_cut_sets(record_acceptance):
    suite_criterion(record_acceptance, 3, ["join-cutsets"], 300)


def test_criterion_4_p4_free_equivalence(record_acceptance):
    suite_criterion(record_acceptance, 4, ["p4free-equivalence"], 300)


def test_criterion_5_reg2_classifier(record_acceptance):
    suite_criterion(record_acceptance, 5, ["reg2-classifier"], 900)


def test_criterion_6_cohen_macaulay_gorenstein(record_acceptance):
    expected = [
        ("K3", complete(3), 3, dict(dim=5, depth=5, gorenstein=True)),
        ("P3", path(3), 3, dict(dim=6, depth=5, cohen_macaulay=False)),
        ("K2+K2", K2K2, 3, dict(cohen_macaulay=True, gorenstein=False)),
        ("K3", complete(3), 4, dict(gorenstein=False)),
    ]
    mismatches = []
    for name, G, m, want in expected:
        s = homological_summary(G, m, method="koszul")
        got = {k: getattr(s, k) for k in want}
        if got != want:
            mismatches.append((name, m, want, got))
        if name == "K2+K2" and s.betti.total(s.proj_dim) == 1:
            mismatches.append((name, m, "last total Betti number", 1))
    (report,) = run_suite("cm-gorenstein")
    ok = not mismatches and report.ok and report.seconds < 600
    record_acceptance(6, ok, f"{len(expected)} named summaries, {len(mismatches)} mismatches; "
                             f"classifiers against Betti tables {report.checked} checked, "
                             f"{len(report.failures)} failed ({report.seconds:.1f}s, budget 600s)")
    assert not mismatches, mismatches
    assert report.ok, report.failures[:5]


def test_criterion_7_join_bounds(record_acceptance):
    suite_criterion(record_acceptance, 7, ["join-bounds"], 1200)


def feasible_requests():
    for n in range(2, 7):
        for r in range(1, n):
            for m in range(2, max(n, 3) + 1):
                try:
                    yield n, r, m, construct_with_regularity(n, r, m)
                except PreconditionError:
                    continue


def test_criterion_8_constructor(record_acceptance):
    checked, failures, covered = 0, [], set()
    for n, r, m, w in feasible_requests():
        checked += 1
        covered.add((n, r))
        G = w.graph
        if G.n != n or not is_connected(G):
            failures.append((n, r, m, "not a connected graph on n vertices"))
            continue
        f = reg_formula(G, m)
        if n <= 5:
            value = homological_summary(G, m).regularity
            if value != r:
                failures.append((n, r, m, f"oracle {value}"))
        tags = {f.provenance} | {t.strip() for note in f.notes if note.startswith("also:") for t in note[5:].split(",")}
        if f.value != r or w.reason not in tags:
            failures.append((n, r, m, f"formula {f.value} via {sorted(tags)}, witness cites {w.reason}"))
    every_r = all((n, r) in covered for n in range(2, 7) for r in range(1, n) if r != 1 or n == 2)
    ok = not failures and every_r
    record_acceptance(8, ok, f"{checked} witnesses over n <= 6, oracle for n <= 5, "
                             f"every feasible r covered: {every_r}, {len(failures)} failures")
    assert not failures, failures
    assert every_r


def test_criterion_9_property_suites(record_acceptance):
    suite_criterion(record_acceptance, 9, ["groebner", "monotonicity"], 1200)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
