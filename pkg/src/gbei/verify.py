"""Exhaustive small-instance checks of the structural and regularity results.

Each suite returns a SuiteReport; ``ok`` is False as soon as one instance
fails, and the failures are listed.  The CLI ``verify`` command and the
acceptance tests both run these.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .cograph import CographError, cotree, cotree_graph, has_induced_p4
from .graph import (
    Graph,
    all_labeled_graphs,
    canonical_form,
    complete,
    disjoint_union,
    induced_subgraph,
    is_connected,
    isomorphism_classes,
    join_product,
    path,
)
from .groebner import groebner_basis, ideal_equal, intersect_all, is_groebner
from .homology import hilbert_betti_identity, homological_summary
from .poly import gbei_generators
from .primedec import cut_sets, cut_sets_of_join, prime_components, prime_generators
from .regularity import classify, reg


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
        }

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} instances, {len(self.failures)} failures, {self.seconds:.1f}s"


def _timed(name):
    def wrap(fn):
        def run(*args, **kwargs) -> SuiteReport:
            report = SuiteReport(name)
            start = time.perf_counter()
            fn(report, *args, **kwargs)
            report.seconds = time.perf_counter() - start
            return report

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _no_isolated(G: Graph) -> bool:
    return not G.isolated_vertices()


def classification_set() -> list[tuple[Graph, int]]:
    """Isomorphism classes with 3 <= n <= 4, no isolated vertex, at m = 3; n = 3 also at m = 4."""
    out = []
    for n in (3, 4):
        out.extend((G, 3) for G in isomorphism_classes(n) if _no_isolated(G))
    out.extend((G, 4) for G in isomorphism_classes(3) if _no_isolated(G))
    return out


@lru_cache(maxsize=None)
def _oracle_cached(key, m: int, G: Graph) -> int:
    if G.num_edges == 0:
        return 0
    return homological_summary(G, m).regularity


def oracle_reg(G: Graph, m: int) -> int:
    """Oracle regularity, shared between isomorphic graphs up to 8 vertices."""
    key = canonical_form(G) if G.n <= 8 else G
    return _oracle_cached(key, m, G)


# --------------------------------------------------------------------------
# suites


@_timed("decomposition")
def decomposition_suite(report: SuiteReport, max_n: int = 4, ms=(2, 3)):
    """J equals the intersection of its primes, and no prime can be dropped."""
    for n in range(1, max_n + 1):
        for G in isomorphism_classes(n):
            for m in ms:
                report.checked += 1
                J = gbei_generators(G, m)
                primes = [prime_generators(P) for P in prime_components(G, m)]
                if not ideal_equal(J, intersect_all(primes)):
                    report.fail(f"{G} m={m}: intersection of primes differs from J")
                    continue
                if len(primes) > 1:
                    for k in range(len(primes)):
                        rest = intersect_all(primes[:k] + primes[k + 1:])
                        if ideal_equal(rest, J):
                            report.fail(f"{G} m={m}: prime {k} is redundant")


@_timed("join-cutsets")
def join_cutsets_suite(report: SuiteReport, max_total: int = 7):
    """The join formula for C(G1 * G2) against exhaustive enumeration."""
    classes = {n: [G for G in isomorphism_classes(n) if not is_connected(G)] for n in range(2, max_total - 1)}
    for n1 in range(2, max_total - 1):
        for n2 in range(2, max_total - n1 + 1):
            for G1 in classes[n1]:
                for G2 in classes[n2]:
                    report.checked += 1
                    fast = set(cut_sets_of_join(G1, G2).sets)
                    slow = set(cut_sets(join_product([G1, G2])).sets)
                    if fast != slow:
                        report.fail(f"{G1} * {G2}: formula {sorted(map(sorted, fast))} vs {sorted(map(sorted, slow))}")


@_timed("p4free-equivalence")
def p4free_suite(report: SuiteReport, n: int = 6):
    """cotree succeeds exactly on graphs without an induced P4, and rebuilds them."""
    for G in all_labeled_graphs(n):
        report.checked += 1
        witness = has_induced_p4(G)
        try:
            tree = cotree(G)
        except CographError as err:
            if witness is None:
                report.fail(f"{G}: cotree failed on a P4-free graph ({err})")
            continue
        if witness is not None:
            report.fail(f"{G}: cotree succeeded although {witness} induces P4")
        elif cotree_graph(tree) != G:
            report.fail(f"{G}: cotree does not rebuild the graph")


@_timed("reg2-classifier")
def reg2_suite(report: SuiteReport):
    """Classifier agrees with the oracle on regularity 2, formula and oracle agree."""
    for G, m in classification_set():
        report.checked += 1
        value = reg(G, m, "both").value
        if classify(G, m).reg2 != (value == 2):
            report.fail(f"{G} m={m}: classifier says {classify(G, m).reg2}, oracle reg {value}")


@_timed("join-bounds")
def join_bounds_suite(report: SuiteReport, max_total: int = 5):
    """reg(G1 * G2) lies in {reg G1, reg G2, m - 1, m} whenever 3 <= m < n1 + n2."""
    for n1 in range(1, max_total):
        for n2 in range(n1, max_total - n1 + 1):
            for G1 in isomorphism_classes(n1):
                for G2 in isomorphism_classes(n2):
                    if n1 == n2 and canonical_form(G2) < canonical_form(G1):
                        continue
                    G = join_product([G1, G2])
                    for m in range(3, n1 + n2):
                        report.checked += 1
                        r1, r2, r = oracle_reg(G1, m), oracle_reg(G2, m), oracle_reg(G, m)
                        lo, hi = max(m - 1, r1, r2), max(m, r1, r2)
                        if r not in {r1, r2, m - 1, m} or not lo <= r <= hi:
                            report.fail(f"{G1} * {G2} m={m}: reg {r}, factors {r1}, {r2}")


@_timed("cm-gorenstein")
def cm_gorenstein_suite(report: SuiteReport):
    """Named summaries, and the CM / Gorenstein classifiers against the Betti tables."""
    K3, P3 = complete(3), path(3)
    K2K2 = disjoint_union([complete(2), complete(2)])
    expectations = [
        (K3, 3, dict(dim=5, depth=5, cohen_macaulay=True, gorenstein=True)),
        (P3, 3, dict(dim=6, depth=5, cohen_macaulay=False)),
        (K2K2, 3, dict(cohen_macaulay=True, gorenstein=False)),
        (K3, 4, dict(gorenstein=False)),
    ]
    for G, m, want in expectations:
        report.checked += 1
        s = homological_summary(G, m, method="koszul")
        got = {k: getattr(s, k) for k in want}
        if got != want:
            report.fail(f"{G} m={m}: expected {want}, got {got}")
        if want.get("gorenstein") is False and want.get("cohen_macaulay") and s.betti.total(s.proj_dim) == 1:
            report.fail(f"{G} m={m}: last total Betti number is 1")
    for G, m in classification_set():
        report.checked += 1
        s = homological_summary(G, m, method="koszul")
        c = classify(G, m)
        if c.cm_reg2 != (s.cohen_macaulay and s.regularity == 2):
            report.fail(f"{G} m={m}: CM-reg-2 classifier {c.cm_reg2}, summary {s.to_json()}")
        if c.extremal_gorenstein != (bool(s.gorenstein) and s.regularity == 2):
            report.fail(f"{G} m={m}: extremal Gorenstein classifier {c.extremal_gorenstein}, summary {s.to_json()}")
        if s.depth > s.dim or (s.gorenstein and not s.cohen_macaulay):
            report.fail(f"{G} m={m}: inconsistent summary {s.to_json()}")


def _induced_subgraphs(G: Graph):
    for size in range(1, G.n):
        for W in itertools.combinations(G.vertices, size):
            yield induced_subgraph(G, W)[0]


@_timed("monotonicity")
def monotonicity_suite(report: SuiteReport):
    """reg(H) <= reg(G) for every induced subgraph H."""
    for G, m in classification_set():
        r = oracle_reg(G, m)
        for H in _induced_subgraphs(G):
            report.checked += 1
            if oracle_reg(H, m) > r:
                report.fail(f"{H} inside {G} m={m}: {oracle_reg(H, m)} > {r}")


@_timed("groebner")
def groebner_suite(report: SuiteReport):
    """Buchberger criterion, normal-form idempotence and the Hilbert/Betti identity."""
    for G, m in classification_set():
        report.checked += 1
        J = gbei_generators(G, m)
        for order in ("degrevlex", "lex"):
            B = groebner_basis(J.with_order(order))
            if not is_groebner(B.polys, order):
                report.fail(f"{G} m={m}: {order} basis fails the S-pair criterion")
        B = groebner_basis(J)
        for g in J.generators:
            probe = g * g + g
            once = B.normal_form(probe)
            if B.normal_form(once) != once or once:
                report.fail(f"{G} m={m}: normal form of a member is {once}")
        s = homological_summary(G, m, method="koszul")
        if not hilbert_betti_identity(s.betti, B, s.regularity + s.proj_dim + 2):
            report.fail(f"{G} m={m}: Hilbert function differs from the Betti table prediction")


SUITES = {
    "decomposition": decomposition_suite,
    "join-cutsets": join_cutsets_suite,
    "p4free-equivalence": p4free_suite,
    "reg2-classifier": reg2_suite,
    "join-bounds": join_bounds_suite,
    "cm-gorenstein": cm_gorenstein_suite,
    "monotonicity": monotonicity_suite,
    "groebner": groebner_suite,
}


def run_suite(name: str) -> list[SuiteReport]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return [SUITES[name]()]
