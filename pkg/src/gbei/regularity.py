"""Closed-form regularity of S/J_{K_m,G}, certified bounds, classifiers and witnesses.

Every exact rule that applies to a graph is evaluated, not just the first
one; they must agree with each other and with the bounds, otherwise a
FormulaConflict is raised.  The first applicable rule in ``RULE_ORDER``
names the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .graph import (
    Graph,
    bits,
    complement,
    complete,
    complete_multipartite,
    component_masks,
    disjoint_union,
    edgeless,
    induced_subgraph,
    is_connected,
    is_isomorphic,
    join_product,
    path,
)
from .homology import homological_summary
from .poly import Field

RULE_ORDER = (
    "zero-ideal",
    "complete-graphs",
    "m-ge-n",
    "disjoint-sum",
    "path-formula",
    "star-formula",
    "multipartite-m3",
    "join-equal-m-1",
    "join-dominant-factor",
    "join-bounds",
    "bounds",
)

STATEMENTS = {
    "zero-ideal": "no edges, so the ideal is zero and S/J = S has regularity 0",
    "complete-graphs": "K_n: reg = min(m-1, n-1)",
    "m-ge-n": "m >= n with r components: reg = n - r",
    "disjoint-sum": "regularity adds over connected components",
    "path-formula": "P_n: reg = n - 1",
    "star-formula": "star K_{1,m} on m+1 vertices with m rows: reg = m",
    "multipartite-m3": "m = 3 and complete multipartite with parts of size <= 2: reg = 2",
    "join-equal-m-1": "G1*G2 with n1 <= n2, 3 <= m < n1+n2 and (both disconnected and n2 < m, or n2+1 < m): reg = m-1",
    "join-dominant-factor": "G1*G2 with m < n1+n2 and some reg(G_i) >= m: reg = max reg(G_i)",
    "join-bounds": "G1*G2 with m < n1+n2: max(m-1, reg G_i) <= reg <= max(m, reg G_i)",
    "bounds": "per component min(m, n_i) - 1 <= reg <= n_i - 1, summed over components",
    "oracle": "computed from the Betti table or the squarefree initial ideal",
}


class FormulaConflict(AssertionError):
    pass


class RegularityMismatch(AssertionError):
    """Formula and oracle disagree."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class RegularityResult:
    value: Optional[int]
    lower: int
    upper: int
    provenance: str
    params: tuple = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            raise FormulaConflict(f"empty bound interval [{self.lower}, {self.upper}] from {self.provenance}")
        if self.value is not None and not self.lower == self.value == self.upper:
            raise FormulaConflict(f"value {self.value} outside [{self.lower}, {self.upper}]")

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "provenance": self.provenance,
            "statement": STATEMENTS.get(self.provenance, ""),
            "params": dict(self.params),
            "notes": list(self.notes),
        }


def _exact(value: int, tag: str, **params) -> RegularityResult:
    return RegularityResult(value, value, value, tag, tuple(sorted(params.items())))


# --------------------------------------------------------------------------
# structure detection


def _components(G: Graph) -> list[Graph]:
    return [induced_subgraph(G, [v + 1 for v in bits(c)])[0] for c in component_masks(G)]


def _is_complete(G: Graph) -> bool:
    return G.num_edges == G.n * (G.n - 1) // 2


def multipartite_parts(G: Graph) -> Optional[list[int]]:
    """Part sizes (ascending) if G is complete multipartite with >= 2 parts.

    G is complete multipartite exactly when its complement is a disjoint
    union of cliques; the cliques are the parts.
    """
    H = complement(G)
    parts = []
    for c in component_masks(H):
        block, _ = induced_subgraph(H, [v + 1 for v in bits(c)])
        if not _is_complete(block):
            return None
        parts.append(block.n)
    if len(parts) < 2:
        return None
    return sorted(parts)


def is_path(G: Graph) -> bool:
    if G.n == 1 or not is_connected(G) or G.num_edges != G.n - 1:
        return False
    return max(G.degree(v) for v in G.vertices) <= 2


def is_star_with(G: Graph, k: int) -> bool:
    """G is K_{1,k}."""
    return G.n == k + 1 and k >= 1 and G.num_edges == k and any(G.degree(v) == k for v in G.vertices)


def join_splits(G: Graph) -> list[tuple[Graph, Graph]]:
    """Ways to write a connected G as G1 * G2, grouped from complement components.

    All groupings are listed when there are at most six co-components;
    beyond that only one co-component against the rest.
    """
    cocomps = component_masks(complement(G))
    if len(cocomps) < 2:
        return []
    if len(cocomps) <= 6:
        groupings = []
        for mask in range(1, 1 << (len(cocomps) - 1)):
            groupings.append([c for k, c in enumerate(cocomps) if mask >> k & 1])
    else:
        groupings = [[c] for c in cocomps]
    out = []
    full = (1 << G.n) - 1
    for group in groupings:
        A = sum(group)
        parts = []
        for side in (A, full & ~A):
            parts.append(induced_subgraph(G, [v + 1 for v in bits(side)])[0])
        out.append((parts[0], parts[1]))
    return out


# --------------------------------------------------------------------------
# bounds


def reg_bounds(G: Graph, m: int) -> tuple[int, int]:
    """Certified (lower, upper) before any closed-form rule.

    Per component with n_i >= 2 vertices: min(m, n_i) - 1 <= reg <= n_i - 1;
    both ends add up over components.  An edgeless graph gives (0, 0).
    """
    if m < 2:
        raise PreconditionError("m must be at least 2")
    lower = upper = 0
    for c in component_masks(G):
        k = c.bit_count()
        if k >= 2:
            upper += k - 1
            lower += min(m, k) - 1
    return lower, upper


# --------------------------------------------------------------------------
# formulas


def reg_formula(G: Graph, m: int) -> RegularityResult:
    if m < 2:
        raise PreconditionError("m must be at least 2")
    return _formula(G, m)


@lru_cache(maxsize=4096)
def _formula(G: Graph, m: int) -> RegularityResult:
    n = G.n
    if G.num_edges == 0:
        return _exact(0, "zero-ideal")
    lower, upper = reg_bounds(G, m)
    hits: list[tuple[str, int, dict]] = []
    notes: list[str] = []
    narrowed: set[str] = set()
    comps = component_masks(G)
    r = len(comps)

    if _is_complete(G):
        hits.append(("complete-graphs", min(m - 1, n - 1), {"n": n, "m": m}))
    if m >= n:
        hits.append(("m-ge-n", n - r, {"n": n, "r": r, "m": m}))
    if r >= 2:
        parts = [_formula(H, m) for H in _components(G) if H.n >= 2]
        lo = sum(p.lower for p in parts)
        hi = sum(p.upper for p in parts)
        if (lo, hi) != (lower, upper):
            narrowed.add("disjoint-sum")
        lower, upper = max(lower, lo), min(upper, hi)
        if all(p.exact for p in parts):
            hits.append(("disjoint-sum", sum(p.value for p in parts),
                         {"components": [f"{p.provenance}={p.value}" for p in parts]}))
    else:
        if is_path(G):
            hits.append(("path-formula", n - 1, {"n": n}))
        if is_star_with(G, m):
            hits.append(("star-formula", m, {"m": m}))
        parts = multipartite_parts(G)
        if m == 3 and n >= 3 and parts and max(parts) <= 2:
            hits.append(("multipartite-m3", 2, {"parts": parts}))
        if m >= 3 and m < n:
            for G1, G2 in join_splits(G):
                if G1.n > G2.n:
                    G1, G2 = G2, G1
                r1, r2 = _formula(G1, m), _formula(G2, m)
                n1, n2 = G1.n, G2.n
                split = {"n1": n1, "n2": n2, "m": m}
                lo = max(m - 1, r1.lower, r2.lower)
                hi = max(m, r1.upper, r2.upper)
                if lo > lower or hi < upper:
                    narrowed.add("join-bounds")
                lower, upper = max(lower, lo), min(upper, hi)
                both_disconnected = not is_connected(G1) and not is_connected(G2)
                if (both_disconnected and n2 < m) or n2 + 1 < m:
                    hits.append(("join-equal-m-1", m - 1, split))
                if max(r1.lower, r2.lower) >= m and r1.exact and r2.exact:
                    hits.append(("join-dominant-factor", max(r1.value, r2.value), split))

    if lower > upper:
        raise FormulaConflict(f"bounds cross for {G} at m={m}: [{lower}, {upper}]")
    if hits:
        values = {v for _, v, _ in hits}
        if len(values) > 1 or not lower <= hits[0][1] <= upper:
            detail = ", ".join(f"{t}={v}" for t, v, _ in hits)
            raise FormulaConflict(f"rules disagree for {G} at m={m}: {detail}; bounds [{lower}, {upper}]")
        hits.sort(key=lambda h: RULE_ORDER.index(h[0]))
        tag, value, params = hits[0]
        agreeing = tuple(t for t, _, _ in hits[1:])
        if agreeing:
            notes.append("also: " + ", ".join(dict.fromkeys(agreeing)))
        return RegularityResult(value, value, value, tag, _freeze(params), tuple(notes))
    tag = min(narrowed, key=RULE_ORDER.index) if narrowed else "bounds"
    value = lower if lower == upper else None
    return RegularityResult(value, lower, upper, tag, (("m", m),), tuple(notes))


def _freeze(params: dict) -> tuple:
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in params.items()))


# --------------------------------------------------------------------------
# dispatcher


def oracle_value(G: Graph, m: int, method: str = "auto", field: Field | None = None) -> tuple[int, str]:
    s = homological_summary(G, m, field, method)
    return s.regularity, s.method


def reg(G: Graph, m: int, mode: str = "formula", method: str = "auto", field: Field | None = None) -> RegularityResult:
    """Regularity by closed forms, by the oracle, or by both with agreement enforced."""
    if mode not in ("formula", "oracle", "both"):
        raise PreconditionError(f"unknown mode {mode!r}")
    formula = reg_formula(G, m) if mode != "oracle" else None
    if mode == "formula":
        return formula
    if G.num_edges == 0:
        value, used = 0, "zero-ideal"
    else:
        value, used = oracle_value(G, m, method, field)
    if mode == "oracle":
        return _exact(value, "oracle", method=used)
    return reconcile(G, m, formula, value, used)


def reconcile(G: Graph, m: int, formula: RegularityResult, value: int, used: str) -> RegularityResult:
    """Merge a formula result with an oracle value; any disagreement raises."""
    if not formula.lower <= value <= formula.upper or (formula.exact and formula.value != value):
        raise RegularityMismatch(
            f"{G} at m={m}: oracle ({used}) gives {value}, formula {formula.provenance} gives "
            f"value={formula.value} bounds=[{formula.lower}, {formula.upper}]"
        )
    if formula.exact:
        return RegularityResult(value, value, value, formula.provenance,
                                formula.params + (("oracle", used),), formula.notes + ("oracle agrees",))
    return RegularityResult(value, value, value, "oracle",
                            (("formula_bounds", (formula.lower, formula.upper)), ("method", used)),
                            (f"formula gave bounds only ({formula.provenance})",))


# --------------------------------------------------------------------------
# classifiers


@dataclass(frozen=True)
class Classification:
    reg2: bool
    cm_reg2: bool
    extremal_gorenstein: bool
    matched_case: str

    def to_json(self) -> dict:
        return {
            "reg2": self.reg2,
            "cm_reg2": self.cm_reg2,
            "extremal_gorenstein": self.extremal_gorenstein,
            "matched_case": self.matched_case,
        }


def _require_classifiable(G: Graph, m: int):
    if m < 3:
        raise PreconditionError("the classifiers need m >= 3")
    if G.n < 3:
        raise PreconditionError("the classifiers need at least 3 vertices")
    if G.isolated_vertices():
        raise PreconditionError(f"isolated vertices {G.isolated_vertices()} are not allowed")


_P3, _K3, _2K2 = path(3), complete(3), disjoint_union([complete(2), complete(2)])


def classify(G: Graph, m: int) -> Classification:
    """Regularity 2, Cohen-Macaulay with regularity 2, and extremal Gorenstein.

    Regularity 2: P3, K3, K2+K2, or m = 3 and complete multipartite with
    parts of size at most 2.  Among these the Cohen-Macaulay ones are K3,
    K2+K2 and, at m = 3, every complete graph K_n: J is then the ideal of
    2-minors of a generic 3 x n matrix.  Only K3 at m = 3 is Gorenstein.
    """
    _require_classifiable(G, m)
    named = {"P3": _P3, "K3": _K3, "K2+K2": _2K2}
    match = next((name for name, H in named.items() if H.n == G.n and is_isomorphic(G, H)), None)
    parts = multipartite_parts(G)
    if match:
        case = match
    elif m == 3 and parts and max(parts) <= 2:
        case = "K_{" + ",".join(map(str, parts)) + "} with m = 3"
    else:
        case = "none"
    reg2 = case != "none"
    cm = match in ("K3", "K2+K2") or (m == 3 and _is_complete(G))
    gor = match == "K3" and m == 3
    return Classification(reg2, cm, gor, case)


def classify_reg2(G: Graph, m: int) -> Classification:
    return classify(G, m)


def classify_cm_reg2(G: Graph, m: int) -> Classification:
    return classify(G, m)


def classify_extremal_gorenstein(G: Graph, m: int) -> Classification:
    return classify(G, m)


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class Witness:
    graph: Graph
    reason: str
    description: str


def construct_with_regularity(n: int, r: int, m: int) -> Witness:
    """A connected graph on n vertices with reg(S/J_{K_m,G}) = r."""
    if n < 2:
        raise PreconditionError("need n >= 2 for a connected graph with an edge")
    if not 1 <= r <= n - 1:
        raise PreconditionError(f"r must satisfy 1 <= r <= n - 1 = {n - 1}")
    if m < 2:
        raise PreconditionError("m must be at least 2")
    if r == 1:
        if n != 2:
            raise PreconditionError("regularity 1 forces G = K2, so n must be 2")
        return Witness(complete(2), "complete-graphs", "K2")
    if r == 2:
        if n == 3:
            return Witness(path(3), "path-formula", "P3")
        if m == 2:
            raise PreconditionError("no regularity-2 witness is implemented for m = 2 and n >= 4")
        if m != 3:
            raise PreconditionError("for m >= 4 and n >= 4, reg >= min(m, n) - 1 >= 3, so r = 2 is infeasible")
        sizes = [2] * (n // 2) + ([1] if n % 2 else [])
        sizes.sort()
        name = "K_{" + ",".join(map(str, sizes)) + "}"
        return Witness(complete_multipartite(sizes), "multipartite-m3", name)
    if r <= n - 2:
        if not 3 <= m <= r:
            raise PreconditionError(f"the join witness for r = {r} needs 3 <= m <= r")
        G = join_product([path(r + 1), edgeless(n - r - 1)])
        return Witness(G, "join-dominant-factor", f"P{r + 1} * complement(K{n - r - 1})")
    if m < n:
        raise PreconditionError(f"r = n - 1 is only constructed with m >= n = {n}")
    return Witness(complete(n), "m-ge-n", f"K{n}")
