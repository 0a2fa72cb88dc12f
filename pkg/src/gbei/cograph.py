"""P4-free graphs: recognition, join splits and cotrees.

A connected P4-free graph on at least two vertices is the join of two smaller
P4-free graphs.  ``join_split`` finds the two sides constructively from a
minimum connected dominating set, which for such graphs is a single vertex or
an edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .graph import (
    Graph,
    GraphError,
    bits,
    component_masks,
    induced_subgraph,
    is_connected,
    mask_of,
    vertices_of,
)

DOMINATING_SET_LIMIT = 20


class CographError(GraphError):
    """Raised for graphs outside the P4-free class, or other precondition failures."""

    def __init__(self, message: str, witness: Optional[tuple[int, ...]] = None):
        super().__init__(message if witness is None else f"{message}; induced P4 {witness}")
        self.witness = witness


def has_induced_p4(G: Graph) -> Optional[tuple[int, int, int, int]]:
    """First induced P4 in a scan of 4-subsets, returned in path order."""
    for quad in itertools.combinations(range(G.n), 4):
        inner = {v: (G.adj[v] & mask_of(u + 1 for u in quad)).bit_count() for v in quad}
        if sum(inner.values()) != 6:
            continue
        degrees = sorted(inner.values())
        if degrees != [1, 1, 2, 2]:
            continue
        # three edges with degrees 1,1,2,2 is P4 (a star has 1,1,1,3)
        start = min(v for v in quad if inner[v] == 1)
        walk = [start]
        prev = None
        while len(walk) < 4:
            cur = walk[-1]
            nxt = [u for u in quad if u != prev and u != cur and G.adj[cur] >> u & 1]
            prev = cur
            walk.append(nxt[0])
        return tuple(v + 1 for v in walk)
    return None


def _dominates(G: Graph, S: int) -> bool:
    closed = S
    for v in bits(S):
        closed |= G.adj[v]
    return closed == (1 << G.n) - 1


def _connected_within(G: Graph, S: int) -> bool:
    return len(component_masks(G, S)) == 1


def minimum_connected_dominating_set(G: Graph) -> frozenset[int]:
    """Smallest connected dominating set; ties go to the lexicographically first."""
    if not is_connected(G):
        raise CographError("a connected dominating set needs a connected graph")
    if G.n > DOMINATING_SET_LIMIT:
        raise CographError(f"exhaustive dominating set search is capped at n = {DOMINATING_SET_LIMIT}")
    for size in range(1, G.n + 1):
        for combo in itertools.combinations(range(G.n), size):
            S = mask_of(v + 1 for v in combo)
            if _dominates(G, S) and _connected_within(G, S):
                return vertices_of(S)
    raise AssertionError("the full vertex set always dominates a connected graph")


@dataclass(frozen=True)
class SplitCertificate:
    dominating: frozenset[int]
    branch: str
    v: Optional[int] = None
    w: Optional[int] = None
    A: frozenset[int] = frozenset()
    B: frozenset[int] = frozenset()
    C1: frozenset[int] = frozenset()
    C2: frozenset[int] = frozenset()
    C3: frozenset[int] = frozenset()

    def to_json(self) -> dict:
        out = {"dominating": sorted(self.dominating), "branch": self.branch}
        if self.v is not None:
            out.update(v=self.v, w=self.w)
            for name in ("A", "B", "C1", "C2", "C3"):
                out[name] = sorted(getattr(self, name))
        return out


def join_split(G: Graph) -> tuple[frozenset[int], frozenset[int], SplitCertificate]:
    """Split a connected P4-free graph as G[V1] * G[V2]."""
    if G.n < 2:
        raise CographError("a join split needs at least two vertices")
    if not is_connected(G):
        raise CographError("a join split needs a connected graph")
    everything = frozenset(G.vertices)
    T = minimum_connected_dominating_set(G)
    if len(T) == 1:
        return frozenset(T), everything - T, SplitCertificate(T, "universal-vertex")
    if len(T) != 2:
        _fail(G, f"minimum connected dominating set {sorted(T)} has {len(T)} vertices, more than 2")
    v, w = sorted(T)
    Nv, Nw = G.neighbors(v), G.neighbors(w)
    A = Nv - Nw - {w}
    B = Nw - Nv - {v}
    C = Nv & Nw
    if not A:
        return frozenset({w}), everything - {w}, SplitCertificate(T, "w-universal", v, w, A, B)
    if not B:
        return frozenset({v}), everything - {v}, SplitCertificate(T, "v-universal", v, w, A, B)
    C1 = frozenset(x for x in C if A <= G.neighbors(x) and not B <= G.neighbors(x))
    C2 = frozenset(x for x in C if not A <= G.neighbors(x) and B <= G.neighbors(x))
    C3 = frozenset(x for x in C if A <= G.neighbors(x) and B <= G.neighbors(x))
    V1 = frozenset({v}) | B | C1 | C3
    V2 = frozenset({w}) | A | C2
    cert = SplitCertificate(T, "edge", v, w, frozenset(A), frozenset(B), C1, C2, C3)
    if V1 | V2 != everything or not _all_cross_adjacent(G, V1, V2):
        _fail(G, f"split {sorted(V1)} | {sorted(V2)} is not a join (certificate {cert.to_json()})")
    return V1, V2, cert


def _fail(G: Graph, reason: str):
    witness = has_induced_p4(G)
    if witness is None:
        # the procedure is only supposed to break on graphs with an induced P4
        raise AssertionError(f"join split failed on a P4-free graph: {reason}")
    raise CographError(reason, witness)


def _all_cross_adjacent(G: Graph, V1, V2) -> bool:
    M2 = mask_of(V2)
    return all(G.adj[v - 1] & M2 == M2 for v in V1)


@dataclass(frozen=True)
class Cotree:
    kind: str
    vertex: Optional[int] = None
    children: tuple["Cotree", ...] = field(default_factory=tuple)

    def leaves(self) -> list[int]:
        if self.kind == "leaf":
            return [self.vertex]
        return [v for c in self.children for v in c.leaves()]

    def to_json(self) -> dict:
        if self.kind == "leaf":
            return {"kind": "leaf", "vertex": self.vertex}
        return {"kind": self.kind, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data: dict) -> "Cotree":
        if data["kind"] == "leaf":
            return cls("leaf", data["vertex"])
        return cls(data["kind"], None, tuple(cls.from_json(c) for c in data["children"]))


def _node(kind: str, parts: list[Cotree]) -> Cotree:
    flat = []
    for p in parts:
        flat.extend(p.children if p.kind == kind else (p,))
    flat.sort(key=lambda c: min(c.leaves()))
    return Cotree(kind, None, tuple(flat))


def cotree(G: Graph) -> Cotree:
    """Cotree built by repeated join splits; fails with a P4 witness otherwise.

    Every join node is checked for full cross adjacency as it is built, so a
    returned tree always reconstructs G.
    """
    try:
        return _decompose(G, (1 << G.n) - 1)
    except CographError as err:
        if err.witness is None:
            raise
        raise CographError("graph is not P4-free", has_induced_p4(G)) from None


def _decompose(G: Graph, within: int) -> Cotree:
    if within.bit_count() == 1:
        return Cotree("leaf", within.bit_length())
    comps = component_masks(G, within)
    if len(comps) > 1:
        return _node("union", [_decompose(G, c) for c in comps])
    H, back = induced_subgraph(G, [v + 1 for v in bits(within)])
    V1, V2, _ = join_split(H)
    return _node("join", [_decompose(G, mask_of(back[v] for v in side)) for side in (V1, V2)])


def cotree_graph(tree: Cotree) -> Graph:
    """Rebuild the labeled graph a cotree describes."""
    leaves = tree.leaves()
    n = max(leaves)
    if sorted(leaves) != list(range(1, n + 1)):
        raise CographError("cotree leaves must be exactly 1..n")
    adj = [0] * n

    def walk(t: Cotree) -> int:
        if t.kind == "leaf":
            return 1 << (t.vertex - 1)
        masks = [walk(c) for c in t.children]
        if t.kind == "join":
            for a, b in itertools.combinations(masks, 2):
                for v in bits(a):
                    adj[v] |= b
                for v in bits(b):
                    adj[v] |= a
        return sum(masks)

    walk(tree)
    return Graph(n, tuple(adj))


def nonadjacent_pairs(G: Graph) -> int:
    return G.n * (G.n - 1) // 2 - G.num_edges
