"""Labeled simple graphs on the vertex set 1..n.

Adjacency is kept as one bitmask per vertex (bit ``v - 1`` stands for vertex
``v``), which keeps every graph an immutable, hashable value.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_VERTICES = 64

GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    """A graph6 record could not be decoded."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if self.n > MAX_VERTICES:
            raise GraphError(f"n = {self.n} exceeds the cap of {MAX_VERTICES} vertices")
        if len(self.adj) != self.n:
            raise GraphError("adjacency list length differs from n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {i + 1} has a neighbour outside 1..{self.n}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i + 1}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i + 1} and {j + 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge {{{u}, {v}}} leaves the vertex range 1..{n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return cls(n, tuple(adj))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u - 1] >> (v - 1) & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(j + 1 for j in bits(self.adj[v - 1]))

    def degree(self, v: int) -> int:
        return self.adj[v - 1].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u + 1, v + 1) for u in range(self.n) for v in bits(self.adj[u]) if v > u]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def isolated_vertices(self) -> list[int]:
        return [v + 1 for v, row in enumerate(self.adj) if row == 0]

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> frozenset[int]:
    return frozenset(b + 1 for b in bits(mask))


# --------------------------------------------------------------------------
# graph6


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(G: Graph) -> str:
    bitseq = [1 if G.adj[i] >> j & 1 else 0 for j in range(1, G.n) for i in range(j)]
    bitseq += [0] * (-len(bitseq) % 6)
    body = []
    for k in range(0, len(bitseq), 6):
        value = 0
        for b in bitseq[k:k + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_n(G.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 record (a ``>>graph6<<`` header is accepted)."""
    record = text.strip("\r\n")
    start = 0
    if record.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
    data = record[start:]
    if not data:
        raise Graph6Error("empty graph6 record", start)
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)!r} outside the printable range 63..126", start + k)

    values = [ord(ch) - 63 for ch in data]
    if values[0] != 63:
        n, pos = values[0], 1
    elif len(values) >= 2 and values[1] == 63:
        if len(values) < 8:
            raise Graph6Error("truncated 8-byte length prefix", start + len(values))
        n = 0
        for v in values[2:8]:
            n = n << 6 | v
        pos = 8
    else:
        if len(values) < 4:
            raise Graph6Error("truncated 4-byte length prefix", start + len(values))
        n = 0
        for v in values[1:4]:
            n = n << 6 | v
        pos = 4
        if n < 63:
            raise Graph6Error(f"4-byte length prefix encodes n = {n} < 63", start)
    if n == 0:
        raise Graph6Error("graph6 record encodes zero vertices", start)
    if n > MAX_VERTICES:
        raise Graph6Error(f"n = {n} exceeds the cap of {MAX_VERTICES} vertices", start)

    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = values[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"length prefix says n = {n}, needing {nbytes} data bytes, found {len(body)}",
            start + pos + min(len(body), nbytes),
        )
    pad = nbytes * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits in the last byte", start + pos + nbytes - 1)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if body[byte] >> (5 - off) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# --------------------------------------------------------------------------
# queries


def induced_subgraph(G: Graph, W: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``W`` relabeled 1..|W| by increasing label.

    Returns the graph and the map new label -> original label.
    """
    keep = sorted(set(W))
    if not keep:
        raise GraphError("induced subgraph on an empty vertex set")
    for v in keep:
        if not 1 <= v <= G.n:
            raise GraphError(f"vertex {v} outside 1..{G.n}")
    index = {v: k for k, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for w in bits(G.adj[v - 1]):
            if w + 1 in index:
                row |= 1 << index[w + 1]
        adj.append(row)
    return Graph(len(keep), tuple(adj)), {k + 1: v for k, v in enumerate(keep)}


def delete_vertices(G: Graph, T: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    return induced_subgraph(G, set(G.vertices) - set(T))


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, by smallest member."""
    remaining = (1 << G.n) - 1 if within is None else within
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(G: Graph) -> list[frozenset[int]]:
    return [vertices_of(c) for c in component_masks(G)]


def num_components(G: Graph, within: int | None = None) -> int:
    return len(component_masks(G, within))


def is_connected(G: Graph) -> bool:
    return num_components(G) == 1


def is_cut_vertex(G: Graph, v: int) -> bool:
    if not 1 <= v <= G.n:
        raise GraphError(f"vertex {v} outside 1..{G.n}")
    if G.n < 2:
        raise GraphError("cut vertices need n >= 2")
    full = (1 << G.n) - 1
    return num_components(G, full & ~(1 << (v - 1))) > num_components(G, full)


def bfs_components(G: Graph, removed: Iterable[int] = ()) -> int:
    """Component count of ``G`` minus ``removed`` via plain BFS on label sets.

    Deliberately independent of the bitmask routines above; tests use it as
    a cross-check.
    """
    gone = set(removed)
    seen: set[int] = set()
    count = 0
    for s in G.vertices:
        if s in gone or s in seen:
            continue
        count += 1
        queue = deque([s])
        seen.add(s)
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if w not in gone and w not in seen:
                    seen.add(w)
                    queue.append(w)
    return count


# --------------------------------------------------------------------------
# constructors


def _offsets(parts: Sequence[Graph]) -> list[int]:
    out, acc = [], 0
    for P in parts:
        out.append(acc)
        acc += P.n
    return out


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    if not parts:
        raise GraphError("disjoint union of an empty list")
    offs = _offsets(parts)
    adj = []
    for P, off in zip(parts, offs):
        adj.extend(row << off for row in P.adj)
    return Graph(len(adj), tuple(adj))


def join_product(parts: Sequence[Graph]) -> Graph:
    """All edges of the parts plus every pair of vertices in distinct parts."""
    if len(parts) < 2:
        raise GraphError("a join product needs at least two graphs")
    offs = _offsets(parts)
    total = sum(P.n for P in parts)
    full = (1 << total) - 1
    adj = []
    for P, off in zip(parts, offs):
        block = ((1 << P.n) - 1) << off
        adj.extend((row << off) | (full & ~block) for row in P.adj)
    return Graph(total, tuple(adj))


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def edgeless(n: int) -> Graph:
    if n < 1:
        raise GraphError("edgeless graph needs n >= 1")
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def star(k: int) -> Graph:
    """K_{1,k}; the centre is vertex 1."""
    if k < 1:
        raise GraphError("star needs k >= 1")
    return Graph.from_edges(k + 1, [(1, v) for v in range(2, k + 2)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Join of edgeless blocks, sizes given in ascending order."""
    sizes = list(sizes)
    if len(sizes) < 2:
        raise GraphError("complete multipartite graph needs at least two parts")
    if any(t < 1 for t in sizes):
        raise GraphError("part sizes must be >= 1")
    if sizes != sorted(sizes):
        raise GraphError(f"part sizes must be ascending, got {sizes}")
    return join_product([edgeless(t) for t in sizes])


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(G.adj)))


def make_named(family: str, *args) -> Graph:
    """Dispatch on a family name: complete, path, star, cycle, edgeless,
    complete_multipartite (sizes), complement (graph)."""
    builders = {
        "complete": complete,
        "path": path,
        "star": star,
        "cycle": cycle,
        "edgeless": edgeless,
        "complete_multipartite": lambda *t: complete_multipartite(t),
        "complement": complement,
    }
    if family not in builders:
        raise GraphError(f"unknown graph family {family!r}")
    return builders[family](*args)


# --------------------------------------------------------------------------
# isomorphism (brute force, test-scale only)


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v - 1]``."""
    adj = [0] * G.n
    for u, v in G.edges():
        a, b = perm[u - 1] - 1, perm[v - 1] - 1
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph(G.n, tuple(adj))


def _edge_code(G: Graph, perm: Sequence[int]) -> int:
    code = 0
    for u, v in G.edges():
        a, b = sorted((perm[u - 1], perm[v - 1]))
        code |= 1 << ((b - 1) * (b - 2) // 2 + (a - 1))
    return code


def canonical_form(G: Graph) -> tuple[int, int]:
    """Minimum edge code over all relabelings; exhaustive, n <= 8."""
    if G.n > 8:
        raise GraphError("brute-force canonical form is limited to n <= 8")
    best = min(_edge_code(G, p) for p in itertools.permutations(range(1, G.n + 1)))
    return G.n, best


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(G.degree(v) for v in G.vertices) != sorted(H.degree(v) for v in H.vertices):
        return False
    target = set(H.edges())
    edges = G.edges()
    for p in itertools.permutations(range(1, G.n + 1)):
        if all(tuple(sorted((p[u - 1], p[v - 1]))) in target for u, v in edges):
            return True
    return False


def all_labeled_graphs(n: int) -> Iterable[Graph]:
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if code >> k & 1])


def isomorphism_classes(n: int) -> list[Graph]:
    """One representative per isomorphism class, ordered by canonical code."""
    reps: dict[tuple[int, int], Graph] = {}
    for G in all_labeled_graphs(n):
        key = canonical_form(G)
        if key not in reps:
            reps[key] = _from_code(n, key[1])
    return [reps[k] for k in sorted(reps)]


def _from_code(n: int, code: int) -> Graph:
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    return Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if code >> k & 1])
