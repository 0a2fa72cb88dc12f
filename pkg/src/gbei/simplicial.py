"""Simplicial complexes on bitmask vertex sets.

Used for squarefree monomial ideals: the Stanley-Reisner complex of a
squarefree initial ideal, Hochster's formula for its multigraded Betti
numbers, and the regularity and depth read off from links of faces.
"""

from __future__ import annotations

from typing import Iterable

from .linalg import sparse_rank


def _popcount(x: int) -> int:
    return x.bit_count()


def maximal_sets(sets: Iterable[int]) -> list[int]:
    """Inclusion-maximal members, largest first."""
    out: list[int] = []
    for s in sorted(set(sets), key=_popcount, reverse=True):
        if not any(s & o == s for o in out):
            out.append(s)
    return out


def minimal_sets(sets: Iterable[int]) -> list[int]:
    out: list[int] = []
    for s in sorted(set(sets), key=_popcount):
        if not any(o & s == o for o in out):
            out.append(s)
    return out


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Minimal vertex covers of a hypergraph (Berge's incremental method)."""
    covers = [0]
    for e in sorted(set(edges), key=_popcount):
        if e == 0:
            return []
        grown = set()
        for T in covers:
            if T & e:
                grown.add(T)
                continue
            b = e
            while b:
                lo = b & -b
                grown.add(T | lo)
                b ^= lo
        covers = minimal_sets(grown)
    return covers


def stanley_reisner_facets(nonfaces: Iterable[int], nverts: int) -> list[int]:
    """Facets of the complex whose minimal nonfaces are ``nonfaces``.

    A facet is the complement of a minimal vertex cover of the nonfaces.
    """
    full = (1 << nverts) - 1
    return sorted({full & ~T for T in minimal_transversals(nonfaces)})


def _vertices(facets: list[int]) -> int:
    v = 0
    for f in facets:
        v |= f
    return v


def strong_core(facets: Iterable[int]) -> list[int]:
    """Remove dominated vertices until none is left; homotopy type is kept.

    A vertex v is dominated when all facets through v share another vertex,
    i.e. the link of v is a cone.  Deleting it is a strong collapse.
    """
    facets = maximal_sets(facets)
    changed = True
    while changed and facets:
        changed = False
        b = _vertices(facets)
        while b:
            lo = b & -b
            b ^= lo
            inter = -1
            for f in facets:
                if f & lo:
                    inter &= f
            if inter & ~lo:
                facets = maximal_sets(f & ~lo for f in facets)
                changed = True
                break
    return facets


def reduced_homology(facets: Iterable[int], p: int) -> dict[int, int]:
    """Nonzero reduced Betti numbers {k: dim H~_k} over F_p (rationals if p = 0).

    The void complex (no faces at all) has H~_{-1} = 0 in this convention and
    returns {}; the irrelevant complex {empty set} has H~_{-1} of rank 1.
    """
    facets = list(facets)
    if not facets:
        return {}
    facets = strong_core(facets)
    verts = _vertices(facets)
    if verts == 0:
        return {-1: 1}
    if _popcount(verts) == 1:
        return {}
    faces = set()
    for f in facets:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    bydim: dict[int, list[int]] = {}
    for f in faces:
        bydim.setdefault(_popcount(f) - 1, []).append(f)
    index = {d: {f: i for i, f in enumerate(sorted(fs))} for d, fs in bydim.items()}
    minus_one = p - 1 if p else -1
    ranks = {}
    for d, fs in bydim.items():
        if d - 1 not in bydim:
            ranks[d] = 0
            continue
        lower = index[d - 1]
        rows = []
        for f in fs:
            row = {}
            sign = 1
            b = f
            while b:
                lo = b & -b
                b ^= lo
                row[lower[f ^ lo]] = 1 if sign > 0 else minus_one
                sign = -sign
            rows.append(row)
        ranks[d] = sparse_rank(rows, p)
    out = {}
    for d, fs in bydim.items():
        h = len(fs) - ranks[d] - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def restriction(facets: list[int], W: int) -> list[int]:
    return maximal_sets(f & W for f in facets)


def link(facets: list[int], F: int) -> list[int]:
    return maximal_sets(f & ~F for f in facets if f & F == F)


def hochster_betti(facets: list[int], nverts: int, p: int) -> dict[tuple[int, int], int]:
    """Fine Betti numbers of S/I_Delta: beta_{i,W} = dim H~_{|W|-i-1}(Delta_W).

    Keys are (i, W) with W a vertex bitmask.  Restrictions that are cones
    (all facets share a vertex) are acyclic and skipped without homology.
    """
    out = {(0, 0): 1}
    for W in range(1, 1 << nverts):
        rest = restriction(facets, W)
        common = -1
        for f in rest:
            common &= f
        if rest and common & W:
            continue
        for k, v in reduced_homology(rest, p).items():
            out[(_popcount(W) - k - 1, W)] = v
    return out


def intersection_closure(facets: list[int]) -> set[int]:
    closed = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for A in frontier:
            for f in facets:
                x = A & f
                if x not in closed:
                    new.add(x)
        closed |= new
        frontier = new
    return closed


def regularity_and_depth(facets: list[int], p: int) -> tuple[int, int]:
    """reg and depth of the Stanley-Reisner ring K[Delta] from links of faces.

    Local cohomology of K[Delta] is governed by H~(lk F); a face that is not
    an intersection of facets has a cone as link, so only those are visited.
    reg = max{k + 1 : H~_k(lk F) != 0}, depth = min{|F| + k + 1 : same}.
    """
    reg = 0
    depth = None
    for F in intersection_closure(facets):
        for k in reduced_homology(link(facets, F), p):
            reg = max(reg, k + 1)
            d = _popcount(F) + k + 1
            depth = d if depth is None else min(depth, d)
    return reg, depth
