"""Cut sets, the minimal primes P_T(K_m, G) and the Krull dimension.

A vertex set T has the cut vertex property when every v in T reconnects at
least two components of G minus T, i.e. v is a cut vertex of G[(V \\ T) + v].
The primes of J_{K_m,G} are indexed by these sets: P_T kills the columns in T
and takes all 2-minors inside each component of G minus T.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    Graph,
    GraphError,
    bits,
    component_masks,
    induced_subgraph,
    is_connected,
    join_product,
    mask_of,
)
from .poly import Field, Ideal, Ring, VariableGrid, minor

EXHAUSTIVE_LIMIT = 20


class CutSetError(GraphError):
    pass


def _sorted_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(set(sets), key=lambda s: (len(s), sorted(s)))


def _has_property_mask(G: Graph, T: int) -> bool:
    full = (1 << G.n) - 1
    rest = full & ~T
    base = len(component_masks(G, rest))
    for v in bits(T):
        if len(component_masks(G, rest | (1 << v))) >= base:
            return False
    return True


def has_cut_point_property(G: Graph, T: Iterable[int]) -> bool:
    T = set(T)
    for v in T:
        if not 1 <= v <= G.n:
            raise GraphError(f"vertex {v} outside 1..{G.n}")
    return not T or _has_property_mask(G, mask_of(T))


@dataclass(frozen=True)
class CutSetFamily:
    """The family C(G): the empty set first, then by size and lexicographically."""

    ambient: Graph
    sets: tuple[frozenset[int], ...]

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, T) -> bool:
        return frozenset(T) in self.sets

    def as_lists(self) -> list[list[int]]:
        return [sorted(T) for T in self.sets]

    def nonempty(self) -> tuple[frozenset[int], ...]:
        return self.sets[1:]


def cut_sets(G: Graph) -> CutSetFamily:
    """All T with the cut vertex property, by depth-first subset enumeration.

    A member of T needs two neighbours outside T; since T only grows along a
    branch, a member that loses this can never recover, so the branch is cut.
    """
    if G.n > EXHAUSTIVE_LIMIT:
        raise CutSetError(
            f"exhaustive-limit: cut set enumeration is capped at n = {EXHAUSTIVE_LIMIT}, got n = {G.n}"
        )
    found = []

    def viable(T: int) -> bool:
        return all((G.adj[v] & ~T).bit_count() >= 2 for v in bits(T))

    def extend(T: int, start: int):
        for v in range(start, G.n):
            U = T | (1 << v)
            if not viable(U):
                continue
            if _has_property_mask(G, U):
                found.append(U)
            extend(U, v + 1)

    extend(0, 0)
    sets = [frozenset()] + _sorted_sets(frozenset(b + 1 for b in bits(T)) for T in found)
    return CutSetFamily(G, tuple(sets))


def join_collections(families: Sequence[Iterable[Iterable[int]]]) -> list[frozenset[int]]:
    """All unions taking one member from each family; empty if any family is."""
    acc = {frozenset()}
    for fam in families:
        fam = [frozenset(A) for A in fam]
        if not fam:
            return []
        acc = {a | b for a in acc for b in fam}
    return _sorted_sets(acc)


def _component_families(G: Graph, offset: int) -> list[list[frozenset[int]]]:
    out = []
    for comp in component_masks(G):
        H, back = induced_subgraph(G, [v + 1 for v in bits(comp)])
        out.append([frozenset(back[v] + offset for v in T) for T in cut_sets(H)])
    return out


def cut_sets_of_join(G1: Graph, G2: Graph) -> CutSetFamily:
    """C(G1 * G2) from the components of two disconnected graphs.

    The join relabels G2 after G1.  No subsets of the join are enumerated:
    each side contributes its components' families joined together and then
    unioned with the whole other side.
    """
    for name, H in (("first", G1), ("second", G2)):
        if is_connected(H):
            raise CutSetError(
                f"the {name} factor is connected; the join formula needs both factors disconnected, "
                "use cut_sets on the join instead"
            )
    V1 = frozenset(range(1, G1.n + 1))
    V2 = frozenset(range(G1.n + 1, G1.n + G2.n + 1))
    left = [A | V2 for A in join_collections(_component_families(G1, 0))]
    right = [A | V1 for A in join_collections(_component_families(G2, G1.n))]
    sets = [frozenset()] + _sorted_sets(s for s in left + right if s)
    return CutSetFamily(join_product([G1, G2]), tuple(sets))


@dataclass(frozen=True)
class PrimeComponent:
    """P_T(K_m, G): columns T killed, 2-minors inside each clique block."""

    T: frozenset[int]
    m: int
    n: int
    cliques: tuple[frozenset[int], ...]

    @property
    def killed(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.m + 1) for j in sorted(self.T)]

    @property
    def dimension(self) -> int:
        return sum(self.m + len(c) - 1 for c in self.cliques)

    def to_json(self) -> dict:
        return {
            "T": sorted(self.T),
            "killed": [list(c) for c in self.killed],
            "cliques": [sorted(c) for c in self.cliques],
        }


def prime_component(G: Graph, m: int, T: Iterable[int]) -> PrimeComponent:
    T = frozenset(T)
    if m < 2:
        raise CutSetError("m must be at least 2")
    if not has_cut_point_property(G, T):
        raise CutSetError(f"{sorted(T)} lacks the cut vertex property, so P_T is not a minimal prime")
    rest = ((1 << G.n) - 1) & ~mask_of(T)
    cliques = tuple(frozenset(v + 1 for v in bits(c)) for c in component_masks(G, rest))
    return PrimeComponent(T, m, G.n, cliques)


def prime_components(G: Graph, m: int) -> list[PrimeComponent]:
    return [prime_component(G, m, T) for T in cut_sets(G)]


def prime_generators(P: PrimeComponent, field: Field | None = None, order: str = "degrevlex") -> Ideal:
    """Variables of the killed columns followed by the 2-minors of each block."""
    ring = Ring(VariableGrid(P.m, P.n), field or Field())
    gens = [{ring.var(i, j): 1} for i, j in P.killed]
    for block in P.cliques:
        cols = sorted(block)
        for a, t in enumerate(cols):
            for l in cols[a + 1:]:
                for i in range(1, P.m + 1):
                    for j in range(i + 1, P.m + 1):
                        gens.append(minor(ring, i, j, t, l))
    return Ideal.from_dicts(ring, gens, order)


def krull_dimension(G: Graph, m: int) -> int:
    """dim S/J_{K_m,G}: the largest prime dimension, sum of m + n_i - 1 over blocks."""
    return max(P.dimension for P in prime_components(G, m))
