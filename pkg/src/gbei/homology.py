"""Graded Betti numbers of S/I and the invariants read off from them.

``betti_table`` computes beta_{i,j}(S/I) as dimensions of Koszul homology
H_i(x; S/I)_j, with S/I spanned by standard monomials of a Gröbner basis.
The complex is split by the finest grading the ideal respects (row and
column degrees for ideals on the variable grid), and a block is only
visited when the squarefree lex initial ideal has a nonzero Betti number
there: Betti numbers can only drop when passing from in(I) back to I, and
those of in(I) come cheaply from Hochster's formula.

For rings too large for Koszul homology, ``initial_ideal_invariants`` gives
regularity and depth from the squarefree initial ideal alone, which has the
same regularity and depth as I itself (Conca-Varbaro).
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .graph import Graph, component_masks
from .groebner import GroebnerBasis, groebner_basis, hilbert_values, reduce_full, standard_monomials
from .linalg import sparse_rank
from .poly import Field, Ideal, MonomialOrder, Ring, gbei_generators
from .primedec import krull_dimension
from .simplicial import hochster_betti, regularity_and_depth, stanley_reisner_facets

DEFAULT_MAX_VARS = 12
DEFAULT_MAX_BLOCK = 400_000


class OracleError(RuntimeError):
    pass


class ResourceLimit(OracleError):
    """The computation would exceed a configured cap."""


class CutoffReached(OracleError):
    def __init__(self, i: int, j: int, cutoff: int):
        super().__init__(
            f"cutoff reached: beta_{{{i},{j}}} is nonzero with j - i = {j - i} >= cutoff {cutoff}"
        )
        self.i, self.j, self.cutoff = i, j, cutoff


def max_vars() -> int:
    return int(os.environ.get("GBEI_MAX_VARS", DEFAULT_MAX_VARS))


def max_degree() -> Optional[int]:
    raw = os.environ.get("GBEI_MAX_DEGREE")
    return int(raw) if raw else None


@dataclass(frozen=True)
class BettiTable:
    """beta_{i,j}(S/I) for j <= i + cutoff; absent entries are zero."""

    N: int
    cutoff: int
    beta: tuple[tuple[int, int, int], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        for a, b, v in self.beta:
            if (a, b) == (i, j):
                return v
        return 0

    def entries(self) -> dict[tuple[int, int], int]:
        return {(i, j): v for i, j, v in self.beta}

    @property
    def regularity(self) -> int:
        return max(j - i for i, j, _ in self.beta)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _, _ in self.beta)

    def total(self, i: int) -> int:
        return sum(v for a, _, v in self.beta if a == i)

    def k_polynomial(self) -> dict[int, int]:
        """Coefficients of sum_{i,j} (-1)^i beta_{i,j} t^j."""
        out: dict[int, int] = defaultdict(int)
        for i, j, v in self.beta:
            out[j] += -v if i % 2 else v
        return {j: c for j, c in sorted(out.items()) if c}

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "cutoff": self.cutoff,
            "beta": [{"i": i, "j": j, "v": v} for i, j, v in self.beta],
        }

    def render(self) -> str:
        """Macaulay2-style table: rows j - i, columns i."""
        pd = self.projective_dimension
        rows = range(self.regularity + 1)
        cells = {(j - i, i): v for i, j, v in self.beta}
        width = max(len(str(v)) for _, _, v in self.beta) + 1
        lines = ["     " + "".join(f"{i:>{width}}" for i in range(pd + 1))]
        for r in rows:
            line = "".join(f"{(cells.get((r, i)) or '.'):>{width}}" for i in range(pd + 1))
            lines.append(f"{r:>3}: {line}")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# gradings


class _Grading:
    """Packed multidegrees, one byte per coordinate, first coordinate highest."""

    def __init__(self, ring: Ring, fine: bool):
        grid = ring.grid
        self.fine = fine
        self.fields = grid.m + grid.n if fine else 1
        self.guard = int.from_bytes(b"\x80" * self.fields, "big")
        var = []
        for k in range(grid.N):
            if fine:
                i, j = divmod(k, grid.n)
                var.append((1 << 8 * (self.fields - 1 - i)) + (1 << 8 * (self.fields - 1 - grid.m - j)))
            else:
                var.append(1)
        self.var = var
        self.ring = ring

    def of_monomial(self, mono: int) -> int:
        return sum(e * self.var[k] for k, e in enumerate(self.ring.exponents(mono)) if e)

    def of_set(self, E: int) -> int:
        total = 0
        k = 0
        while E:
            if E & 1:
                total += self.var[k]
            E >>= 1
            k += 1
        return total

    def total_degree(self, alpha: int) -> int:
        d = alpha % 255
        return d // 2 if self.fine else d

    def below(self, a: int, b: int) -> bool:
        return ((b | self.guard) - a) & self.guard == self.guard


def _is_fine_homogeneous(I: Ideal, grading: _Grading) -> bool:
    for g in I.generators:
        degs = {grading.of_monomial(m) for m in g.terms}
        if len(degs) > 1:
            return False
    return True


def _squarefree_supports(B: GroebnerBasis) -> Optional[list[int]]:
    """Leading monomials as variable bitmasks (bit k = grid variable k), or None."""
    out = []
    for L in B.leading:
        ex = B.ring.exponents(L)
        if max(ex) > 1:
            return None
        out.append(sum(1 << k for k, e in enumerate(ex) if e))
    return out


# --------------------------------------------------------------------------
# Koszul homology


def _check_ideal(I: Ideal):
    if I.ring.aux:
        raise OracleError("Betti tables are computed in rings without the auxiliary variable")
    for g in I.generators:
        if not g.is_homogeneous():
            raise OracleError("Betti tables need a homogeneous ideal")
        if g.degree() == 0:
            raise OracleError("the ideal is the whole ring")


def betti_table(I: Ideal, reg_cutoff: int, prune: bool = True, max_block: int = DEFAULT_MAX_BLOCK) -> BettiTable:
    """Exact beta_{i,j}(S/I) for j <= i + reg_cutoff via Koszul homology.

    Rows j - i >= reg_cutoff are checked to vanish (CutoffReached otherwise),
    so the table returned is the complete Betti table of S/I.
    """
    _check_ideal(I)
    ring = I.ring
    N = ring.grid.N
    p = ring.field.p
    if N > max_vars():
        raise ResourceLimit(f"{N} variables exceed GBEI_MAX_VARS = {max_vars()} for Koszul homology")
    if reg_cutoff < 1:
        raise OracleError("the cutoff must be at least 1")
    cap = max_degree()
    if cap is not None and reg_cutoff > cap:
        raise ResourceLimit(f"cutoff {reg_cutoff} exceeds GBEI_MAX_DEGREE = {cap}")

    grading = _Grading(ring, fine=True)
    if not _is_fine_homogeneous(I, grading):
        grading = _Grading(ring, fine=False)

    B = groebner_basis(I.with_order("degrevlex"))
    key = MonomialOrder("degrevlex", ring).key
    basis = B._basis()

    candidates: Optional[dict[int, set[int]]] = None
    if prune and not I.is_zero():
        lex_supports = _squarefree_supports(groebner_basis(I.with_order("lex")))
        if lex_supports is not None:
            facets = stanley_reisner_facets(lex_supports, N)
            candidates = defaultdict(set)
            for (i, W) in hochster_betti(facets, N, p):
                candidates[i].add(grading.of_set(W))

    if candidates is None:
        top = reg_cutoff
    else:
        top = max(grading.total_degree(a) - i for i, alphas in candidates.items() for a in alphas)
        top = max(top, reg_cutoff)
    std_by_degree = standard_by_degree(B, top)
    std = defaultdict(list)
    for d, monos in enumerate(std_by_degree):
        for u in monos:
            std[grading.of_monomial(u)].append(u)

    subsets: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for E in range(1 << N):
        subsets[E.bit_count()].append((E, grading.of_set(E)))

    def block(i: int, alpha: int) -> list[tuple[int, int]]:
        out = []
        for E, dE in subsets.get(i, ()):
            if grading.below(dE, alpha):
                out.extend((E, u) for u in std.get(alpha - dE, ()))
        if len(out) > max_block:
            raise ResourceLimit(f"Koszul block of size {len(out)} exceeds the cap {max_block}")
        return out

    nf_cache: dict[tuple[int, int], list] = {}

    def times(k: int, u: int) -> list:
        r = nf_cache.get((k, u))
        if r is None:
            r = list(reduce_full({u + ring.var_index(k): 1}, basis, ring, key).items())
            nf_cache[(k, u)] = r
        return r

    minus = (lambda c: (-c) % p) if p else (lambda c: -c)

    def boundary_rank(i: int, alpha: int) -> int:
        if i <= 0:
            return 0
        rows = []
        index: dict[tuple[int, int], int] = {}
        for E, u in block(i, alpha):
            row: dict[int, object] = {}
            b = E
            while b:
                lo = b & -b
                b ^= lo
                k = lo.bit_length() - 1
                odd = (E & (lo - 1)).bit_count() & 1
                for u2, c in times(k, u):
                    col = index.setdefault((E ^ lo, u2), len(index))
                    v = row.get(col, 0) + (minus(c) if odd else c)
                    if p:
                        v %= p
                    if v:
                        row[col] = v
                    else:
                        row.pop(col, None)
            rows.append(row)
        return sparse_rank(rows, p)

    if candidates is None:
        candidates = defaultdict(set)
        for i, sets in subsets.items():
            for E, dE in sets:
                for alpha, monos in std.items():
                    if grading.total_degree(alpha) <= reg_cutoff:
                        candidates[i].add(alpha + dE)

    beta: dict[tuple[int, int], int] = defaultdict(int)
    for i in sorted(candidates):
        for alpha in sorted(candidates[i]):
            j = grading.total_degree(alpha)
            dim = len(block(i, alpha))
            if not dim:
                continue
            v = dim - boundary_rank(i, alpha) - boundary_rank(i + 1, alpha)
            if v:
                if j - i >= reg_cutoff:
                    raise CutoffReached(i, j, reg_cutoff)
                beta[(i, j)] += v
    entries = tuple((i, j, v) for (i, j), v in sorted(beta.items()))
    return BettiTable(N, reg_cutoff, entries)


def standard_by_degree(B: GroebnerBasis, upto: int) -> list[list[int]]:
    out = [[0]]
    for d in range(1, upto + 1):
        out.append(standard_monomials(B, d, out[-1]))
    return out


def regularity_oracle(I: Ideal, bound: int) -> int:
    """reg(S/I) given a certified upper bound on it."""
    if I.is_zero():
        return 0
    return betti_table(I, bound + 1).regularity


def hilbert_betti_identity(table: BettiTable, B: GroebnerBasis, upto: int) -> bool:
    """HF(S/I, d) = sum_j K_j * C(N + d - j - 1, N - 1) for d = 0..upto."""
    K = table.k_polynomial()
    N = table.N
    hf = hilbert_values(B, upto)
    for d in range(upto + 1):
        rhs = sum(c * comb(N + d - j - 1, N - 1) for j, c in K.items() if d - j >= 0)
        if hf[d] != rhs:
            return False
    return True


# --------------------------------------------------------------------------
# initial-ideal route


def initial_ideal_invariants(I: Ideal) -> tuple[int, int, int]:
    """(reg, depth, dim) of S/I from a squarefree lex initial ideal."""
    _check_ideal(I)
    ring = I.ring
    N = ring.grid.N
    B = groebner_basis(I.with_order("lex"))
    supports = _squarefree_supports(B)
    if supports is None:
        raise OracleError("the lex initial ideal is not squarefree")
    facets = stanley_reisner_facets(supports, N) if supports else [(1 << N) - 1]
    reg, depth = regularity_and_depth(facets, ring.field.p)
    dim = max(f.bit_count() for f in facets)
    return reg, depth, dim


# --------------------------------------------------------------------------
# summaries


@dataclass(frozen=True)
class HomologicalSummary:
    regularity: int
    proj_dim: int
    depth: int
    dim: int
    cohen_macaulay: bool
    gorenstein: Optional[bool]
    method: str
    betti: Optional[BettiTable] = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {
            "regularity": self.regularity,
            "proj_dim": self.proj_dim,
            "depth": self.depth,
            "dim": self.dim,
            "cohen_macaulay": self.cohen_macaulay,
            "gorenstein": self.gorenstein,
            "method": self.method,
        }
        if self.betti is not None:
            out["betti"] = self.betti.to_json()
        return out


def regularity_upper_bound(G: Graph) -> int:
    return sum(c.bit_count() - 1 for c in component_masks(G))


def homological_summary(G: Graph, m: int, field: Field | None = None, method: str = "auto") -> HomologicalSummary:
    """reg, pd, depth, dim, CM and Gorenstein flags of S/J_{K_m,G}.

    ``method`` is "koszul" (full Betti table), "initial-ideal" (no Betti
    table, so the Gorenstein flag stays None) or "auto", which picks Koszul
    homology whenever the number of variables is within GBEI_MAX_VARS.
    """
    I = gbei_generators(G, m, field)
    N = m * G.n
    dim = krull_dimension(G, m)
    if method == "auto":
        method = "koszul" if N <= max_vars() else "initial-ideal"
    if I.is_zero():
        return HomologicalSummary(0, 0, N, N, True, True, "zero-ideal")
    if method == "koszul":
        table = betti_table(I, regularity_upper_bound(G) + 1)
        pd = table.projective_dimension
        depth = N - pd
        cm = depth == dim
        return HomologicalSummary(table.regularity, pd, depth, dim, cm, cm and table.total(pd) == 1, "koszul", table)
    if method == "initial-ideal":
        reg, depth, sr_dim = initial_ideal_invariants(I)
        if sr_dim != dim:
            raise OracleError(f"dimension {sr_dim} of the initial ideal differs from the prime count {dim}")
        return HomologicalSummary(reg, N - depth, depth, dim, depth == dim, None, "initial-ideal")
    raise OracleError(f"unknown method {method!r}")


def characteristic_check(G: Graph, m: int, characteristics=(2, 32003, 0), method: str = "auto") -> dict[int, HomologicalSummary]:
    """Summaries over several fields; raises if any two disagree."""
    results = {p: homological_summary(G, m, Field(p), method) for p in characteristics}
    first = next(iter(results.values()))
    for p, s in results.items():
        if s != first:
            raise OracleError(f"characteristic dependence for {G} at m={m}: {first} versus {s} (p={p})")
    return results
