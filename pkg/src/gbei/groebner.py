"""Buchberger's algorithm, normal forms, intersections and Hilbert functions."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

from .poly import (
    Field,
    Ideal,
    MonomialOrder,
    Polynomial,
    PolyError,
    Ring,
    coprime,
    degree,
    divides,
    lcm,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Gröbner basis, sorted by descending leading monomial."""

    ring: Ring
    order: str
    polys: tuple[Polynomial, ...]
    leading: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.polys)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.polys, self.order)

    def normal_form(self, f: Polynomial | Mapping[int, object]) -> Polynomial:
        terms = f.terms if isinstance(f, Polynomial) else f
        return Polynomial(self.ring, reduce_full(dict(terms), self._basis(), self.ring, MonomialOrder(self.order, self.ring).key))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def _basis(self):
        return [(lm, poly.terms) for lm, poly in zip(self.leading, self.polys)]

    def texts(self) -> list[str]:
        return [p.to_text(self.order) for p in self.polys]

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring and self.order == other.order
                and self.polys == other.polys)

    def __hash__(self) -> int:
        return hash((self.ring, self.order, self.polys))


# --------------------------------------------------------------------------
# reduction


def _leading(f: Mapping[int, object], key) -> int:
    return max(f, key=key)


def reduce_full(f: dict, basis: list[tuple[int, Mapping[int, object]]], ring: Ring, key) -> dict:
    """Complete reduction of ``f`` by monic polynomials ``basis`` (list of (lm, terms))."""
    F = ring.field
    p = F.p
    guard = ring.guard
    rem: dict = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, g in basis:
            if divides(glm, lm, guard):
                shift = lm - glm
                for mono, gc in g.items():
                    mono += shift
                    v = f.get(mono, 0) - c * gc
                    if p:
                        v %= p
                    else:
                        F.check(v)
                    if v:
                        f[mono] = v
                    else:
                        f.pop(mono, None)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _monic(f: dict, F: Field, lm: int) -> dict:
    c = f[lm]
    if c == 1:
        return f
    inv = F.inv(c)
    if F.p:
        return {mono: v * inv % F.p for mono, v in f.items()}
    return {mono: v * inv for mono, v in f.items()}


def _spoly(f: Mapping, flm: int, g: Mapping, glm: int, ring: Ring) -> dict:
    F = ring.field
    p = F.p
    L = lcm(flm, glm, ring.guard)
    sf, sg = L - flm, L - glm
    out = {mono + sf: c for mono, c in f.items()}
    for mono, c in g.items():
        mono += sg
        v = out.get(mono, 0) - c
        if p:
            v %= p
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


# --------------------------------------------------------------------------
# Buchberger


def groebner_basis(I: Ideal) -> GroebnerBasis:
    """Reduced Gröbner basis of ``I`` under ``I.order``.

    Pairs are selected by the normal strategy: smallest lcm degree, then
    smallest lcm in the term order, then creation index.  Useless pairs are
    discarded by the Gebauer--Möller criteria.
    """
    ring = I.ring
    order = MonomialOrder(I.order, ring)
    key = order.key
    guard = ring.guard
    F = ring.field

    polys: list[dict] = []
    lms: list[int] = []
    active: list[int] = []
    pairs: list[tuple] = []
    live: set[tuple[int, int]] = set()

    def push_pair(i: int, j: int):
        L = lcm(lms[i], lms[j], guard)
        heapq.heappush(pairs, (degree(L), key(L), i, j))
        live.add((i, j))

    def insert(h: dict):
        hlm = _leading(h, key)
        h = _monic(h, F, hlm)
        k = len(polys)
        polys.append(h)
        lms.append(hlm)

        # Gebauer--Möller update
        cand = [(g, lcm(lms[g], hlm, guard)) for g in active]
        chosen: list[tuple[int, int, bool]] = []
        for idx, (g, L) in enumerate(cand):
            cop = coprime(lms[g], hlm, guard)
            if not cop:
                if any(divides(L2, L, guard) for _, L2 in cand[idx + 1:]):
                    continue
                if any(divides(L2, L, guard) for _, L2, _ in chosen):
                    continue
            chosen.append((g, L, cop))
        for (i, j) in list(live):
            Lij = lcm(lms[i], lms[j], guard)
            if (divides(hlm, Lij, guard)
                    and lcm(lms[i], hlm, guard) != Lij
                    and lcm(lms[j], hlm, guard) != Lij):
                live.discard((i, j))
        for g, _, cop in chosen:
            if not cop:
                push_pair(g, k)
        active[:] = [g for g in active if not divides(hlm, lms[g], guard)]
        active.append(k)

    basis_view = lambda: [(lms[g], polys[g]) for g in active]

    seeds = sorted(
        (dict(g.terms) for g in I.generators if g.terms),
        key=lambda f: key(_leading(f, key)),
    )
    for f in seeds:
        r = reduce_full(f, basis_view(), ring, key) if active else f
        if r:
            insert(r)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        s = _spoly(polys[i], lms[i], polys[j], lms[j], ring)
        r = reduce_full(s, basis_view(), ring, key)
        if r:
            insert(r)

    return _reduced(ring, I.order, [(lms[g], polys[g]) for g in active], key)


def _reduced(ring: Ring, order: str, basis: list[tuple[int, dict]], key) -> GroebnerBasis:
    guard = ring.guard
    basis = sorted(basis, key=lambda b: key(b[0]))
    minimal = []
    for k, (lm, f) in enumerate(basis):
        if not any(divides(olm, lm, guard) for olm, _ in minimal):
            minimal.append((lm, f))
    out = []
    for k, (lm, f) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = dict(f)
        c = tail.pop(lm)
        tail = reduce_full(tail, others, ring, key)
        tail[lm] = c
        out.append((lm, tail))
    out.sort(key=lambda b: key(b[0]), reverse=True)
    return GroebnerBasis(
        ring,
        order,
        tuple(Polynomial(ring, dict(sorted(f.items(), key=lambda kv: key(kv[0]), reverse=True))) for _, f in out),
        tuple(lm for lm, _ in out),
    )


def is_groebner(polys: Iterable[Polynomial], order: str) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    polys = [p for p in polys if p.terms]
    if not polys:
        return True
    ring = polys[0].ring
    key = MonomialOrder(order, ring).key
    basis = []
    for p in polys:
        lm = _leading(p.terms, key)
        basis.append((lm, _monic(dict(p.terms), ring.field, lm)))
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = _spoly(basis[a][1], basis[a][0], basis[b][1], basis[b][0], ring)
            if reduce_full(s, basis, ring, key):
                return False
    return True


# --------------------------------------------------------------------------
# ideal operations


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    return B.normal_form(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise PolyError("ideals live in different rings")
    order = I.order
    return groebner_basis(I) == groebner_basis(J.with_order(order))


def contains_ideal(I: Ideal, J: Ideal) -> bool:
    """J is contained in I."""
    B = groebner_basis(I)
    return all(B.contains(g) for g in J.generators)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1 - t)*J."""
    if I.ring != J.ring:
        raise PolyError("ideals live in different rings")
    ring = I.ring
    if ring.aux:
        raise PolyError("intersection expects ideals without the auxiliary variable")
    big = ring.with_aux()
    F = ring.field
    t = big.t
    gens = []
    for g in I.generators:
        gens.append({mono + t: c for mono, c in g.terms.items()})
    for g in J.generators:
        moved = dict(g.terms)
        for mono, c in g.terms.items():
            moved[mono + t] = F(-c)
        gens.append(moved)
    B = groebner_basis(Ideal.from_dicts(big, gens, "elim"))
    tbyte = 8 * ring.grid.N
    keep = [f for f in B.polys if all(mono >> tbyte == 0 for mono in f.terms)]
    return Ideal(ring, tuple(Polynomial(ring, dict(f.terms)) for f in keep), I.order)


def intersect_all(ideals: Iterable[Ideal]) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise PolyError("intersection of an empty family")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = ideal_intersection(acc, J)
    return acc


# --------------------------------------------------------------------------
# standard monomials and Hilbert function


def standard_monomials(B: GroebnerBasis, d: int, previous: list[int] | None = None) -> list[int]:
    """Degree-``d`` monomials not divisible by any leading monomial of ``B``.

    Built from the degree ``d - 1`` list: standard monomials form an order
    ideal, so each one is a standard monomial times a variable whose index is
    at least every index already present.
    """
    ring = B.ring
    if ring.aux:
        raise PolyError("standard monomials are computed in rings without t")
    N = ring.grid.N
    guard = ring.guard
    leads = B.leading
    if d == 0:
        return [0]
    if previous is None:
        previous = standard_monomials(B, d - 1)
    out = []
    for u in previous:
        first = 0 if u == 0 else N - 1 - ((u & -u).bit_length() - 1) // 8
        for k in range(first, N):
            mono = u + ring.var_index(k)
            if not any(divides(L, mono, guard) for L in leads):
                out.append(mono)
    return out


def hilbert_function(I: Ideal | GroebnerBasis, d: int) -> int:
    if d < 0:
        return 0
    B = I if isinstance(I, GroebnerBasis) else groebner_basis(I)
    std = [0]
    for k in range(1, d + 1):
        std = standard_monomials(B, k, std)
    return len(std)


def hilbert_values(B: GroebnerBasis, upto: int) -> list[int]:
    std = [0]
    vals = [1]
    for k in range(1, upto + 1):
        std = standard_monomials(B, k, std)
        vals.append(len(std))
    return vals


def polynomial_ring_hilbert(N: int, d: int) -> int:
    return comb(N + d - 1, N - 1) if d >= 0 else 0
