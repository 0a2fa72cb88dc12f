"""Rank of sparse matrices over F_p (or the rationals when p = 0)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def sparse_rank(rows: Iterable[Mapping[int, object]], p: int) -> int:
    """Rank of the matrix whose rows are ``{column: value}`` dicts.

    Gaussian elimination with rows taken sparsest first and the smallest
    column as pivot, so the result and the work done are deterministic.
    """
    rows = sorted((dict(r) for r in rows if r), key=lambda r: (len(r), min(r)))
    pivots: dict[int, dict] = {}
    for row in rows:
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                if p:
                    inv = pow(row[c], -1, p)
                    pivots[c] = {k: v * inv % p for k, v in row.items()}
                else:
                    lead = Fraction(row[c])
                    pivots[c] = {k: Fraction(v) / lead for k, v in row.items()}
                break
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)
