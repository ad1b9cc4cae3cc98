"""Exact rank and nullspace over Q.

Rank uses fraction-free (Bareiss) elimination on an integer matrix
obtained by clearing denominators row by row; the nullspace is read off a
reduced row echelon form computed over Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence


def _integer_rows(mat: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in mat:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(mat: Sequence[Sequence]) -> int:
    """Rank of a rational matrix via fraction-free elimination."""
    a = _integer_rows(mat)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            row_i, row_p = a[i], a[rank]
            for j in range(col, ncols):
                # exact division by the previous pivot is the Bareiss invariant
                row_i[j] = (p * row_i[j] - f * row_p[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(mat: Sequence[Sequence]):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in mat]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def nullspace(mat: Sequence[Sequence], ncols: int = None) -> List[List[Fraction]]:
    """Basis of {v : mat v = 0}, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def in_row_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Is ``v`` a Q-linear combination of ``vectors``?"""
    if not vectors:
        return not any(v)
    return bareiss_rank(list(vectors) + [list(v)]) == bareiss_rank(vectors)
