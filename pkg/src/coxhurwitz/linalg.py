"""Exact linear algebra over Scalar / Fraction entries and integer lattices."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence


def _is_zero(x) -> bool:
    return not x


def row_reduce(rows: Sequence[Sequence], zero=0, one=1):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], zero=0, one=1) -> int:
    return len(row_reduce(rows, zero, one)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero=0, one=1) -> List[list]:
    """Basis of {v : rows @ v = 0}."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(rows, zero, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, zero=0, one=1) -> Optional[list]:
    """One solution of rows @ v = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug, zero, one)
    if ncols in pivots:
        return None
    v = [zero] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = red[r][ncols]
    return v


def inverse(rows: Sequence[Sequence], zero=0, one=1) -> list:
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = row_reduce(aug, zero, one)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


# -- integer lattices -----------------------------------------------------

def hermite_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Row-style Hermite normal form basis of the integer span of ``vectors``."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < dim:
        # gcd-reduce column `col` among remaining rows
        while True:
            nz = [r for r in rows if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(dim):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if nz:
            p = nz[0]
            if p[col] < 0:
                p[:] = [-x for x in p]
            basis.append(p)
            rows = [r for r in rows if r is not p]
        col += 1
    # reduce entries above pivots
    for i, b in enumerate(basis):
        c = next(k for k in range(dim) if b[k])
        for j in range(i):
            q = basis[j][c] // b[c]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], b)]
    return basis


def lattice_index(vectors: Sequence[Sequence[int]], dim: int) -> int:
    """Index of the integer span of ``vectors`` in Z^dim (0 if not full rank)."""
    basis = hermite_basis(vectors, dim)
    if len(basis) < dim:
        return 0
    return abs(math.prod(b[next(k for k in range(dim) if b[k])] for b in basis))


def in_integer_span(vectors: Sequence[Sequence[int]], target: Sequence[int], dim: int) -> bool:
    """Whether ``target`` is an integer combination of ``vectors``."""
    basis = hermite_basis(vectors, dim)
    t = list(map(int, target))
    for b in basis:
        c = next(k for k in range(dim) if b[k])
        if t[c] % b[c]:
            return False
        q = t[c] // b[c]
        t = [x - q * y for x, y in zip(t, b)]
    return not any(t)


def to_fractions(vec) -> List[Fraction]:
    return [Fraction(x) for x in vec]
