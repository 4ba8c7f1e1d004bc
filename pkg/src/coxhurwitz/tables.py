"""Finite groups given by generator permutations, enumerated into index tables."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import CapExceeded

# full multiplication tables are built up to this order; beyond it, products are looked up lazily
MUL_TABLE_LIMIT = 2000


class PermTable:
    """Elements of a finite group acting faithfully on ``degree`` points.

    Elements are indexed in BFS order by right multiplication with the
    generators, so ``lengths[i]`` is the word length of element ``i`` and
    ``words[i]`` is a shortest word. Index 0 is the identity.
    """

    def __init__(self, gen_perms: Sequence[Sequence[int]], cap: int = 100_000):
        gens = [tuple(g) for g in gen_perms]
        degree = len(gens[0]) if gens else 0
        ident = tuple(range(degree))
        perms: List[Tuple[int, ...]] = [ident]
        index: Dict[Tuple[int, ...], int] = {ident: 0}
        words: List[Tuple[int, ...]] = [()]
        lengths: List[int] = [0]
        right: List[List[int]] = []
        i = 0
        while i < len(perms):
            p = perms[i]
            row = []
            for s, g in enumerate(gens):
                q = tuple(p[x] for x in g)
                j = index.get(q)
                if j is None:
                    if len(perms) >= cap:
                        raise CapExceeded(f"group enumeration exceeded cap {cap}", partial=len(perms))
                    j = len(perms)
                    index[q] = j
                    perms.append(q)
                    words.append(words[i] + (s,))
                    lengths.append(lengths[i] + 1)
                row.append(j)
            right.append(row)
            i += 1
        self.degree = degree
        self.order = len(perms)
        self.perms = np.array(perms, dtype=np.int32).reshape(self.order, degree)
        self.index = index
        self.words = words
        self.lengths = lengths
        self.right = right  # right[i][s] = index of (element i) * gen s
        self._mul = None
        self._mul_cache: Dict[Tuple[int, int], int] = {}
        if self.order <= MUL_TABLE_LIMIT:
            self._mul = self._build_mul()
        self.inv = [self._find_inverse(i) for i in range(self.order)]

    def _build_mul(self) -> np.ndarray:
        P = self.perms
        prod = P[:, P]  # prod[a, b, r] = P[a, P[b, r]] = (a*b)(r)
        out = np.empty((self.order, self.order), dtype=np.int32)
        index = self.index
        for a in range(self.order):
            block = prod[a]
            out[a] = [index[tuple(row)] for row in block.tolist()]
        return out

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        key = (a, b)
        r = self._mul_cache.get(key)
        if r is None:
            pa, pb = self.perms[a], self.perms[b]
            r = self.index[tuple(pa[pb].tolist())]
            self._mul_cache[key] = r
        return r

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul is None:
            raise ValueError("multiplication table not materialized for large groups")
        return self._mul

    def _find_inverse(self, a: int) -> int:
        p = self.perms[a]
        inv = np.empty_like(p)
        inv[p] = np.arange(self.degree, dtype=p.dtype)
        return self.index[tuple(inv.tolist())]

    def element_of_perm(self, perm: Sequence[int]) -> int:
        return self.index[tuple(perm)]
