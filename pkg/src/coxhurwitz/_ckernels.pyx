# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the orbit and factorization kernels."""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libc.stdint cimport int64_t


def orbit_bfs(seed, conj, long cap):
    """Same contract as the pure-Python ``orbit_bfs``."""
    cdef int base = max(len(conj), 1)
    cdef int m = len(seed)
    cdef int nT = len(conj)
    cdef vector[int] ctab
    ctab.resize(nT * nT)
    cdef int a, b, i, sign, x, y, j
    for a in range(nT):
        row = conj[a]
        for b in range(nT):
            ctab[a * nT + b] = row[b]
    cdef vector[int] flat
    cdef vector[int] parent
    cdef vector[int] move
    cdef unordered_map[int64_t, int] seen
    cdef int64_t code
    cdef long k = 0
    cdef long count = 1
    cdef bint complete = True
    for i in range(m):
        flat.push_back(seed[i])
    parent.push_back(-1)
    move.push_back(-1)
    code = 0
    for i in range(m):
        code = code * base + flat[i]
    seen[code] = 0
    cdef vector[int] cur
    cur.resize(m)
    while k < count and complete:
        for i in range(m - 1):
            for sign in range(2):
                for j in range(m):
                    cur[j] = flat[k * m + j]
                a = cur[i]
                b = cur[i + 1]
                if sign == 0:
                    x = ctab[a * nT + b]
                    y = a
                else:
                    x = b
                    y = ctab[b * nT + a]
                cur[i] = x
                cur[i + 1] = y
                code = 0
                for j in range(m):
                    code = code * base + cur[j]
                if seen.count(code):
                    continue
                if count >= cap:
                    complete = False
                    break
                seen[code] = count
                for j in range(m):
                    flat.push_back(cur[j])
                parent.push_back(k)
                move.push_back(2 * i + sign)
                count += 1
            if not complete:
                break
        if complete:
            k += 1
    states = [tuple(flat[s * m + j] for j in range(m)) for s in range(count)]
    return states, list(parent), list(move), complete, k


cdef void _rec(int depth, int cur, int length, int target, int nrefl, int n,
               vector[int]& refl, vector[int]& mul, vector[int]& inv,
               vector[int]& lent, vector[int]& prefix, list out):
    cdef int left = length - depth
    cdef int rem = mul[inv[cur] * n + target]
    cdef int lt = lent[rem]
    cdef int p
    if lt > left or (left - lt) % 2:
        return
    if left == 0:
        out.append(tuple(prefix))
        return
    for p in range(nrefl):
        prefix[depth] = p
        _rec(depth + 1, mul[cur * n + refl[p]], length, target, nrefl, n, refl, mul, inv, lent, prefix, out)


def factorizations_of(int target, int length, refl_elems, mul, len_t):
    """Same contract as the pure-Python ``factorizations_of``."""
    cdef int n = len(len_t)
    cdef vector[int] cmul
    cdef vector[int] inv
    cdef vector[int] lent
    cdef vector[int] refl
    cdef vector[int] prefix
    cdef int a, b
    cmul.resize(n * n)
    inv.resize(n)
    for a in range(n):
        row = mul[a]
        for b in range(n):
            cmul[a * n + b] = row[b]
            if row[b] == 0:
                inv[a] = b
    for a in range(n):
        lent.push_back(len_t[a])
    for a in range(len(refl_elems)):
        refl.push_back(refl_elems[a])
    prefix.resize(length)
    out = []
    _rec(0, 0, length, target, len(refl_elems), n, refl, cmul, inv, lent, prefix, out)
    return out
