"""Pure-Python reference versions of the hot loops.

Reflections are small integers (positions in the system's reflection list)
and tuples of them are packed base ``|T|`` into one integer.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple


def _encode(state: Sequence[int], base: int) -> int:
    code = 0
    for x in state:
        code = code * base + x
    return code


def orbit_bfs(seed: Sequence[int], conj: Sequence[Sequence[int]], cap: int):
    """Hurwitz orbit of ``seed`` under ``sigma_i^{+-1}``, breadth first.

    ``conj[a][b]`` is the index of ``t_a t_b t_a``. Returns
    ``(states, parent, move, complete, expanded)``; ``move`` codes are
    ``2*(i-1)`` for ``sigma_i`` and ``2*(i-1)+1`` for its inverse.
    """
    base = max(len(conj), 1)
    m = len(seed)
    start = tuple(seed)
    states: List[Tuple[int, ...]] = [start]
    parent = [-1]
    move = [-1]
    seen = {_encode(start, base): 0}
    k = 0
    while k < len(states):
        cur = states[k]
        for i in range(m - 1):
            a, b = cur[i], cur[i + 1]
            for sign in (0, 1):
                if sign == 0:
                    x, y = conj[a][b], a
                else:
                    x, y = b, conj[b][a]
                nxt = cur[:i] + (x, y) + cur[i + 2:]
                code = _encode(nxt, base)
                if code in seen:
                    continue
                if len(states) >= cap:
                    return states, parent, move, False, k
                seen[code] = len(states)
                states.append(nxt)
                parent.append(k)
                move.append(2 * i + sign)
        k += 1
    return states, parent, move, True, k


def factorizations_of(target: int, length: int, refl_elems: Sequence[int],
                      mul, len_t: Sequence[int]) -> List[Tuple[int, ...]]:
    """All tuples of reflection positions of the given length with product ``target``.

    ``mul[a][b]`` is the group multiplication table on element indices,
    ``refl_elems[p]`` the element index of reflection ``p`` and ``len_t`` the
    reflection length of every element (used to prune: the remaining part
    must have reflection length at most, and of the same parity as, the
    number of factors left).
    """
    inv = [0] * len(len_t)
    # identity is element 0; find inverses through the table
    for a in range(len(len_t)):
        row = mul[a]
        for b in range(len(len_t)):
            if row[b] == 0:
                inv[a] = b
                break
    out: List[Tuple[int, ...]] = []
    nrefl = len(refl_elems)
    prefix = [0] * length

    def rec(depth: int, cur: int):
        left = length - depth
        rem = mul[inv[cur]][target]
        lt = len_t[rem]
        if lt > left or (left - lt) % 2:
            return
        if left == 0:
            out.append(tuple(prefix))
            return
        for p in range(nrefl):
            prefix[depth] = p
            rec(depth + 1, mul[cur][refl_elems[p]])

    rec(0, 0)
    return out
