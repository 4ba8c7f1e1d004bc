"""Hurwitz action on reflection factorizations.

Braid words are sequences of letters ``(i, sign)`` with 1-based ``i``;
letters are applied to a tuple one after another, first letter first.
``sigma_i`` sends ``(a, b)`` at positions ``i, i+1`` to ``(aba, a)`` and
``sigma_i^-1`` sends it to ``(b, bab)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import kernels
from .coxeter import CoxeterSystem
from .dyer import chi_rank2, conj_multiset, parabolic_closure, reflection_length
from .errors import CapExceeded, CoxeterError, Indeterminate, UnsupportedSystem

__all__ = [
    "Factorization",
    "BraidWord",
    "Orbit",
    "NormalizedPath",
    "DuplicatePair",
    "Reduction",
    "Extension",
    "hurwitz_move",
    "apply_braid",
    "orbit",
    "equivalent",
    "normalize_path",
    "reduce",
    "reduce_by_length_S",
    "push_into_N",
    "extend_to_simples",
    "DEFAULT_ORBIT_CAP",
]

DEFAULT_ORBIT_CAP = 1_000_000


# -- data types -----------------------------------------------------------


class Factorization:
    """An ordered tuple of reflections together with its product."""

    __slots__ = ("system", "entries", "_product", "_key", "_hash")

    def __init__(self, system, entries: Iterable, check: bool = True):
        self.system = system
        self.entries = tuple(entries)
        if check:
            for t in self.entries:
                if t.system is not system:
                    raise CoxeterError("factor belongs to a different system")
                if system.is_reflection(t) is None:
                    raise CoxeterError(f"factor {t!r} is not a reflection")
        self._product = None
        self._key = None
        self._hash = None

    @property
    def product(self):
        if self._product is None:
            p = self.system.identity
            for t in self.entries:
                p = p * t
            self._product = p
        return self._product

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(t.key for t in self.entries)
        return self._key

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Factorization):
            return NotImplemented
        return self.system is other.system and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def replace(self, entries: Iterable) -> "Factorization":
        return Factorization(self.system, entries, check=False)

    def is_reduced(self) -> bool:
        return reflection_length(self.product) == len(self.entries)

    def has_adjacent_duplicate(self) -> bool:
        return any(a == b for a, b in zip(self.entries, self.entries[1:]))

    def has_repeated_entry(self) -> bool:
        return len(set(self.entries)) != len(self.entries)

    def __repr__(self) -> str:
        return f"Factorization({list(self.entries)!r})"


Letter = Tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """Sequence of letters ``(i, +1|-1)`` applied left to right."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), 1 if s > 0 else -1) for i, s in self.letters))
        for i, _ in self.letters:
            if i < 1:
                raise CoxeterError(f"braid generator index {i} must be >= 1")

    def __add__(self, other: "BraidWord") -> "BraidWord":
        """Apply ``self`` first, then ``other``."""
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def shift(self, k: int) -> "BraidWord":
        return BraidWord(tuple((i + k, s) for i, s in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def to_json(self) -> List[List[int]]:
        return [[i, s] for i, s in self.letters]

    @classmethod
    def from_json(cls, data) -> "BraidWord":
        return cls(tuple((int(i), int(s)) for i, s in data))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if s > 0 else f"s{i}^-1" for i, s in self.letters)


# -- moves ----------------------------------------------------------------


def _move_entries(entries: list, i: int, sign: int) -> None:
    a, b = entries[i - 1], entries[i]
    if sign > 0:
        entries[i - 1], entries[i] = a * b * a, a
    else:
        entries[i - 1], entries[i] = b, b * a * b


def hurwitz_move(f: Factorization, i: int, sign: int = 1) -> Factorization:
    """Apply ``sigma_i`` (``sign=+1``) or ``sigma_i^-1`` (``sign=-1``)."""
    if not 1 <= i <= len(f) - 1:
        raise CoxeterError(f"braid index {i} out of range for a tuple of length {len(f)}")
    entries = list(f.entries)
    _move_entries(entries, i, sign)
    out = f.replace(entries)
    out._product = f._product
    return out


def apply_braid(f: Factorization, braid: BraidWord) -> Factorization:
    entries = list(f.entries)
    m = len(entries)
    for i, s in braid.letters:
        if not 1 <= i <= m - 1:
            raise CoxeterError(f"braid index {i} out of range for a tuple of length {m}")
        _move_entries(entries, i, s)
    out = f.replace(entries)
    out._product = f._product
    return out


# -- orbits ---------------------------------------------------------------


def _letter_code(i: int, s: int) -> int:
    return 2 * (i - 1) + (0 if s > 0 else 1)


def _code_letter(code: int) -> Letter:
    return code // 2 + 1, 1 if code % 2 == 0 else -1


@dataclass
class Orbit:
    """A Hurwitz orbit with a BFS spanning tree rooted at the seed."""

    seed: Factorization
    members: List[Factorization]
    parent: List[int]
    move: List[int]
    _index: Dict[Factorization, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {f: k for k, f in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Factorization]:
        return iter(self.members)

    def __contains__(self, f) -> bool:
        return f in self._index

    def index(self, f: Factorization) -> Optional[int]:
        return self._index.get(f)

    def witness(self, f: Union[int, Factorization]) -> BraidWord:
        """Braid word taking the seed to the given member."""
        k = f if isinstance(f, int) else self._index[f]
        letters = []
        while self.parent[k] >= 0:
            letters.append(_code_letter(self.move[k]))
            k = self.parent[k]
        return BraidWord(tuple(reversed(letters)))

    def edges(self) -> List[Tuple[int, int, Letter]]:
        out = []
        m = len(self.seed)
        for k, f in enumerate(self.members):
            for i in range(1, m):
                for s in (1, -1):
                    g = hurwitz_move(f, i, s)
                    out.append((k, self._index[g], (i, s)))
        return out

    def to_dot(self, label: Callable[[Factorization], str] = None) -> str:
        label = label or (lambda f: ", ".join(repr(t) for t in f.entries))
        lines = ["digraph hurwitz_orbit {"]
        for k, f in enumerate(self.members):
            text = label(f).replace('"', "'")
            lines.append(f'  n{k} [label="{text}"];')
        for a, b, (i, s) in self.edges():
            name = f"s{i}" if s > 0 else f"s{i}^-1"
            lines.append(f'  n{a} -> n{b} [label="{name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _uses_table(f: Factorization) -> bool:
    return isinstance(f.system, CoxeterSystem) and f.system.is_finite


def orbit(f: Factorization, cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    """Hurwitz orbit of ``f`` by breadth-first search.

    Moves are tried in the order ``sigma_1, sigma_1^-1, sigma_2, ...``, so the
    member order and witnesses are reproducible. Raises :class:`CapExceeded`
    with the visited members and the unexpanded frontier if the orbit has
    more than ``cap`` members.
    """
    if cap <= 0:
        raise CoxeterError("cap must be positive")
    system = f.system
    if len(f) and _uses_table(f):
        refl = system.reflections()
        pos = [system.reflection_position(t) for t in f.entries]
        states, parent, move, complete, nexp = kernels.orbit_bfs(pos, system.conjugation_table(), cap)
        members = [Factorization(system, (refl[p] for p in st), check=False) for st in states]
        for g in members:
            g._product = f.product
        if not complete:
            raise CapExceeded(
                f"Hurwitz orbit exceeded cap {cap}",
                partial=members,
                frontier=members[nexp:],
            )
        return Orbit(f, members, parent, move)
    return _orbit_generic(f, cap)


def _orbit_generic(f: Factorization, cap: int) -> Orbit:
    members = [f]
    index = {f.entries: 0}
    parent = [-1]
    move = [-1]
    m = len(f)
    k = 0
    while k < len(members):
        cur = members[k].entries
        for i in range(1, m):
            a, b = cur[i - 1], cur[i]
            for s in (1, -1):
                if s > 0:
                    nxt = cur[: i - 1] + (a * b * a, a) + cur[i + 1:]
                else:
                    nxt = cur[: i - 1] + (b, b * a * b) + cur[i + 1:]
                if nxt not in index:
                    if len(members) >= cap:
                        part = [g for g in members]
                        raise CapExceeded(
                            f"Hurwitz orbit exceeded cap {cap}", partial=part, frontier=part[k:]
                        )
                    index[nxt] = len(members)
                    g = f.replace(nxt)
                    g._product = f._product
                    members.append(g)
                    parent.append(k)
                    move.append(_letter_code(i, s))
        k += 1
    return Orbit(f, members, parent, move, {g: j for j, g in enumerate(members)})


def _neighbors(entries: tuple):
    m = len(entries)
    for i in range(1, m):
        a, b = entries[i - 1], entries[i]
        yield (i, 1), entries[: i - 1] + (a * b * a, a) + entries[i + 1:]
        yield (i, -1), entries[: i - 1] + (b, b * a * b) + entries[i + 1:]


def equivalent(f: Factorization, g: Factorization, cap: int = DEFAULT_ORBIT_CAP) -> Optional[BraidWord]:
    """Braid word taking ``f`` to ``g``, or ``None`` if they are not Hurwitz equivalent.

    Bidirectional BFS. Raises :class:`Indeterminate` if the search is cut
    off by ``cap`` before a verdict.
    """
    if f.system is not g.system:
        raise CoxeterError("factorizations of different systems")
    if len(f) != len(g) or f.product != g.product:
        return None
    if f.entries == g.entries:
        return BraidWord()
    if conj_multiset(f.entries) != conj_multiset(g.entries):
        return None
    # parent maps: tuple -> (previous tuple, letter used to get here)
    fwd = {f.entries: None}
    bwd = {g.entries: None}
    fq, bq = deque([f.entries]), deque([g.entries])
    meet = None
    while fq and bq and meet is None:
        # expand the smaller side by one level
        grow_fwd = len(fq) <= len(bq)
        q, seen, other = (fq, fwd, bwd) if grow_fwd else (bq, bwd, fwd)
        for _ in range(len(q)):
            cur = q.popleft()
            for letter, nxt in _neighbors(cur):
                if nxt in seen:
                    continue
                seen[nxt] = (cur, letter)
                if nxt in other:
                    meet = nxt
                    break
                q.append(nxt)
                if len(fwd) + len(bwd) > cap:
                    raise Indeterminate(f"equivalence search exceeded cap {cap}")
            if meet is not None:
                break
    if meet is None:
        return None
    left = []
    cur = meet
    while fwd[cur] is not None:
        prev, letter = fwd[cur]
        left.append(letter)
        cur = prev
    right = []
    cur = meet
    while bwd[cur] is not None:
        prev, letter = bwd[cur]
        right.append(letter)
        cur = prev
    # bwd letters take g-side tuples outward; walking back to g inverts them in order
    braid = BraidWord(tuple(reversed(left))) + BraidWord(tuple((i, -s) for i, s in right))
    return braid


# -- path normalization ---------------------------------------------------


@dataclass(frozen=True)
class NormalizedPath:
    """Result of :func:`normalize_path` with a decreasing-then-increasing path."""

    braid: BraidWord
    factorization: Factorization
    valley: int
    lengths: Tuple[int, ...]


@dataclass(frozen=True)
class DuplicatePair:
    """Two equal adjacent factors reached at positions ``position, position+1``."""

    braid: BraidWord
    factorization: Factorization
    position: int


def _vertex_lengths(system, x, entries) -> List[int]:
    out = [system.length(x)]
    v = x
    for t in entries:
        v = v * t
        out.append(system.length(v))
    return out


def _dihedral_rotation(a, b, target, limit: int) -> Tuple[int, tuple]:
    """Smallest ``|m|`` (positive first) with ``sigma^m (a, b)`` starting with ``target``."""
    pos = (a, b)
    neg = (a, b)
    for m in range(1, limit + 1):
        x, y = pos
        pos = (x * y * x, x)
        if pos[0] == target:
            return m, pos
        x, y = neg
        neg = (y, y * x * y)
        if neg[0] == target:
            return -m, neg
    raise CoxeterError("reflection not reached by rank-two Hurwitz moves")


def normalize_path(x, f: Factorization, max_steps: int = 1_000_000) -> Union[NormalizedPath, DuplicatePair]:
    """Rewrite ``f`` by Hurwitz moves so its Bruhat path from ``x`` has one valley.

    The leftmost peak ``v -> v t1 <- v t1 t2`` is replaced by the Hurwitz
    equivalent pair ``(t1', t2')`` with ``t1'`` in the canonical simple system
    of ``<t1, t2>`` minimizing ``l(v t1')``, which lowers the total vertex
    length. If two equal adjacent factors appear, the rewriting stops and a
    :class:`DuplicatePair` is returned.
    """
    system = f.system
    entries = list(f.entries)
    letters: List[Letter] = []
    for _ in range(max_steps):
        for j in range(len(entries) - 1):
            if entries[j] == entries[j + 1]:
                out = f.replace(entries)
                out._product = f._product
                return DuplicatePair(BraidWord(tuple(letters)), out, j + 1)
        lengths = _vertex_lengths(system, x, entries)
        up = [lengths[k + 1] > lengths[k] for k in range(len(entries))]
        peak = next((k for k in range(len(entries) - 1) if up[k] and not up[k + 1]), None)
        if peak is None:
            out = f.replace(entries)
            out._product = f._product
            valley = sum(1 for u in up if not u)
            return NormalizedPath(BraidWord(tuple(letters)), out, valley, tuple(lengths))
        # vertex before the peak edge
        v = x
        for t in entries[:peak]:
            v = v * t
        t1, t2 = entries[peak], entries[peak + 1]
        cands = sorted(chi_rank2(t1, t2), key=lambda r: (system.length(v * r), r.key))
        new1 = cands[0]
        if system.length(v * new1) >= lengths[peak + 1]:
            raise AssertionError("rank-two rewriting failed to lower the path")
        limit = 4 * (system.length(t1) + system.length(t2) + system.length(new1)) + 8
        m, pair = _dihedral_rotation(t1, t2, new1, limit)
        letters.extend([(peak + 1, 1 if m > 0 else -1)] * abs(m))
        entries[peak], entries[peak + 1] = pair
    raise CoxeterError("path normalization did not terminate")


# -- reduction ------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """Hurwitz-equivalent form ``(r_1..r_m, p_1, p_1, ..., p_k, p_k)`` of a factorization."""

    braid: BraidWord
    factorization: Factorization
    m: int

    @property
    def prefix(self) -> tuple:
        return self.factorization.entries[: self.m]

    @property
    def pairs(self) -> List:
        e = self.factorization.entries
        return [e[k] for k in range(self.m, len(e), 2)]


def _shift_pair_right(entries: list, j: int, end: int, letters: List[Letter]) -> None:
    """Move the equal pair at 1-based positions ``j, j+1`` to ``end-1, end``."""
    while j + 1 < end:
        # (r, r, u) -> sigma_{j+1} -> (r, rur, r) -> sigma_j -> (u, r, r)
        _move_entries(entries, j + 1, 1)
        _move_entries(entries, j, 1)
        letters.append((j + 1, 1))
        letters.append((j, 1))
        j += 1


def _standard_conjugator(system, reflections) -> object:
    """Some ``u`` with ``u P u^-1`` a standard parabolic, for ``P`` given by its reflections."""
    table = _standard_parabolics(system)
    target = len(reflections)
    for u in system.elements():
        ui = u.inverse()
        conj = frozenset(u * t * ui for t in reflections)
        if len(conj) == target and conj in table:
            return u
    raise CoxeterError("parabolic subgroup is not conjugate to a standard one")


_STD_CACHE: Dict[int, frozenset] = {}


def _standard_parabolics(system) -> frozenset:
    key = id(system)
    found = _STD_CACHE.get(key)
    if found is None:
        sets = set()
        n = system.rank
        for r in range(n + 1):
            for sub in itertools.combinations(range(n), r):
                gens = [system.gens[s] for s in sub]
                if gens:
                    refl = [t for t in system.reflections() if set(system.reduced_word(t)) <= set(sub)]
                    sets.add(frozenset(refl))
                else:
                    sets.add(frozenset())
        found = frozenset(sets)
        _STD_CACHE[key] = found
    return found


def reduce(f: Factorization) -> Reduction:
    """Hurwitz-move ``f`` to a T-reduced prefix followed by equal adjacent pairs.

    Finite systems only. At each round the maximal reduced prefix
    ``t_1..t_l`` is found, the path from ``x = (t_1...t_{l+1})^-1`` to ``e`` is
    normalized after conjugating ``P(x)`` to a standard parabolic; this must
    produce two equal adjacent factors, which are then moved to the end.
    """
    system = f.system
    if not getattr(system, "is_finite", False) or getattr(system, "is_affine", False):
        raise UnsupportedSystem("reduce needs a finite system; use reduce_by_length_S")
    entries = list(f.entries)
    letters: List[Letter] = []
    end = len(entries)
    while True:
        prod = system.identity
        l = 0
        while l < end:
            nxt = prod * entries[l]
            if reflection_length(nxt) != l + 1:
                break
            prod = nxt
            l += 1
        if l == end:
            break
        head = entries[: l + 1]
        p = prod * entries[l]
        x = p.inverse()
        closure = parabolic_closure([x], system)
        u = _standard_conjugator(system, closure.reflections)
        ui = u.inverse()
        conj = Factorization(system, [u * t * ui for t in head], check=False)
        result = normalize_path(u * x * ui, conj)
        if not isinstance(result, DuplicatePair):
            raise AssertionError("reduction reached a decreasing path without a duplicate pair")
        # the braid acts the same way on the unconjugated factors
        for i, s in result.braid.letters:
            _move_entries(entries, i, s)
        letters.extend(result.braid.letters)
        _shift_pair_right(entries, result.position, end, letters)
        end -= 2
    out = f.replace(entries)
    out._product = f._product
    return Reduction(BraidWord(tuple(letters)), out, end)


def reduce_by_length_S(f: Factorization) -> Reduction:
    """Hurwitz-move ``f`` to ``(r_1..r_m, pairs)`` with ``m = l_S(product)``.

    Requires ``len(f) = l_S(w) + 2k``. Normalizing the path from ``e`` must
    hit a duplicate pair while the prefix is longer than ``l_S(w)``, since a
    strictly increasing path of that many edges would exceed ``l_S(w)``.
    """
    system = f.system
    w = f.product
    target = system.length(w)
    if len(f) < target or (len(f) - target) % 2:
        raise CoxeterError(
            f"factorization of length {len(f)} does not have the form l_S(w) + 2k with l_S(w) = {target}"
        )
    entries = list(f.entries)
    letters: List[Letter] = []
    end = len(entries)
    while end > target:
        head = Factorization(system, entries[:end], check=False)
        result = normalize_path(system.identity, head)
        if not isinstance(result, DuplicatePair):
            raise AssertionError("increasing path longer than l_S(w)")
        for i, s in result.braid.letters:
            _move_entries(entries, i, s)
        letters.extend(result.braid.letters)
        _shift_pair_right(entries, result.position, end, letters)
        end -= 2
    out = f.replace(entries)
    out._product = f._product
    return Reduction(BraidWord(tuple(letters)), out, end)


# -- inversion sets and extension ----------------------------------------


@dataclass(frozen=True)
class PushResult:
    """Output of :func:`push_into_N`: positions are 1-based in the reduced word."""

    braid: BraidWord
    factorization: Factorization
    word: Tuple[int, ...]
    positions: Tuple[int, ...]


def _word_product(system, letters) -> object:
    p = system.identity
    for s in letters:
        p = p * system.gens[s]
    return p


def push_into_N(f: Factorization, word: Optional[Sequence[int]] = None) -> PushResult:
    """Hurwitz-move a reduced factorization so every factor lies in ``N(w)``.

    With ``w = s_1...s_m`` the chosen reduced word, the result satisfies
    ``r_k = s_m...s_{i_k}...s_m`` with ``i_1 > i_2 > ... > i_n``; the
    positions ``i_k`` are returned alongside.
    """
    system = f.system
    w = f.product
    if not f.is_reduced():
        raise CoxeterError("push_into_N needs a reduced reflection factorization")
    if word is None:
        word = system.reduced_word(w)
    word = tuple(word)
    if _word_product(system, word) != w or len(word) != system.length(w):
        raise CoxeterError("word is not a reduced word for the product")
    n = len(f)
    res = normalize_path(system.identity, f)
    if isinstance(res, DuplicatePair):
        raise AssertionError("reduced factorization produced a duplicate pair")
    letters = list(res.braid.letters)
    entries = list(res.factorization.entries)
    # deletion positions, reading the factors from the right
    deleted: List[int] = []
    pos = [0] * n
    for k in range(n - 1, -1, -1):
        r = entries[k]
        found = None
        for p in range(len(word) - 1, -1, -1):
            if p in deleted:
                continue
            b = _word_product(system, [word[q] for q in range(p + 1, len(word)) if q not in deleted])
            if b.inverse() * system.gens[word[p]] * b == r:
                found = p
                break
        if found is None:
            raise AssertionError("strong exchange position not found")
        deleted.append(found)
        pos[k] = found + 1
    # bubble: sigma_k^-1 swaps the positions of factors k and k+1
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if pos[k + 1] > pos[k]:
                _move_entries(entries, k + 1, -1)
                letters.append((k + 1, -1))
                pos[k], pos[k + 1] = pos[k + 1], pos[k]
                changed = True
    out = f.replace(entries)
    out._product = f._product
    return PushResult(BraidWord(tuple(letters)), out, word, tuple(pos))


@dataclass(frozen=True)
class Extension:
    """``braid`` takes the simple word to ``(q_1..q_{m-n}, t_1..t_n)``."""

    braid: BraidWord
    q: Tuple[int, ...]
    word: Tuple[int, ...]
    factorization: Factorization

    def target(self) -> Factorization:
        system = self.factorization.system
        return Factorization(system, [system.gens[s] for s in self.q] + list(self.factorization.entries), check=False)

    def source(self) -> Factorization:
        system = self.factorization.system
        return Factorization(system, [system.gens[s] for s in self.word], check=False)


def extend_to_simples(word: Sequence[int], f: Factorization) -> Extension:
    """Complete a reduced factorization by simple reflections inside the orbit of a reduced word.

    Returns simple generators ``q`` and a braid taking ``(s_1, ..., s_m)`` to
    ``(q_1, ..., q_{m-n}, t_1, ..., t_n)``.
    """
    system = f.system
    word = tuple(word)
    w = _word_product(system, word)
    if w != f.product:
        raise CoxeterError("factorization and word have different products")
    if len(word) != system.length(w):
        raise CoxeterError("word is not reduced")
    push = push_into_N(f, word)
    m, n = len(word), len(f)
    pos = push.positions  # pos[k-1] = i_k, decreasing
    q = tuple(word[p] for p in range(m) if (p + 1) not in pos)
    # block B_k moves t_k leftwards into place: sigma_{m-n_k}, ..., sigma_{i_k-n_k+1}
    forward: List[Letter] = []
    for k in range(1, n + 1):
        nk = n - k + 1
        for i in range(m - nk, pos[k - 1] - nk, -1):
            forward.append((i, 1))
    to_pushed = BraidWord(tuple(forward)).inverse()
    braid = to_pushed + push.braid.inverse().shift(m - n)
    return Extension(braid, q, word, f)
