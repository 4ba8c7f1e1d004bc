"""Coxeter systems in the Tits representation.

Elements are stored as exact matrices over :class:`~coxhurwitz.scalar.Scalar`
acting on the simple-root basis ``e_0, ..., e_{n-1}``; column ``j`` of an
element's matrix is the image of ``e_j``. Generator indices are 0-based in
the Python API and 1-based in text and JSON formats.

Finite systems lazily enumerate a :class:`FiniteTable` (roots, elements as
root permutations, multiplication table). Their elements are interned, so
products and lengths are table lookups.
"""

from __future__ import annotations

import enum
import math
import re
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import CapExceeded, CoxeterError, UnsupportedSystem
from .scalar import INFINITY, ONE, ZERO, Scalar, cos_from_label
from .tables import PermTable

__all__ = [
    "CoxeterMatrix",
    "CoxeterSystem",
    "Element",
    "Root",
    "Direction",
    "FiniteTable",
    "coxeter_matrix",
    "build_system",
    "system_from_descriptor",
    "parse_word",
    "format_word",
    "search_reflection_length",
    "find_reduced_factorization",
    "CATALOG_NAMES",
]

DEFAULT_ENUMERATION_CAP = 200_000

Label = object  # int or math.inf

# -- Coxeter matrices -----------------------------------------------------


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of labels ``m_st`` with 1 on the diagonal, inf allowed."""

    entries: Tuple[Tuple[Label, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(INFINITY if (x == INFINITY) else int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CoxeterError("Coxeter matrix must be square")
            for j, m in enumerate(row):
                if m != rows[j][i]:
                    raise CoxeterError(f"Coxeter matrix is not symmetric at ({i + 1}, {j + 1})")
                if i == j and m != 1:
                    raise CoxeterError(f"diagonal entry ({i + 1}, {i + 1}) must be 1, got {m}")
                if i != j and m != INFINITY and m < 2:
                    raise CoxeterError(f"off-diagonal entry ({i + 1}, {j + 1}) must be >= 2, got {m}")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Label:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[int]]) -> "CoxeterMatrix":
        """Build from nested lists where ``0`` encodes an infinite label."""
        return cls(tuple(tuple(INFINITY if x == 0 else x for x in row) for row in rows))

    def to_json(self) -> List[List[int]]:
        return [[0 if m == INFINITY else m for m in row] for row in self.entries]

    @classmethod
    def from_edges(cls, n: int, edges: Dict[Tuple[int, int], Label]) -> "CoxeterMatrix":
        """Matrix with label 2 everywhere except the given 0-based edges."""
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), lab in edges.items():
            m[i][j] = m[j][i] = lab
        return cls(tuple(map(tuple, m)))


def _path(n: int, labels: Sequence[Label]) -> CoxeterMatrix:
    return CoxeterMatrix.from_edges(n, {(i, i + 1): lab for i, lab in enumerate(labels)})


def coxeter_matrix(name: str) -> CoxeterMatrix:
    """Coxeter matrix of a catalog type such as ``A3``, ``B2``, ``I2(5)``, ``Bt2``."""
    key = name.strip()
    m = re.fullmatch(r"I2\((\d+|inf)\)", key)
    if m:
        lab = INFINITY if m.group(1) == "inf" else int(m.group(1))
        return _path(2, [lab])
    m = re.fullmatch(r"([A-Z])(t?)(\d+)", key)
    if not m:
        raise CoxeterError(f"unknown group type {name!r}")
    fam, tilde, n = m.group(1), bool(m.group(2)), int(m.group(3))
    if n < 1:
        raise CoxeterError(f"unknown group type {name!r}")
    if not tilde:
        if fam == "A":
            return _path(n, [3] * (n - 1))
        if fam in "BC" and n >= 2:
            return _path(n, [3] * (n - 2) + [4])
        if fam == "D" and n >= 4:
            edges = {(i, i + 1): 3 for i in range(n - 2)}
            edges[(n - 3, n - 1)] = 3
            return CoxeterMatrix.from_edges(n, edges)
        if fam == "G" and n == 2:
            return _path(2, [6])
        if fam == "F" and n == 4:
            return _path(4, [3, 4, 3])
        if fam == "H" and n in (2, 3, 4):
            return _path(n, [5] + [3] * (n - 2))
    else:
        # affine types: n is the rank of the finite part, the matrix has n + 1 nodes
        if fam == "A":
            if n == 1:
                return _path(2, [INFINITY])
            edges = {(i, (i + 1) % (n + 1)): 3 for i in range(n + 1)}
            return CoxeterMatrix.from_edges(n + 1, edges)
        if fam in "BC" and n == 2:
            return _path(3, [4, 4])
        if fam == "C" and n >= 3:
            return _path(n + 1, [4] + [3] * (n - 2) + [4])
        if fam == "B" and n >= 3:
            # B~n: fork at one end, double bond at the other
            edges = {(i, i + 1): 3 for i in range(1, n - 1)}
            edges[(0, 2)] = 3
            edges[(1, 2)] = 3
            edges[(n - 1, n)] = 4
            return CoxeterMatrix.from_edges(n + 1, edges)
        if fam == "D" and n >= 4:
            edges = {(i, i + 1): 3 for i in range(1, n - 2)}
            edges[(0, 2)] = 3
            edges[(1, 2)] = 3
            edges[(n - 3, n - 1)] = 3
            edges[(n - 3, n)] = 3
            return CoxeterMatrix.from_edges(n + 1, edges)
        if fam == "G" and n == 2:
            return _path(3, [3, 6])
    raise CoxeterError(f"unknown group type {name!r}")


CATALOG_NAMES = (
    "A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "H3", "I2(m)",
    "At1", "At2", "Bt2", "Ct2", "Gt2",
)

# -- roots and elements ---------------------------------------------------


@dataclass(frozen=True)
class Root:
    """A root of the Tits representation, in the simple-root basis."""

    coords: Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(c if isinstance(c, Scalar) else Scalar(c) for c in self.coords))

    def is_positive(self) -> bool:
        for c in self.coords:
            if c:
                return c.sign() > 0
        raise CoxeterError("zero vector is not a root")

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def positive(self) -> "Root":
        return self if self.is_positive() else -self

    @property
    def key(self) -> tuple:
        return tuple(c.key for c in self.coords)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class Direction(enum.Enum):
    UP = "Up"
    DOWN = "Down"


Matrix = Tuple[Tuple[Scalar, ...], ...]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    out = []
    for i in range(n):
        row = a[i]
        out_row = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def _mat_vec(a: Matrix, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def _identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


class Element:
    """An element of a Coxeter group, represented by its Tits matrix.

    Elements of finite systems are interned and carry their table index, so
    ``==`` and ``*`` reduce to integer operations.
    """

    __slots__ = ("system", "_matrix", "_idx", "_key", "_hash")

    def __init__(self, system: "CoxeterSystem", matrix: Optional[Matrix], idx: Optional[int] = None):
        self.system = system
        self._matrix = matrix
        self._idx = idx
        self._key = None
        self._hash = None

    @property
    def matrix(self) -> Matrix:
        if self._matrix is None:
            self._matrix = self.system._table_matrix(self._idx)
        return self._matrix

    @property
    def index(self) -> Optional[int]:
        """Table index for finite systems, ``None`` otherwise."""
        return self._idx

    @property
    def key(self) -> tuple:
        """Canonical hashable, totally ordered encoding."""
        if self._key is None:
            if self._idx is not None:
                self._key = (self._idx,)
            else:
                self._key = tuple(c.key for row in self._matrix for c in row)
        return self._key

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system:
            raise CoxeterError("cannot multiply elements of different systems")
        if self._idx is not None and other._idx is not None:
            return self.system._elements[self.system._table.perm.mul(self._idx, other._idx)]
        return self.system._wrap(_mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "Element":
        return self.system.inverse(self)

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.system.identity, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self._idx is not None and other._idx is not None:
            return self._idx == other._idx and self.system is other.system
        return self.system is other.system and self.key == other.key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __lt__(self, other: "Element") -> bool:
        return self.key < other.key

    def is_identity(self) -> bool:
        return self == self.system.identity

    def word(self) -> Tuple[int, ...]:
        return self.system.reduced_word(self)

    def __repr__(self) -> str:
        return f"Element({format_word(self.word()) or 'e'})"


# -- finite table ---------------------------------------------------------


class FiniteTable:
    """Full enumeration of a finite Coxeter group through its root permutations."""

    def __init__(self, system: "CoxeterSystem", cap: int):
        n = system.rank
        roots: List[Tuple[Scalar, ...]] = []
        index: Dict[tuple, int] = {}

        def add(v):
            k = tuple(c.key for c in v)
            if k not in index:
                if len(roots) >= cap:
                    raise CapExceeded(f"root enumeration exceeded cap {cap}", partial=len(roots))
                index[k] = len(roots)
                roots.append(v)
            return index[k]

        for s in range(n):
            add(tuple(ONE if i == s else ZERO for i in range(n)))
        i = 0
        while i < len(roots):
            v = roots[i]
            for s in range(n):
                add(system._reflect_simple(s, v))
            i += 1
        self.roots = [Root(v) for v in roots]
        self.root_index = index
        gen_perms = []
        for s in range(n):
            gen_perms.append([index[tuple(c.key for c in system._reflect_simple(s, v))] for v in roots])
        self.perm = PermTable(gen_perms, cap=cap)
        self.order = self.perm.order
        # positive roots and their reflections
        self.positive = [i for i, r in enumerate(self.roots) if r.is_positive()]
        self.simple_root_ids = list(range(n))
        self.neg = [index[tuple((-c).key for c in v)] for v in roots]

    def matrix(self, system: "CoxeterSystem", idx: int) -> Matrix:
        p = self.perm.perms[idx]
        cols = [self.roots[int(p[j])].coords for j in range(system.rank)]
        return tuple(zip(*cols))


# -- systems --------------------------------------------------------------


class CoxeterSystem:
    """A Coxeter system ``(W, S)`` with its Tits representation."""

    def __init__(self, matrix: CoxeterMatrix, name: Optional[str] = None,
                 enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix(tuple(map(tuple, matrix)))
        self.matrix = matrix
        self.name = name
        self.rank = n = matrix.rank
        self.enumeration_cap = enumeration_cap
        self.gram: Matrix = tuple(
            tuple(ONE if i == j else cos_from_label(matrix[i, j]) for j in range(n)) for i in range(n)
        )
        self.is_finite = self._positive_definite()
        self.is_irreducible = self._connected()
        self._lock = threading.RLock()
        self._table: Optional[FiniteTable] = None
        self._elements: List[Element] = []
        self._refl_cache: Dict[Element, Optional[Root]] = {}
        self._gens = tuple(self._wrap(self._simple_matrix(s)) for s in range(n)) if not self.is_finite else None
        self._identity = self._wrap(_identity(n)) if not self.is_finite else None
        if self.is_finite:
            self._build_table()
            self._identity = self._elements[0]
            self._gens = tuple(self._elements[self._table.perm.right[0][s]] for s in range(n))

    # -- construction helpers ---------------------------------------------

    def _positive_definite(self) -> bool:
        # LDL^T pivots over the exact field; all leading minors positive iff all pivots positive
        n = self.rank
        a = [list(row) for row in self.gram]
        for k in range(n):
            piv = a[k][k]
            if piv.sign() <= 0:
                return False
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] / piv
                    for j in range(k, n):
                        a[i][j] = a[i][j] - f * a[k][j]
        return True

    def _connected(self) -> bool:
        n = self.rank
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in seen and self.matrix[i, j] != 2 and i != j:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    def _simple_matrix(self, s: int) -> Matrix:
        n = self.rank
        rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for t in range(n):
            rows[s][t] = rows[s][t] - 2 * self.gram[s][t]
        return tuple(map(tuple, rows))

    def _reflect_simple(self, s: int, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        b = self.bilinear_simple(s, v)
        if not b:
            return tuple(v)
        out = list(v)
        out[s] = out[s] - 2 * b
        return tuple(out)

    def _build_table(self):
        self._table = FiniteTable(self, self.enumeration_cap)
        self._elements = [Element(self, None, i) for i in range(self._table.order)]
        tab = self._table
        # reflections: s_beta for positive beta, in root-enumeration order
        self._reflections: List[Element] = []
        self._refl_root: Dict[int, Root] = {}
        self._refl_pos: Dict[int, int] = {}
        for rid in tab.positive:
            beta = tab.roots[rid]
            m = self._reflection_matrix(beta.coords)
            idx = self._index_of_matrix(m)
            self._refl_pos[idx] = len(self._reflections)
            self._reflections.append(self._elements[idx])
            self._refl_root[idx] = beta
        self._lenT: Optional[List[int]] = None
        self._conj: Optional[List[List[int]]] = None
        self._refl_class: Optional[List[int]] = None

    def _index_of_matrix(self, m: Matrix) -> int:
        tab = self._table
        perm = []
        for v in tab.roots:
            img = _mat_vec(m, v.coords)
            perm.append(tab.root_index[tuple(c.key for c in img)])
        return tab.perm.element_of_perm(perm)

    def _table_matrix(self, idx: int) -> Matrix:
        return self._table.matrix(self, idx)

    def _wrap(self, m: Matrix) -> Element:
        if self._table is not None:
            return self._elements[self._index_of_matrix(m)]
        return Element(self, m)

    # -- basic API ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name or self.matrix.to_json()})"

    @property
    def identity(self) -> Element:
        return self._identity

    @property
    def gens(self) -> Tuple[Element, ...]:
        return self._gens

    def simple_reflection(self, s: int) -> Element:
        if not 0 <= s < self.rank:
            raise CoxeterError(f"generator index {s + 1} out of range 1..{self.rank}")
        return self._gens[s]

    def element(self, word: Iterable[int]) -> Element:
        w = self.identity
        for s in word:
            w = w * self.simple_reflection(s)
        return w

    def from_matrix(self, m: Sequence[Sequence]) -> Element:
        mat = tuple(tuple(x if isinstance(x, Scalar) else Scalar(x) for x in row) for row in m)
        if len(mat) != self.rank or any(len(r) != self.rank for r in mat):
            raise CoxeterError("matrix has wrong shape")
        return self._wrap(mat)

    def simple_root(self, s: int) -> Root:
        return Root(tuple(ONE if i == s else ZERO for i in range(self.rank)))

    def bilinear(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    g = self.gram[i][j]
                    if vj and g:
                        acc = acc + ui * g * vj
        return acc

    def bilinear_simple(self, s: int, v: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for g, x in zip(self.gram[s], v):
            if g and x:
                acc = acc + g * x
        return acc

    def apply(self, w: Element, root: Root) -> Root:
        if w._idx is not None:
            rid = self._table.root_index.get(root.key)
            if rid is not None:
                return self._table.roots[int(self._table.perm.perms[w._idx][rid])]
        return Root(_mat_vec(w.matrix, root.coords))

    def inverse(self, w: Element) -> Element:
        if w._idx is not None:
            return self._elements[self._table.perm.inv[w._idx]]
        word = self.reduced_word(w)
        return self.element(reversed(word))

    def order(self) -> int:
        if not self.is_finite:
            raise UnsupportedSystem("group is infinite")
        return self._table.order

    def elements(self) -> List[Element]:
        """All elements in BFS order (finite systems only)."""
        if not self.is_finite:
            raise UnsupportedSystem("cannot enumerate an infinite group")
        return list(self._elements)

    # -- length and words --------------------------------------------------

    def is_right_descent(self, w: Element, s: int) -> bool:
        if w._idx is not None:
            tab = self._table.perm
            return tab.lengths[tab.right[w._idx][s]] < tab.lengths[w._idx]
        col = [row[s] for row in w.matrix]
        return not Root(tuple(col)).is_positive()

    def right_descents(self, w: Element) -> List[int]:
        return [s for s in range(self.rank) if self.is_right_descent(w, s)]

    def left_descents(self, w: Element) -> List[int]:
        return self.right_descents(self.inverse(w))

    def length(self, w: Element) -> int:
        """Simple-generator length, by the descent algorithm."""
        if w._idx is not None:
            return self._table.perm.lengths[w._idx]
        return len(self.reduced_word(w))

    def reduced_word(self, w: Element) -> Tuple[int, ...]:
        """Reduced word from repeatedly stripping the smallest right descent."""
        out = []
        while True:
            s = next((s for s in range(self.rank) if self.is_right_descent(w, s)), None)
            if s is None:
                break
            out.append(s)
            w = w * self._gens[s]
        return tuple(reversed(out))

    # -- reflections -------------------------------------------------------

    def _reflection_matrix(self, beta: Sequence[Scalar]) -> Matrix:
        n = self.rank
        gb = [self.bilinear_simple(j, beta) for j in range(n)]
        return tuple(
            tuple((ONE if i == j else ZERO) - 2 * beta[i] * gb[j] for j in range(n)) for i in range(n)
        )

    def reflection(self, root: Root) -> Element:
        """The reflection ``s_beta`` for a root ``beta``."""
        return self._wrap(self._reflection_matrix(root.coords))

    def is_reflection(self, w: Element) -> Optional[Root]:
        """Positive root of ``w`` if ``w`` is a reflection, else ``None``."""
        if w._idx is not None:
            return self._refl_root.get(w._idx)
        if w in self._refl_cache:
            return self._refl_cache[w]
        result = self._descend_reflection(w)
        with self._lock:
            self._refl_cache[w] = result
        return result

    def _descend_reflection(self, w: Element) -> Optional[Root]:
        if w.is_identity() or not (w * w).is_identity():
            return None
        # conjugate by left descents; each step drops the length by exactly 2 for reflections
        path = []
        t = w
        lt = self.length(t)
        while lt > 1:
            s = self.left_descents(t)[0]
            t2 = self._gens[s] * t * self._gens[s]
            l2 = self.length(t2)
            if l2 != lt - 2:
                return None
            path.append(s)
            t, lt = t2, l2
        if lt != 1:
            return None
        s_final = self.reduced_word(t)[0]
        v = self.simple_root(s_final).coords
        for s in reversed(path):
            v = self._reflect_simple(s, v)
        root = Root(v)
        return root if root.is_positive() else -root

    def root_of(self, t: Element) -> Root:
        r = self.is_reflection(t)
        if r is None:
            raise CoxeterError(f"{t!r} is not a reflection")
        return r

    def reflections(self) -> List[Element]:
        """All reflections, ordered by positive-root enumeration (finite only)."""
        if not self.is_finite:
            raise UnsupportedSystem("infinite reflection set")
        return list(self._reflections)

    def reflection_position(self, t: Element) -> int:
        """Position of a reflection in :meth:`reflections`."""
        return self._refl_pos[t._idx]

    def roots(self) -> List[Root]:
        if not self.is_finite:
            raise UnsupportedSystem("infinite root system")
        return list(self._table.roots)

    def positive_roots(self) -> List[Root]:
        if not self.is_finite:
            raise UnsupportedSystem("infinite root system")
        return [self._table.roots[i] for i in self._table.positive]

    def conjugation_table(self) -> List[List[int]]:
        """``conj[i][j]`` = position of ``t_i t_j t_i`` among :meth:`reflections`."""
        if not self.is_finite:
            raise UnsupportedSystem("infinite reflection set")
        with self._lock:
            if self._conj is None:
                refl = self._reflections
                self._conj = [[self._refl_pos[(a * b * a)._idx] for b in refl] for a in refl]
        return self._conj

    def inversion_set(self, w: Element) -> FrozenSet[Element]:
        """``N(w) = {t in T : l(wt) < l(w)}``, read off a reduced word."""
        return frozenset(self.inversion_list(w))

    def inversion_list(self, w: Element, word: Optional[Sequence[int]] = None) -> List[Element]:
        """``[s_m, s_m s_{m-1} s_m, ..., s_m...s_1...s_m]`` for a reduced word ``s_1...s_m``."""
        if word is None:
            word = self.reduced_word(w)
        out = []
        suffix = self.identity  # s_m ... s_{k+1}
        for s in reversed(word):
            g = self._gens[s]
            out.append(suffix * g * self.inverse(suffix))
            suffix = suffix * g
        return out

    def bruhat_direction(self, x: Element, t: Element) -> Direction:
        """``Up`` if ``l(xt) > l(x)``; decided by the sign of ``x(beta_t)``."""
        if x._idx is not None:
            return Direction.UP if self.length(x * t) > self.length(x) else Direction.DOWN
        beta = self.root_of(t)
        return Direction.UP if self.apply(x, beta).is_positive() else Direction.DOWN

    # -- reflection length and fixed spaces --------------------------------

    def fixed_space(self, ws: Iterable[Element]) -> List[list]:
        """Basis of the common fixed space of the given elements."""
        n = self.rank
        rows = []
        for w in ws:
            m = w.matrix
            rows.extend([[m[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)])
        return linalg.nullspace(rows, n, ZERO, ONE)

    def reflection_length(self, w: Element) -> int:
        """Reflection length.

        Finite systems use ``n - dim Fix(w)``. Otherwise we search products of
        elements of ``N(w)`` by meet-in-the-middle: some reduced reflection
        factorization of ``w`` can be Hurwitz-moved so that every factor lies
        in ``N(w)``, so the search over ``N(w)`` alone is complete.
        """
        if w._idx is not None:
            return self.reflection_length_table()[w._idx]
        return search_reflection_length(self, w)

    def reflection_length_table(self) -> List[int]:
        with self._lock:
            if self._lenT is None:
                n = self.rank
                out = []
                for e in self._elements:
                    m = e.matrix
                    rows = [[m[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
                    out.append(linalg.rank(rows, ZERO, ONE))
                self._lenT = out
        return self._lenT

    def conj_class_key(self, t: Element):
        """Canonical key of the conjugacy class of a reflection."""
        self.root_of(t)
        if t._idx is not None:
            return ("T", self._reflection_classes()[self._refl_pos[t._idx]])
        return ("S", self._odd_component(t))

    def _reflection_classes(self) -> List[int]:
        # smallest position in each conjugacy class, by closing under the conjugation table
        conj = self.conjugation_table()
        with self._lock:
            if self._refl_class is None:
                rep = [-1] * len(conj)
                for p in range(len(conj)):
                    if rep[p] >= 0:
                        continue
                    rep[p] = p
                    stack = [p]
                    while stack:
                        q = stack.pop()
                        for row in conj:
                            r = row[q]
                            if rep[r] < 0:
                                rep[r] = p
                                stack.append(r)
                self._refl_class = rep
        return self._refl_class

    def _odd_component(self, t: Element) -> int:
        # reflections are conjugate iff the simple reflections they descend to
        # lie in the same component of the odd-label graph
        u = t
        while self.length(u) > 1:
            s = self.left_descents(u)[0]
            u = self._gens[s] * u * self._gens[s]
        s0 = self.reduced_word(u)[0]
        comp = {s0}
        stack = [s0]
        while stack:
            i = stack.pop()
            for j in range(self.rank):
                m = self.matrix[i, j]
                if j not in comp and i != j and m != INFINITY and m % 2 == 1:
                    comp.add(j)
                    stack.append(j)
        return min(comp)


def search_reflection_length(system, w, known_lower: int = 0) -> int:
    """Smallest ``k`` with ``w`` a product of ``k`` elements of ``N(w)``.

    Meet in the middle: products of ``ceil(k/2)`` factors on the left are
    matched against ``w`` times inverse products on the right.
    """
    if w == system.identity:
        return 0
    nset = list(system.inversion_set(w))
    k = max(1, known_lower)
    while True:
        half = (k + 1) // 2
        left = _products(system, nset, half)
        rest = k - half
        right = _products(system, nset, rest)
        # w = a * b  <=>  a = w * b^{-1}
        for b in right:
            if w * b.inverse() in left:
                return k
        k += 1
        if k > 4 * len(nset) + 4:
            raise CoxeterError("reflection length search did not terminate")


def find_reduced_factorization(system, w, length: Optional[int] = None) -> Tuple:
    """One reduced reflection factorization of ``w`` with all factors in ``N(w)``.

    Same meet-in-the-middle search as :func:`search_reflection_length`, but
    each product remembers the tuple that produced it.
    """
    if length is None:
        length = system.reflection_length(w)
    if length == 0:
        return ()
    nset = sorted(system.inversion_set(w), key=lambda x: x.key)
    half = (length + 1) // 2
    left = _products_with_words(nset, system.identity, half)
    right = _products_with_words(nset, system.identity, length - half)
    for b, bw in right.items():
        a = w * b.inverse()
        if a in left:
            return left[a] + bw
    raise CoxeterError("no factorization of the given length inside N(w)")


def _products_with_words(factors, identity, k):
    level = {identity: ()}
    for _ in range(k):
        nxt = {}
        for x, word in level.items():
            for t in factors:
                y = x * t
                if y not in nxt:
                    nxt[y] = word + (t,)
        level = nxt
    return level


def _products(system, factors, k):
    level = {system.identity}
    for _ in range(k):
        level = {x * t for x in level for t in factors}
    return level


# -- descriptors and words ------------------------------------------------

_SYSTEM_CACHE: Dict[tuple, CoxeterSystem] = {}
_CACHE_LOCK = threading.Lock()


def build_system(matrix, name: Optional[str] = None) -> CoxeterSystem:
    """Build (or fetch the cached) system for a Coxeter matrix or type name."""
    if isinstance(matrix, str):
        name = matrix
        matrix = coxeter_matrix(matrix)
    elif not isinstance(matrix, CoxeterMatrix):
        matrix = CoxeterMatrix(tuple(map(tuple, matrix)))
    key = (matrix.entries, name)
    with _CACHE_LOCK:
        sys_ = _SYSTEM_CACHE.get(key)
        if sys_ is None:
            sys_ = CoxeterSystem(matrix, name)
            _SYSTEM_CACHE[key] = sys_
    return sys_


def system_from_descriptor(desc: dict) -> CoxeterSystem:
    """``{"type": "A3"}`` or ``{"coxeter_matrix": [[...]]}`` (0 encodes inf)."""
    if "type" in desc:
        return build_system(desc["type"])
    if "coxeter_matrix" in desc:
        return build_system(CoxeterMatrix.from_json(desc["coxeter_matrix"]))
    raise CoxeterError("group descriptor needs 'type' or 'coxeter_matrix'")


def parse_word(text, rank: Optional[int] = None) -> Tuple[int, ...]:
    """Parse a 1-based word such as ``"1 2 1"``, ``"s1 s2"``, ``[1, 2]`` or ``"e"``."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        t = text.strip()
        if t in ("", "e"):
            return ()
        items = [x for x in re.split(r"[\s,*.]+", t) if x]
        items = [x[1:] if x.startswith("s") else x for x in items]
    out = []
    for x in items:
        try:
            i = int(x)
        except (TypeError, ValueError):
            raise CoxeterError(f"bad generator {x!r} in word") from None
        if i < 1 or (rank is not None and i > rank):
            raise CoxeterError(f"generator index {i} out of range" + (f" 1..{rank}" if rank else ""))
        out.append(i - 1)
    return tuple(out)


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(s + 1) for s in word)
