"""Affine Weyl groups as semidirect products of a finite Weyl group and the coroot lattice.

An element is a pair ``(u, lam)``: ``u`` indexes an element of the finite
Weyl group (a permutation of the roots) and ``lam`` is an integer vector in
the basis of simple coroots. It acts by ``v -> u(v) + lam``, so
``(u, lam)(u', lam') = (uu', lam + u(lam'))``.

Points are written in simple-coroot coordinates, roots in simple-root
coordinates; the pairing between them is given by the Cartan matrix
``A[i][j] = <alpha_i^vee, alpha_j>``.

The simple generators are ``s_{alpha_i, 0}`` for ``i = 1..n`` followed by
``s_{alpha~, 1}`` where ``alpha~`` is the highest root.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .coxeter import CoxeterMatrix, build_system, search_reflection_length
from .dyer import ParabolicClosure
from .errors import CoxeterError, UnsupportedSystem
from .scalar import INFINITY
from .tables import PermTable

__all__ = [
    "CartanDatum",
    "AffineReflection",
    "AffineElement",
    "AffineWeylGroup",
    "cartan_datum",
    "build_affine",
    "AFFINE_TYPES",
]

AFFINE_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2")

Vector = Tuple[Fraction, ...]


def _unit(d: int, i: int) -> List[Fraction]:
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def _ambient_simple_roots(kind: str, n: int) -> List[List[Fraction]]:
    if kind == "A" and n >= 1:
        d = n + 1
        return [[a - b for a, b in zip(_unit(d, i), _unit(d, i + 1))] for i in range(n)]
    if kind in "BCD" and n >= 2:
        d = n
        roots = [[a - b for a, b in zip(_unit(d, i), _unit(d, i + 1))] for i in range(n - 1)]
        if kind == "B":
            roots.append(_unit(d, n - 1))
        elif kind == "C":
            roots.append([2 * x for x in _unit(d, n - 1)])
        else:
            if n < 4:
                raise CoxeterError(f"D{n} is not a supported type")
            roots.append([a + b for a, b in zip(_unit(d, n - 2), _unit(d, n - 1))])
        return roots
    if kind == "G" and n == 2:
        return [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    raise CoxeterError(f"unknown crystallographic type {kind}{n}")


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class CartanDatum:
    """Finite crystallographic root system in standard coordinates."""

    def __init__(self, name: str):
        m = re.fullmatch(r"([ABCDG])(\d+)", name)
        if not m:
            raise CoxeterError(f"unknown crystallographic type {name!r}")
        self.name = name
        kind, n = m.group(1), int(m.group(2))
        self.rank = n
        self.simple_ambient = [tuple(v) for v in _ambient_simple_roots(kind, n)]
        self.dim = len(self.simple_ambient[0])
        gs = [[_dot(a, b) for b in self.simple_ambient] for a in self.simple_ambient]
        self.simple_gram = gs
        # A[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i|alpha_j) / (alpha_i|alpha_i)
        self.cartan = [[int(2 * gs[i][j] / gs[i][i]) for j in range(n)] for i in range(n)]
        # roots in simple-root coordinates, closed under simple reflections
        roots: List[Tuple[int, ...]] = []
        index: Dict[Tuple[int, ...], int] = {}
        for i in range(n):
            r = tuple(1 if j == i else 0 for j in range(n))
            index[r] = len(roots)
            roots.append(r)
        k = 0
        while k < len(roots):
            r = roots[k]
            for i in range(n):
                img = self.reflect_simple(i, r)
                if img not in index:
                    index[img] = len(roots)
                    roots.append(img)
            k += 1
        self.roots = roots
        self.root_index = index
        self.positive = [i for i, r in enumerate(roots) if min(r) >= 0]
        self.neg = [index[tuple(-x for x in r)] for r in roots]
        hi = max(self.positive, key=lambda i: (sum(roots[i]), roots[i]))
        self.highest = hi
        self.coroot_coords = [self._coroot_coords(r) for r in roots]

    def reflect_simple(self, i: int, r: Sequence[int]) -> Tuple[int, ...]:
        c = sum(self.cartan[i][j] * r[j] for j in range(self.rank))
        out = list(r)
        out[i] -= c
        return tuple(out)

    def norm2(self, r: Sequence[int]) -> Fraction:
        gs = self.simple_gram
        n = self.rank
        return sum((r[i] * gs[i][j] * r[j] for i in range(n) for j in range(n)), Fraction(0))

    def _coroot_coords(self, r: Sequence[int]) -> Tuple[int, ...]:
        nr = self.norm2(r)
        out = []
        for i in range(self.rank):
            c = Fraction(r[i]) * self.simple_gram[i][i] / nr
            if c.denominator != 1:
                raise AssertionError("coroot is not in the coroot lattice")
            out.append(int(c))
        return tuple(out)

    def pairing(self, c: Sequence, r: Sequence[int]):
        """``(v | alpha)`` for ``v`` in coroot coordinates and ``alpha`` in root coordinates."""
        n = self.rank
        total = 0
        for i in range(n):
            ci = c[i]
            if ci:
                row = self.cartan[i]
                total += ci * sum(row[j] * r[j] for j in range(n))
        return total

    def ambient(self, r: Sequence[int]) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for coef, a in zip(r, self.simple_ambient):
            if coef:
                out = [x + coef * y for x, y in zip(out, a)]
        return tuple(out)

    def root_from_ambient(self, vec: Sequence) -> int:
        target = tuple(Fraction(x) for x in vec)
        for i, r in enumerate(self.roots):
            if self.ambient(r) == target:
                return i
        raise CoxeterError(f"{[str(x) for x in target]} is not a root of {self.name}")

    @property
    def highest_root(self) -> Tuple[int, ...]:
        return self.roots[self.highest]


_CARTAN_CACHE: Dict[str, CartanDatum] = {}


def cartan_datum(name: str) -> CartanDatum:
    if name not in _CARTAN_CACHE:
        _CARTAN_CACHE[name] = CartanDatum(name)
    return _CARTAN_CACHE[name]


@dataclass(frozen=True)
class AffineReflection:
    """``s_{alpha, k}``: the reflection in ``{v : (v|alpha) = k}``; ``root`` is a root index."""

    root: int
    k: int


class AffineElement:
    """Element ``(u, lam)`` of an affine Weyl group."""

    __slots__ = ("system", "u", "lam", "_hash")

    def __init__(self, system: "AffineWeylGroup", u: int, lam: Sequence[int]):
        self.system = system
        self.u = u
        self.lam = tuple(lam)
        self._hash = None

    @property
    def key(self) -> tuple:
        return (self.u,) + self.lam

    @property
    def index(self):
        return None

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        if not isinstance(other, AffineElement):
            return NotImplemented
        sys_ = self.system
        U = sys_._umat[self.u]
        lam = tuple(a + sum(U[i][j] * other.lam[j] for j in range(sys_.n)) for i, a in enumerate(self.lam))
        return AffineElement(sys_, sys_.finite.mul(self.u, other.u), lam)

    def inverse(self) -> "AffineElement":
        sys_ = self.system
        ui = sys_.finite.inv[self.u]
        U = sys_._umat[ui]
        lam = tuple(-sum(U[i][j] * self.lam[j] for j in range(sys_.n)) for i in range(sys_.n))
        return AffineElement(sys_, ui, lam)

    def __pow__(self, k: int) -> "AffineElement":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.system.identity, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineElement):
            return NotImplemented
        return self.u == other.u and self.lam == other.lam and self.system is other.system

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.u, self.lam))
        return self._hash

    def __lt__(self, other) -> bool:
        return self.key < other.key

    def is_identity(self) -> bool:
        return self.u == 0 and not any(self.lam)

    def is_translation(self) -> bool:
        return self.u == 0

    def word(self) -> Tuple[int, ...]:
        return self.system.reduced_word(self)

    def __repr__(self) -> str:
        w = self.word()
        return "Affine(" + (" ".join(str(s + 1) for s in w) or "e") + ")"


class AffineWeylGroup:
    """The affine Weyl group of an irreducible crystallographic root system."""

    is_affine = True
    is_finite = False

    def __init__(self, finite_type: str):
        self.datum = D = cartan_datum(finite_type)
        self.finite_type = finite_type
        self.name = finite_type[0] + "t" + finite_type[1:]
        self.n = n = D.rank
        self.rank = n + 1
        self._lock = threading.RLock()
        # finite Weyl group as permutations of the roots
        gen_perms = [[D.root_index[D.reflect_simple(i, r)] for r in D.roots] for i in range(n)]
        self.finite = PermTable(gen_perms)
        self._umat = []
        for k in range(self.finite.order):
            p = self.finite.perms[k]
            cols = [D.coroot_coords[int(p[j])] for j in range(n)]
            self._umat.append(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
        # finite reflection for each root, and the root of each finite reflection
        self._refl_u: Dict[int, int] = {}
        self._u_root: Dict[int, int] = {}
        for ri in D.positive:
            perm = [D.root_index[self._reflect_root(ri, r)] for r in D.roots]
            u = self.finite.element_of_perm(perm)
            self._refl_u[ri] = u
            self._refl_u[D.neg[ri]] = u
            self._u_root[u] = ri
        self.identity = AffineElement(self, 0, (0,) * n)
        self.gens = tuple(
            [self.reflection(AffineReflection(i, 0)) for i in range(n)]
            + [self.reflection(AffineReflection(D.highest, 1))]
        )
        self.coxeter_matrix = self._coxeter_matrix()
        # generic point of the fundamental alcove: (p | alpha) = ht(alpha) / h
        h = sum(D.highest_root) + 1
        sol = linalg.solve(
            [[Fraction(D.cartan[i][j]) for i in range(n)] for j in range(n)],
            [Fraction(1, h)] * n,
            Fraction(0),
            Fraction(1),
        )
        self._p = tuple(sol)
        self._length_cache: Dict[AffineElement, int] = {}
        self._root_orbit_rep = self._root_orbits()
        self._tits = None

    # -- construction helpers ---------------------------------------------

    def _reflect_root(self, alpha: int, r: Sequence[int]) -> Tuple[int, ...]:
        D = self.datum
        a = D.roots[alpha]
        c = D.pairing(D.coroot_coords[alpha], r)
        return tuple(x - c * y for x, y in zip(r, a))

    def _coxeter_matrix(self) -> CoxeterMatrix:
        D = self.datum
        vecs = [D.roots[i] for i in range(self.n)] + [tuple(-x for x in D.highest_root)]
        N = len(vecs)

        def ip(a, b):
            gs = D.simple_gram
            return sum((a[i] * gs[i][j] * b[j] for i in range(self.n) for j in range(self.n)), Fraction(0))

        rows = []
        for i in range(N):
            row = []
            for j in range(N):
                if i == j:
                    row.append(1)
                    continue
                prod = 4 * ip(vecs[i], vecs[j]) ** 2 / (ip(vecs[i], vecs[i]) * ip(vecs[j], vecs[j]))
                row.append({0: 2, 1: 3, 2: 4, 3: 6, 4: INFINITY}[int(prod)])
            rows.append(tuple(row))
        return CoxeterMatrix(tuple(rows))

    def _root_orbits(self) -> List[int]:
        D = self.datum
        rep = list(range(len(D.roots)))
        changed = True
        gens = self.finite.perms[[self.finite.right[0][i] for i in range(self.n)]]
        while changed:
            changed = False
            for g in gens:
                for r in range(len(D.roots)):
                    s = int(g[r])
                    m = min(rep[r], rep[s])
                    if rep[r] != m or rep[s] != m:
                        rep[r] = rep[s] = m
                        changed = True
        return rep

    def __repr__(self) -> str:
        return f"AffineWeylGroup({self.name})"

    # -- elements ----------------------------------------------------------

    def element(self, word: Iterable[int]) -> AffineElement:
        w = self.identity
        for s in word:
            if not 0 <= s < self.rank:
                raise CoxeterError(f"generator index {s + 1} out of range 1..{self.rank}")
            w = w * self.gens[s]
        return w

    def simple_reflection(self, s: int) -> AffineElement:
        return self.gens[s]

    def make(self, u: int, lam: Sequence[int]) -> AffineElement:
        return AffineElement(self, u, lam)

    def translation(self, lam: Sequence[int]) -> AffineElement:
        return AffineElement(self, 0, lam)

    def reflection(self, r: AffineReflection) -> AffineElement:
        """``s_{alpha,k} = (s_alpha, k alpha^vee)``."""
        D = self.datum
        cor = D.coroot_coords[r.root]
        return AffineElement(self, self._refl_u[r.root], tuple(r.k * c for c in cor))

    def reflection_from_ambient(self, root: Sequence, k: int) -> AffineElement:
        return self.reflection(AffineReflection(self.datum.root_from_ambient(root), int(k)))

    def project(self, x: AffineElement) -> int:
        """Finite part ``p(x)`` as a finite Weyl group index."""
        return x.u

    def finite_word(self, u: int) -> Tuple[int, ...]:
        return self.finite.words[u]

    def inverse(self, x: AffineElement) -> AffineElement:
        return x.inverse()

    # -- geometry ----------------------------------------------------------

    def act(self, x: AffineElement, c: Sequence) -> Tuple:
        """Image of a point given in coroot coordinates."""
        U = self._umat[x.u]
        n = self.n
        return tuple(sum(U[i][j] * c[j] for j in range(n)) + x.lam[i] for i in range(n))

    def length(self, x: AffineElement) -> int:
        """Number of root hyperplanes separating the fundamental alcove and its image."""
        cached = self._length_cache.get(x)
        if cached is not None:
            return cached
        D = self.datum
        q = self.act(x, self._p)
        total = 0
        for ri in D.positive:
            y = D.pairing(q, D.roots[ri])
            total += abs(math.floor(y))
        with self._lock:
            if len(self._length_cache) > 500_000:
                self._length_cache.clear()
            self._length_cache[x] = total
        return total

    def is_right_descent(self, x: AffineElement, s: int) -> bool:
        return self.length(x * self.gens[s]) < self.length(x)

    def right_descents(self, x: AffineElement) -> List[int]:
        return [s for s in range(self.rank) if self.is_right_descent(x, s)]

    def left_descents(self, x: AffineElement) -> List[int]:
        return self.right_descents(x.inverse())

    def reduced_word(self, x: AffineElement) -> Tuple[int, ...]:
        out = []
        lx = self.length(x)
        while lx:
            for s in range(self.rank):
                y = x * self.gens[s]
                ly = self.length(y)
                if ly < lx:
                    out.append(s)
                    x, lx = y, ly
                    break
            else:
                raise AssertionError("no descent found for a nontrivial element")
        return tuple(reversed(out))

    # -- reflections -------------------------------------------------------

    def is_reflection(self, x: AffineElement) -> Optional[AffineReflection]:
        """``s_{alpha,k}`` with ``alpha`` positive, or ``None``."""
        ri = self._u_root.get(x.u)
        if ri is None:
            return None
        cor = self.datum.coroot_coords[ri]
        j = next(i for i, c in enumerate(cor) if c)
        k, rem = divmod(x.lam[j], cor[j])
        if rem or tuple(k * c for c in cor) != x.lam:
            return None
        return AffineReflection(ri, k)

    def root_of(self, t: AffineElement) -> AffineReflection:
        r = self.is_reflection(t)
        if r is None:
            raise CoxeterError(f"{t!r} is not a reflection")
        return r

    def reflections(self, K: int) -> List[AffineElement]:
        """Reflections ``s_{alpha,k}`` with ``alpha > 0`` and ``|k| <= K``."""
        return [
            self.reflection(AffineReflection(ri, k))
            for k in range(-K, K + 1)
            for ri in self.datum.positive
        ]

    def inversion_list(self, x: AffineElement, word: Optional[Sequence[int]] = None) -> List[AffineElement]:
        if word is None:
            word = self.reduced_word(x)
        out = []
        suffix = self.identity
        for s in reversed(word):
            g = self.gens[s]
            out.append(suffix * g * suffix.inverse())
            suffix = suffix * g
        return out

    def inversion_set(self, x: AffineElement) -> FrozenSet[AffineElement]:
        return frozenset(self.inversion_list(x))

    def bruhat_direction(self, x, t):
        from .coxeter import Direction

        self.root_of(t)
        return Direction.UP if self.length(x * t) > self.length(x) else Direction.DOWN

    def conj_class_key(self, t: AffineElement) -> Tuple[int, int]:
        """``(orbit representative of alpha, +-k mod d_alpha)``.

        Conjugating ``s_{alpha,k}`` by a translation shifts ``k`` by
        ``(lam | alpha)``, which ranges over ``d_alpha Z`` with
        ``d_alpha = gcd_j (alpha_j^vee | alpha)``; conjugating by ``s_alpha``
        negates ``k``.
        """
        r = self.root_of(t)
        D = self.datum
        alpha = D.roots[r.root]
        d = 0
        for j in range(self.n):
            d = math.gcd(d, sum(D.cartan[j][i] * alpha[i] for i in range(self.n)))
        res = min(r.k % d, (-r.k) % d)
        return (self._root_orbit_rep[r.root], res)

    # -- reflection length, ellipticity, closure ---------------------------

    def _one_minus_u(self, u: int) -> List[List[Fraction]]:
        U = self._umat[u]
        n = self.n
        return [[Fraction((1 if i == j else 0) - U[i][j]) for j in range(n)] for i in range(n)]

    def fixed_point(self, x: AffineElement) -> Optional[List[Fraction]]:
        """A fixed point in coroot coordinates, or ``None``."""
        return linalg.solve(self._one_minus_u(x.u), [Fraction(a) for a in x.lam], Fraction(0), Fraction(1))

    def is_elliptic(self, x: AffineElement) -> bool:
        return self.fixed_point(x) is not None

    def reflection_length(self, x: AffineElement) -> int:
        """Reflection length.

        Elliptic elements need exactly ``rank(1 - u)`` reflections. Otherwise
        the count is at least ``rank(1 - u) + 2`` and we search products of
        elements of ``N(x)``, which is complete since some reduced reflection
        factorization can be moved into ``N(x)``.
        """
        r = linalg.rank(self._one_minus_u(x.u), Fraction(0), Fraction(1))
        if self.is_elliptic(x):
            return r
        return search_reflection_length(self, x, known_lower=r + 2)

    def parabolic_closure(self, elements: Sequence[AffineElement]) -> ParabolicClosure:
        """Reflections whose hyperplanes contain the common fixed space, or ``W``."""
        D = self.datum
        n = self.n
        rows, rhs = [], []
        for x in elements:
            rows.extend(self._one_minus_u(x.u))
            rhs.extend(Fraction(a) for a in x.lam)
        if not rows:
            return ParabolicClosure(self, 0, False, frozenset())
        c0 = linalg.solve(rows, rhs, Fraction(0), Fraction(1))
        if c0 is None:
            return ParabolicClosure(self, self.rank, True, None)
        kernel = linalg.nullspace(rows, n, Fraction(0), Fraction(1))
        refl = []
        for ri in D.positive:
            a = D.roots[ri]
            if any(D.pairing(kv, a) for kv in kernel):
                continue
            k = D.pairing(c0, a)
            if k.denominator == 1:
                refl.append(self.reflection(AffineReflection(ri, int(k))))
        return ParabolicClosure(self, n - len(kernel), False, frozenset(refl))

    def generates_whole(self, reflections: Iterable[AffineElement]) -> bool:
        """Whether the given reflections generate the whole affine Weyl group.

        First the linear parts must generate the finite Weyl group (their
        roots close up to all of the root system). Then Schreier generators
        of the translation part are collected over cosets indexed by the
        linear part, and their span must be the full coroot lattice.
        """
        gens = list(reflections)
        D = self.datum
        roots = set()
        for t in gens:
            r = self.root_of(t)
            roots.add(r.root)
            roots.add(D.neg[r.root])
        queue = list(roots)
        while queue:
            a = queue.pop()
            for b in list(roots):
                img = D.root_index[self._reflect_root(b, D.roots[a])]
                if img not in roots:
                    roots.add(img)
                    queue.append(img)
        if len(roots) != len(D.roots):
            return False
        reps: Dict[int, AffineElement] = {0: self.identity}
        queue = [0]
        shifts = []
        while queue:
            u = queue.pop(0)
            rep = reps[u]
            for g in gens:
                h = rep * g
                if h.u not in reps:
                    reps[h.u] = h
                    queue.append(h.u)
                else:
                    # Schreier generator for the right transversal
                    z = h * reps[h.u].inverse()
                    if any(z.lam):
                        shifts.append(z.lam)
        return linalg.lattice_index(shifts, self.n) == 1

    def is_conjugate(self, x: AffineElement, y: AffineElement) -> bool:
        """Whether ``x`` and ``y`` are conjugate in the affine Weyl group."""
        fin = self.finite
        for v in range(fin.order):
            vi = fin.inv[v]
            if fin.mul(fin.mul(v, y.u), vi) != x.u:
                continue
            V = self._umat[v]
            vl = [sum(V[i][j] * y.lam[j] for j in range(self.n)) for i in range(self.n)]
            b = [a - c for a, c in zip(x.lam, vl)]
            U = self._umat[x.u]
            cols = [[(1 if i == j else 0) - U[i][j] for i in range(self.n)] for j in range(self.n)]
            if linalg.in_integer_span(cols, b, self.n):
                return True
        return False

    def elements_up_to_length(self, L: int) -> List[AffineElement]:
        """All elements of simple length at most ``L``, by breadth-first search."""
        seen = {self.identity}
        level = [self.identity]
        out = [self.identity]
        for _ in range(L):
            nxt = []
            for x in level:
                for g in self.gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            out.extend(nxt)
            level = nxt
        return out

    def tits_system(self):
        """The same group as an abstract Coxeter system in its Tits representation."""
        if self._tits is None:
            self._tits = build_system(self.coxeter_matrix, self.name)
        return self._tits

    # -- serialization -----------------------------------------------------

    def reflection_to_json(self, t: AffineElement) -> dict:
        r = self.root_of(t)
        return {"root": [str(x) for x in self.datum.ambient(self.datum.roots[r.root])], "k": r.k}

    def element_to_json(self, x: AffineElement) -> dict:
        return {
            "u": [s + 1 for s in self.finite.words[x.u]],
            "lambda": list(x.lam),
            "word": [s + 1 for s in self.reduced_word(x)],
        }


_AFFINE_CACHE: Dict[str, AffineWeylGroup] = {}


def build_affine(name: str) -> AffineWeylGroup:
    """Affine Weyl group from a finite type (``"B2"``) or tilde name (``"Bt2"``)."""
    key = name.replace("t", "") if re.fullmatch(r"[A-Z]t\d+", name) else name
    if key not in AFFINE_TYPES:
        raise CoxeterError(f"unknown affine type {name!r}")
    if key not in _AFFINE_CACHE:
        _AFFINE_CACHE[key] = AffineWeylGroup(key)
    return _AFFINE_CACHE[key]
