"""Reflection subgroups, canonical simple systems and parabolic closures.

The functions here only use the generic system interface (``identity``,
``length``, ``is_reflection``, ``reflection_length``, ``conj_class_key``), so
they work for Tits-representation systems and for affine Weyl groups alike.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from . import linalg
from .coxeter import CoxeterSystem
from .errors import CapExceeded, CoxeterError, UnsupportedSystem
from .scalar import ONE, ZERO

__all__ = [
    "ReflectionSubgroup",
    "ParabolicClosure",
    "chi_rank2",
    "chi",
    "reflections_of",
    "conj_multiset",
    "reflection_length",
    "red_T",
    "absolute_leq",
    "parabolic_closure",
    "is_parabolic",
    "satisfies_chi_condition",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 100_000


def _check_reflection(system, t):
    if system.is_reflection(t) is None:
        raise CoxeterError(f"{t!r} is not a reflection")


def chi_rank2(t, u) -> FrozenSet:
    """Canonical simple system of the dihedral reflection subgroup ``<t, u>``.

    Replace one generator by its conjugate under the other while that lowers
    the total length; the terminal pair is canonical.
    """
    system = t.system
    if t == u:
        raise CoxeterError("chi_rank2 needs two distinct reflections")
    la, lb = system.length(t), system.length(u)
    a, b = t, u
    while True:
        bab = b * a * b
        l_bab = system.length(bab)
        if l_bab < la:
            a, la = bab, l_bab
            continue
        aba = a * b * a
        l_aba = system.length(aba)
        if l_aba < lb:
            b, lb = aba, l_aba
            continue
        return frozenset((a, b))


def chi(reflections: Iterable) -> FrozenSet:
    """Canonical simple system of the subgroup generated by ``reflections``.

    Fixpoint loop: while some pair is not its own canonical pair, replace
    the lexicographically smallest such pair by its canonical pair.
    """
    current = set(reflections)
    if not current:
        raise CoxeterError("chi needs a nonempty set of reflections")
    # pairs already known to be canonical
    checked: Set[Tuple] = set()
    while True:
        ordered = sorted(current, key=lambda x: x.key)
        changed = False
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                pair = (a, b)
                if pair in checked:
                    continue
                c = chi_rank2(a, b)
                if c == frozenset(pair):
                    checked.add(pair)
                    continue
                current.discard(a)
                current.discard(b)
                current.update(c)
                changed = True
                break
            if changed:
                break
        if not changed:
            return frozenset(current)


def reflections_of(generators: Iterable, cap: int = DEFAULT_CAP) -> FrozenSet:
    """All reflections of the subgroup generated by the given reflections.

    Closure of the generators under conjugation by the generators; raises
    :class:`CapExceeded` carrying the partial set when it grows past ``cap``.
    """
    gens = list(generators)
    found = set(gens)
    queue = list(gens)
    while queue:
        r = queue.pop()
        for g in gens:
            c = g * r * g
            if c not in found:
                found.add(c)
                if len(found) > cap:
                    raise CapExceeded(f"reflection closure exceeded cap {cap}", partial=frozenset(found))
                queue.append(c)
    return frozenset(found)


def satisfies_chi_condition(candidate: Iterable, refl_set: Iterable) -> bool:
    """Check the defining condition of the canonical simple system directly."""
    candidate = set(candidate)
    refl = set(refl_set)
    if not refl:
        return False
    system = next(iter(refl)).system
    expected = set()
    for t in refl:
        lt = system.length(t)
        if all(system.length(t * u) > lt for u in refl if u != t):
            expected.add(t)
    return expected == candidate


class ReflectionSubgroup:
    """Subgroup generated by a finite set of reflections."""

    def __init__(self, system, generators: Iterable):
        self.system = system
        self.generators = frozenset(generators)
        for t in self.generators:
            _check_reflection(system, t)
        self._lock = threading.Lock()
        self._chi: Optional[FrozenSet] = None
        self._refl: Optional[FrozenSet] = None

    @property
    def chi(self) -> FrozenSet:
        with self._lock:
            if self._chi is None:
                self._chi = chi(self.generators) if self.generators else frozenset()
        return self._chi

    @property
    def rank(self) -> int:
        return len(self.chi)

    def reflections(self, cap: int = DEFAULT_CAP) -> FrozenSet:
        with self._lock:
            if self._refl is None:
                self._refl = reflections_of(self.generators, cap) if self.generators else frozenset()
        return self._refl

    def contains(self, t) -> bool:
        return t in self.reflections()

    def generates_whole(self) -> bool:
        """Whether the subgroup is the whole group."""
        system = self.system
        if getattr(system, "is_affine", False):
            return system.generates_whole(self.generators)
        if not system.is_finite:
            raise UnsupportedSystem("generation test needs a finite or affine system")
        return len(self.reflections()) == len(system.reflections())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReflectionSubgroup):
            return NotImplemented
        return self.system is other.system and self.reflections() == other.reflections()

    def __hash__(self) -> int:
        return hash(self.reflections())

    def __repr__(self) -> str:
        return f"ReflectionSubgroup({sorted(self.generators, key=lambda x: x.key)!r})"


def conj_multiset(factors: Sequence) -> Tuple:
    """Sorted tuple of reflection conjugacy-class keys (a multiset)."""
    out = []
    for t in factors:
        out.append(t.system.conj_class_key(t))
    return tuple(sorted(out, key=repr))


def reflection_length(w) -> int:
    return w.system.reflection_length(w)


def absolute_leq(u, v) -> bool:
    """``u <=_T v`` iff ``l_T(u) + l_T(u^-1 v) = l_T(v)``."""
    if u.system is not v.system:
        raise CoxeterError("elements of different systems")
    return reflection_length(u) + reflection_length(u.inverse() * v) == reflection_length(v)


# -- parabolic closure ----------------------------------------------------


@dataclass(frozen=True)
class ParabolicClosure:
    """Smallest parabolic subgroup containing a set of elements.

    ``reflections`` lists its reflections unless it is the whole group of an
    infinite system (``is_whole`` set, ``reflections`` None).
    """

    system: object
    rank: int
    is_whole: bool
    reflections: Optional[FrozenSet]

    @property
    def subgroup(self) -> ReflectionSubgroup:
        if self.reflections is None:
            return ReflectionSubgroup(self.system, self.system.gens)
        return ReflectionSubgroup(self.system, self.reflections)

    def contains_reflection(self, t) -> bool:
        return self.is_whole or t in self.reflections


def parabolic_closure(elements: Iterable, system=None) -> ParabolicClosure:
    """Parabolic closure of a set of elements (finite or affine systems)."""
    elements = list(elements)
    if system is None:
        if not elements:
            raise CoxeterError("need a system for an empty element set")
        system = elements[0].system
    if getattr(system, "is_affine", False):
        return system.parabolic_closure(elements)
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("parabolic closure is only available for finite and affine systems")
    n = system.rank
    fix = system.fixed_space(elements)
    refl = frozenset(
        t for t in system.reflections()
        if all(not system.bilinear(system.root_of(t).coords, f) for f in fix)
    )
    rank = n - len(fix)
    return ParabolicClosure(system, rank, rank == n, refl)


def is_parabolic(subgroup: ReflectionSubgroup) -> bool:
    """Whether a reflection subgroup equals its own parabolic closure."""
    closure = parabolic_closure(subgroup.generators, subgroup.system)
    if closure.reflections is None:
        return subgroup.generates_whole()
    return subgroup.reflections() == closure.reflections


# -- reduced factorizations ------------------------------------------------


def red_T(w, cap: int = DEFAULT_CAP) -> List[Tuple]:
    """All reduced reflection factorizations of ``w``.

    Factors are confined to the reflections of the parabolic closure of
    ``w``, which makes the enumeration finite for finite systems and for
    elliptic elements of affine systems.
    """
    system = w.system
    if getattr(system, "is_affine", False):
        if not system.is_elliptic(w):
            raise UnsupportedSystem("unbounded factorization set: element is not elliptic")
    elif not system.is_finite:
        raise UnsupportedSystem("reduced factorizations are enumerated for finite and affine systems only")
    closure = parabolic_closure([w], system)
    pool = sorted(closure.reflections, key=lambda x: x.key)
    memo: Dict = {}
    count = [0]

    def rec(x, k):
        if k == 0:
            return [()]
        if x in memo:
            return memo[x]
        out = []
        for t in pool:
            y = t * x
            if reflection_length(y) == k - 1:
                for rest in rec(y, k - 1):
                    out.append((t,) + rest)
                    if len(out) > cap:
                        raise CapExceeded(f"factorization enumeration exceeded cap {cap}", partial=out)
        memo[x] = out
        return out

    return rec(w, reflection_length(w))
