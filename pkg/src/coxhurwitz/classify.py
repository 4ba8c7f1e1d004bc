"""Quasi-Coxeter detection, simple-system completion and theorem harnesses.

An element is quasi-Coxeter when some reduced reflection factorization of
it generates the whole group, and parabolic quasi-Coxeter when the same
holds inside its parabolic closure. The ``check_*`` functions test the
characterizations of these elements on concrete inputs and return
:class:`Report` objects rather than raising on a mismatch.
"""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coxeter import CoxeterMatrix, CoxeterSystem, find_reduced_factorization
from .dyer import (
    ParabolicClosure,
    chi,
    conj_multiset,
    parabolic_closure,
    red_T,
    reflection_length,
    reflections_of,
)
from .errors import CapExceeded, CoxeterError, UnsupportedSystem
from .scalar import INFINITY

__all__ = [
    "Classification",
    "Report",
    "SimpleSystem",
    "CompletingOrbits",
    "classify",
    "is_quasi_coxeter",
    "is_parabolic_quasi_coxeter",
    "is_coxeter_element",
    "coxeter_matrix_of",
    "closure_system",
    "check_thm13",
    "check_cor_main4",
    "complete_to_simple_system",
    "completing_orbit",
    "transitivity_check",
    "multiset_criterion_check",
    "odd_spanning_tree",
    "is_crystallographic",
    "element_order",
    "DEFAULT_K",
    "THEOREMS",
    "run_check",
    "verify_reduction",
    "check_reduction",
    "check_extension",
    "check_transitivity_all",
    "check_thm13_all",
    "check_main4_all",
    "check_multiset",
]

DEFAULT_K = 3


def _is_affine(system) -> bool:
    return getattr(system, "is_affine", False)


def _require_supported(system) -> None:
    if _is_affine(system):
        return
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("classification needs a finite or affine system")


def _matrix_of(system) -> CoxeterMatrix:
    return system.coxeter_matrix if _is_affine(system) else system.matrix


# -- small helpers ----------------------------------------------------------


def element_order(x, limit: int = 1000) -> Optional[int]:
    """Order of ``x``, or ``None`` if it exceeds ``limit``."""
    e = x.system.identity
    y = x
    for k in range(1, limit + 1):
        if y == e:
            return k
        y = y * x
    return None


def _dihedral_label(a, b, limit: int = 64):
    k = element_order(a * b, limit)
    return INFINITY if k is None else k


def coxeter_matrix_of(reflections: Sequence) -> CoxeterMatrix:
    """Coxeter matrix read off the orders of pairwise products."""
    refl = list(reflections)
    n = len(refl)
    rows = [[1 if i == j else _dihedral_label(refl[i], refl[j]) for j in range(n)] for i in range(n)]
    return CoxeterMatrix(tuple(tuple(r) for r in rows))


def _isomorphic(m1: CoxeterMatrix, m2: CoxeterMatrix) -> bool:
    n = m1.rank
    if n != m2.rank:
        return False
    for perm in itertools.permutations(range(n)):
        if all(m1[i, j] == m2[perm[i], perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def is_crystallographic(system) -> bool:
    """Finite Coxeter groups with labels in {2, 3, 4, 6} are Weyl groups."""
    m = _matrix_of(system)
    return all(m[i, j] in (1, 2, 3, 4, 6) for i in range(m.rank) for j in range(m.rank))


def _sorted(refls) -> List:
    return sorted(refls, key=lambda x: x.key)


# -- Coxeter elements -------------------------------------------------------

_COX_CACHE: Dict[int, frozenset] = {}
_COX_LOCK = threading.Lock()


def _coxeter_products(system) -> List:
    out = []
    seen = set()
    for perm in itertools.permutations(range(system.rank)):
        c = system.identity
        for s in perm:
            c = c * system.gens[s]
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _finite_coxeter_class(system: CoxeterSystem) -> frozenset:
    with _COX_LOCK:
        hit = _COX_CACHE.get(id(system))
    if hit is not None:
        return hit
    elems = system.elements()
    found = set()
    for c in _coxeter_products(system):
        if c in found:
            continue
        for g in elems:
            found.add(g * c * g.inverse())
    result = frozenset(found)
    with _COX_LOCK:
        _COX_CACHE[id(system)] = result
    return result


def is_coxeter_element(w) -> bool:
    """Conjugate to a product of all simple reflections in some order."""
    system = w.system
    _require_supported(system)
    if _is_affine(system):
        return any(system.is_conjugate(w, c) for c in _coxeter_products(system))
    return w in _finite_coxeter_class(system)


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Flags of an element together with a witness factorization.

    ``witness`` is a reduced reflection factorization generating ``W`` (for
    quasi-Coxeter elements) or the parabolic closure (for parabolic ones).
    """

    element: object
    reflection_length: int
    is_coxeter: bool
    is_quasi_coxeter: bool
    is_parabolic_quasi_coxeter: bool
    is_proper_parabolic_quasi_coxeter: bool
    witness: Optional[Tuple]
    closure: ParabolicClosure


def _generates_closure(factors: Sequence, closure: ParabolicClosure) -> bool:
    if not factors:
        return not closure.reflections
    return reflections_of(factors) == closure.reflections


def _generates_whole(system, factors: Sequence) -> bool:
    if _is_affine(system):
        return system.generates_whole(factors)
    return len(reflections_of(factors)) == len(system.reflections())


def _qc_witness(system, w, lt: int) -> Optional[Tuple]:
    """A reduced factorization of ``w`` generating ``W``, if ``w`` is quasi-Coxeter."""
    if lt != system.rank:
        return None
    if _is_affine(system):
        # every reduced factorization of an affine quasi-Coxeter element
        # generates, so testing one of them decides
        f = find_reduced_factorization(system, w, lt)
        return f if system.generates_whole(f) else None
    for f in red_T(w):
        if _generates_whole(system, f):
            return f
    return None


def classify(x) -> Classification:
    """All quasi-Coxeter flags of ``x`` (finite or affine systems)."""
    system = x.system
    _require_supported(system)
    lt = reflection_length(x)
    closure = parabolic_closure([x], system)
    if closure.is_whole:
        witness = _qc_witness(system, x, lt)
        qc = witness is not None
        return Classification(
            x, lt, qc and is_coxeter_element(x), qc, qc, False, witness, closure
        )
    # P(x) is a proper parabolic; reduced factorizations stay inside it
    witness = None
    if lt == closure.rank:
        for f in red_T(x):
            if _generates_closure(f, closure):
                witness = f
                break
    pqc = witness is not None
    return Classification(x, lt, False, False, pqc, pqc, witness, closure)


def is_quasi_coxeter(w) -> Classification:
    """Classification of ``w``; ``is_quasi_coxeter`` is the flag of interest."""
    return classify(w)


def is_parabolic_quasi_coxeter(x) -> Classification:
    """Classification of ``x``; ``is_parabolic_quasi_coxeter`` is the flag of interest."""
    return classify(x)


def closure_system(closure: ParabolicClosure) -> Tuple[Tuple, Optional[CoxeterMatrix]]:
    """Canonical simple system of a parabolic closure and its Coxeter matrix.

    This realizes ``P(x)`` as a Coxeter system in its own right. The whole
    group of an affine system is returned through its simple generators.
    """
    system = closure.system
    if closure.is_whole:
        return tuple(system.gens), _matrix_of(system)
    if not closure.reflections:
        return (), None
    gens = tuple(_sorted(chi(closure.reflections)))
    return gens, coxeter_matrix_of(gens)


# -- reports ----------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"


@dataclass
class Report:
    """Outcome of a harness check.

    ``status`` is ``"pass"``, ``"fail"`` or ``"indeterminate"``; ``details``
    holds plain data and ``failures`` lists counterexample payloads.
    """

    check: str
    status: str = PASS
    checked: int = 0
    details: dict = field(default_factory=dict)
    failures: List = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def absorb(self, other: "Report", payload=None) -> None:
        """Fold a per-item report into this aggregate."""
        self.checked += 1
        if other.status == FAIL:
            self.status = FAIL
            self.failures.append(payload if payload is not None else other.details)
        elif other.status == INDETERMINATE and self.status == PASS:
            self.status = INDETERMINATE
            self.failures.append(payload if payload is not None else other.details)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "checked": self.checked,
            "details": self.details,
            "failures": self.failures,
        }


def _word_json(x) -> List[int]:
    return [s + 1 for s in x.system.reduced_word(x)]


def _biconditional_status(left: bool, right: bool, bounded: bool) -> str:
    if left == right:
        return PASS
    if bounded and left and not right:
        # the witness may exist beyond the search bound
        return INDETERMINATE
    return FAIL


# -- Theorem 1.3 style harness ---------------------------------------------


def _witness_reflections(system, K: int) -> List:
    if _is_affine(system):
        refl = system.reflections(K)
        return sorted(refl, key=lambda t: (abs(system.root_of(t).k), system.length(t), t.key))
    return list(system.reflections())


def _extends_to_qc(system, x_fact: Tuple, x, t, qc_memo: Dict) -> bool:
    """Whether ``w = x t`` is quasi-Coxeter with ``l_T(w) = l_T(x) + 1 = rank``."""
    w = x * t
    if _is_affine(system):
        if not system.generates_whole(x_fact + (t,)):
            return False
        return reflection_length(w) == system.rank
    if w not in qc_memo:
        qc_memo[w] = classify(w).is_quasi_coxeter
    return qc_memo[w]


def check_thm13(x, K: int = DEFAULT_K, _memo: Optional[Dict] = None) -> Report:
    """Check the rank ``n - 1`` prefix characterization at ``x``.

    Left side: ``x`` is a proper parabolic quasi-Coxeter element. Right
    side: some quasi-Coxeter ``w`` has ``x <=_T w`` and ``P(x) != W``. Since
    ``l_T(w) = n`` such ``w`` is ``x t`` for a reflection ``t``; affine
    reflections are searched up to level ``K``.
    """
    system = x.system
    _require_supported(system)
    n = system.rank
    cls = classify(x)
    if cls.reflection_length != n - 1:
        raise CoxeterError(f"check_thm13 needs l_T(x) = {n - 1}, got {cls.reflection_length}")
    memo = {} if _memo is None else _memo
    left = cls.is_proper_parabolic_quasi_coxeter
    right = False
    witness = None
    if not cls.closure.is_whole:
        fx = cls.witness if cls.witness is not None else red_T(x)[0]
        for t in _witness_reflections(system, K):
            if _extends_to_qc(system, fx, x, t, memo):
                right = True
                witness = fx + (t,)
                break
    status = _biconditional_status(left, right, _is_affine(system))
    rank_ok = (not left) or cls.closure.rank == n - 1
    if not rank_ok:
        status = FAIL
    details = {
        "element": _word_json(x),
        "left": left,
        "right": right,
        "closure_rank": cls.closure.rank,
        "rank_ok": rank_ok,
    }
    if witness is not None:
        details["witness"] = [_word_json(t) for t in witness]
    return Report("thm13", status, 1, details)


# -- affine characterization harness ----------------------------------------


def _search_extension(system, x, fx: Tuple, j: int, K: int) -> Optional[Tuple]:
    """Reflections ``t_1..t_j`` of level at most ``K`` making ``x t_1..t_j`` quasi-Coxeter."""
    pool = _witness_reflections(system, K)
    target = system.rank
    seen = set()
    for ts in itertools.product(pool, repeat=j):
        w = x
        for t in ts:
            w = w * t
        if w in seen:
            continue
        seen.add(w)
        # a reduced factorization of a quasi-Coxeter element generates W
        if not system.generates_whole(fx + ts):
            continue
        if system.is_elliptic(w):
            continue
        if reflection_length(w) == target:
            return ts
    return None


def check_cor_main4(x, K: int = DEFAULT_K) -> Report:
    """Check the affine characterization of proper parabolic quasi-Coxeter elements.

    The three statements compared are: ``x`` is proper parabolic
    quasi-Coxeter; some quasi-Coxeter ``w`` has ``x <=_T w`` and
    ``P(x) != W``; some quasi-Coxeter ``w`` has ``x <=_T w`` and ``x`` is
    elliptic. Witnesses are searched with affine levels at most ``K``; a
    positive left side with no witness found is reported as indeterminate.
    """
    system = x.system
    if not _is_affine(system):
        raise UnsupportedSystem("check_cor_main4 needs an affine system")
    rank = system.rank
    cls = classify(x)
    if cls.reflection_length >= rank:
        raise CoxeterError("check_cor_main4 needs l_T(x) < rank")
    a = cls.is_proper_parabolic_quasi_coxeter
    elliptic = system.is_elliptic(x)
    proper = not cls.closure.is_whole
    ts = None
    if elliptic or proper:
        fx = cls.witness if cls.witness is not None else red_T(x)[0]
        ts = _search_extension(system, x, tuple(fx), rank - cls.reflection_length, K)
    exists = ts is not None
    b = exists and proper
    c = exists and elliptic
    if a == b == c:
        status = PASS
    elif a and not exists and b == c:
        status = INDETERMINATE
    else:
        status = FAIL
    details = {
        "element": _word_json(x),
        "elliptic": elliptic,
        "proper_pqc": a,
        "qc_above_with_proper_closure": b,
        "qc_above_with_elliptic": c,
        "K": K,
    }
    if ts is not None:
        details["extension"] = [system.reflection_to_json(t) for t in ts]
    return Report("main4", status, 1, details)


# -- simple-system completion ------------------------------------------------


@dataclass(frozen=True)
class SimpleSystem:
    """Simple system ``(r_1, ..., r_{n-1}, t)`` produced by completion."""

    reflections: Tuple
    matrix: CoxeterMatrix
    conjugator: object


def _check_parabolic_corank1(system: CoxeterSystem, P: Sequence):
    P = list(P)
    refl = reflections_of(P) if P else frozenset()
    closure = parabolic_closure(P, system) if P else ParabolicClosure(system, 0, False, frozenset())
    if closure.reflections != refl or closure.rank != system.rank - 1:
        raise CoxeterError("P must generate a parabolic subgroup of rank n - 1")
    return refl


def complete_to_simple_system(P: Sequence, t) -> SimpleSystem:
    """Extend ``P`` (generating a corank-one parabolic) and ``t`` to a simple system containing ``t``.

    Starting from the positive root of ``t``, reflect by simple roots of
    ``P`` with positive pairing until all pairings are non-positive, then
    conjugate back. The result is verified: its Coxeter matrix must be the
    group's (up to relabelling) and it must generate all reflections.
    """
    system = t.system
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("simple-system completion needs a finite Weyl group")
    if not is_crystallographic(system):
        raise UnsupportedSystem("simple-system completion needs a crystallographic group")
    P = list(P)
    refl_P = _check_parabolic_corank1(system, P)
    T = frozenset(system.reflections())
    if reflections_of(P + [t]) != T:
        raise CoxeterError("P and t do not generate the group")
    delta = [system.root_of(r) for r in _sorted(chi(P))] if P else []
    beta = system.root_of(t).coords
    w = system.identity
    for _ in range(10 * len(T) + 10):
        for a in delta:
            b = system.bilinear(a.coords, beta)
            if b.sign() > 0:
                beta = tuple(x - 2 * b * y for x, y in zip(beta, a.coords))
                w = system.reflection(a) * w
                break
        else:
            break
    else:
        raise CoxeterError("obtuse-angle iteration did not terminate")
    wi = w.inverse()
    out = tuple(wi * system.reflection(a) * w for a in delta) + (t,)
    if not all(r in refl_P for r in out[:-1]):
        raise AssertionError("completion left the parabolic subgroup")
    matrix = coxeter_matrix_of(out)
    if not _isomorphic(matrix, system.matrix) or reflections_of(out) != T:
        raise CoxeterError("completion does not verify as a simple system")
    return SimpleSystem(out, matrix, w)


@dataclass(frozen=True)
class CompletingOrbits:
    """Reflections completing ``P`` to the whole group, split by ``P``-conjugacy."""

    reflections: frozenset
    orbits: Tuple[frozenset, ...]

    @property
    def single_orbit(self) -> bool:
        return len(self.orbits) == 1


def completing_orbit(P: Sequence, system: Optional[CoxeterSystem] = None) -> CompletingOrbits:
    """All ``t`` with ``<P, t> = W``, partitioned into orbits under conjugation by ``P``."""
    P = list(P)
    if system is None:
        if not P:
            raise CoxeterError("need a system for an empty P")
        system = P[0].system
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("completing_orbit needs a finite system")
    refl_P = _check_parabolic_corank1(system, P)
    T = frozenset(system.reflections())
    completing = frozenset(t for t in T if t not in refl_P and reflections_of(P + [t]) == T)
    gens = list(refl_P)
    orbits = []
    left = set(completing)
    for t in _sorted(completing):
        if t not in left:
            continue
        orb = {t}
        stack = [t]
        while stack:
            u = stack.pop()
            for g in gens:
                v = g * u * g
                if v not in orb:
                    orb.add(v)
                    stack.append(v)
        left -= orb
        orbits.append(frozenset(orb))
    return CompletingOrbits(completing, tuple(orbits))


# -- Hurwitz transitivity and the multiset criterion ---------------------------


def _orbit_partition(factorizations: Iterable[Tuple], system, cap: int) -> List[List[Tuple]]:
    from .hurwitz import Factorization, orbit

    remaining = {f: None for f in factorizations}
    parts = []
    for f in list(remaining):
        if f not in remaining:
            continue
        orb = orbit(Factorization(system, f, check=False), cap)
        members = [g.entries for g in orb]
        for g in members:
            remaining.pop(g, None)
        parts.append(members)
    return parts


def transitivity_check(w, cap: int = 10**6) -> Report:
    """Whether the Hurwitz action is transitive on ``Red_T(w)``.

    For Weyl groups the verdict is compared with the parabolic
    quasi-Coxeter flag (they must agree); other finite groups only get the
    orbit count.
    """
    system = w.system
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("transitivity_check needs a finite system")
    facts = red_T(w, cap)
    if not facts[0]:
        parts = [facts]
    else:
        parts = _orbit_partition(facts, system, cap)
    transitive = len(parts) == 1
    details = {
        "element": _word_json(w),
        "red_T": len(facts),
        "orbits": sorted((len(p) for p in parts), reverse=True),
        "transitive": transitive,
    }
    status = PASS
    if is_crystallographic(system):
        pqc = classify(w).is_parabolic_quasi_coxeter
        details["parabolic_quasi_coxeter"] = pqc
        if pqc != transitive:
            status = FAIL
    # members of an orbit are all reduced factorizations of w
    if sum(len(p) for p in parts) != len(facts):
        status = FAIL
    return Report("transitivity", status, 1, details)


def _all_factorizations(w, L: int) -> List[Tuple]:
    from . import kernels

    system = w.system
    refl = system.reflections()
    idx = [t.index for t in refl]
    try:
        mul = system._table.perm.mul_table.tolist()
    except ValueError:
        raise UnsupportedSystem("factorization enumeration needs a multiplication table") from None
    len_t = system.reflection_length_table()
    tuples = kernels.factorizations_of(w.index, L, idx, mul, len_t)
    return [tuple(refl[p] for p in tup) for tup in tuples]


def multiset_criterion_check(w, L: int, cap: int = 10**6) -> Report:
    """Hurwitz orbits versus conjugacy-class multisets for length-``L`` factorizations.

    Verifies that two factorizations lie in one orbit exactly when their
    multisets of reflection conjugacy classes agree.
    """
    system = w.system
    if not isinstance(system, CoxeterSystem) or not system.is_finite:
        raise UnsupportedSystem("multiset_criterion_check needs a finite system")
    lt = reflection_length(w)
    if L < lt or (L - lt) % 2:
        raise CoxeterError("L must be at least l_T(w) and of the same parity")
    facts = _all_factorizations(w, L)
    if len(facts) > cap:
        raise CapExceeded(f"{len(facts)} factorizations exceed cap {cap}", partial=len(facts))
    parts = _orbit_partition(facts, system, cap)
    by_multiset: Dict[tuple, int] = {}
    failures = []
    for k, part in enumerate(parts):
        keys = {conj_multiset(f) for f in part}
        if len(keys) != 1:
            failures.append({"orbit": k, "reason": "orbit carries several multisets"})
            continue
        key = keys.pop()
        if key in by_multiset:
            failures.append({"orbit": k, "reason": "two orbits share a multiset", "other": by_multiset[key]})
        by_multiset[key] = k
    details = {
        "element": _word_json(w),
        "L": L,
        "factorizations": len(facts),
        "orbits": len(parts),
        "multisets": len(by_multiset),
    }
    return Report("multiset", FAIL if failures else PASS, len(facts), details, failures)


def odd_spanning_tree(system) -> bool:
    """Whether the Coxeter diagram is connected through odd labels alone.

    That is the same as having a spanning tree with all labels odd.
    """
    m = _matrix_of(system)
    n = m.rank
    if n == 0:
        return False
    comp = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            lab = m[i, j]
            if j not in comp and lab != INFINITY and lab % 2 == 1 and lab > 1:
                comp.add(j)
                stack.append(j)
    return len(comp) == n


# -- whole-group harnesses -------------------------------------------------------


def random_factorization(system: CoxeterSystem, length: int, rng: random.Random) -> Tuple:
    refl = system.reflections()
    return tuple(rng.choice(refl) for _ in range(length))


def _factorization(system, entries):
    from .hurwitz import Factorization

    return Factorization(system, entries, check=False)


def verify_reduction(f, red) -> Optional[str]:
    """Reason why ``red`` is not a valid reduction of ``f``, or ``None``."""
    from .hurwitz import apply_braid

    if apply_braid(f, red.braid) != red.factorization:
        return "braid replay does not reproduce the reduced form"
    if red.factorization.product != f.product:
        return "product changed"
    m = reflection_length(f.product)
    if red.m != m:
        return "prefix length differs from l_T"
    prefix = _factorization(f.system, red.prefix)
    if m and not prefix.is_reduced():
        return "prefix is not reduced"
    tail = red.factorization.entries[m:]
    if len(tail) % 2 or any(tail[i] != tail[i + 1] for i in range(0, len(tail), 2)):
        return "tail is not made of adjacent duplicate pairs"
    return None


def check_reduction(system: CoxeterSystem, samples: int = 200, max_len: int = 6,
                    seed: int = 0, exhaustive_len: Optional[int] = None) -> Report:
    """Reduce random (or all, with ``exhaustive_len``) reflection factorizations."""
    from .hurwitz import reduce

    report = Report("main1", details={"samples": samples, "max_len": max_len, "seed": seed})
    refl = system.reflections()
    if exhaustive_len is not None:
        tuples = itertools.product(refl, repeat=exhaustive_len)
        report.details["exhaustive_len"] = exhaustive_len
    else:
        rng = random.Random(seed)
        tuples = (random_factorization(system, rng.randint(1, max_len), rng) for _ in range(samples))
    for entries in tuples:
        f = _factorization(system, entries)
        reason = verify_reduction(f, reduce(f))
        item = Report("main1", FAIL if reason else PASS)
        report.absorb(item, {"factorization": [_word_json(t) for t in entries], "reason": reason})
    return report


def check_extension(system: CoxeterSystem) -> Report:
    """Extension to simple reflections for every element and every reduced factorization."""
    from .hurwitz import apply_braid, extend_to_simples

    report = Report("main1.1")
    for w in system.elements():
        word = system.reduced_word(w)
        for entries in red_T(w):
            f = _factorization(system, entries)
            ext = extend_to_simples(word, f)
            reason = None
            if apply_braid(ext.source(), ext.braid) != ext.target():
                reason = "braid replay mismatch"
            elif len(ext.q) != len(word) - len(f):
                reason = "wrong number of simple factors"
            else:
                q = system.identity
                for s in ext.q:
                    q = q * system.gens[s]
                if not q.is_identity():
                    reason = "simple factors do not multiply to e"
            item = Report("main1.1", FAIL if reason else PASS)
            report.absorb(item, {"element": _word_json(w), "reason": reason})
    return report


def check_transitivity_all(system: CoxeterSystem, only_quasi_coxeter: bool = False,
                           cap: int = 10**6) -> Report:
    """Transitivity on ``Red_T`` versus the parabolic quasi-Coxeter flag, element by element."""
    report = Report("main2", details={"only_quasi_coxeter": only_quasi_coxeter})
    pqc_count = 0
    for w in system.elements():
        if only_quasi_coxeter and not classify(w).is_quasi_coxeter:
            continue
        item = transitivity_check(w, cap)
        pqc_count += bool(item.details.get("parabolic_quasi_coxeter"))
        report.absorb(item)
    report.details["parabolic_quasi_coxeter"] = pqc_count
    return report


def _affine_candidates(system, max_length: int) -> List:
    return system.elements_up_to_length(max_length)


def check_thm13_all(system, max_length: int = 8, K: int = DEFAULT_K) -> Report:
    """Run :func:`check_thm13` on every ``x`` with ``l_T(x) = n - 1``.

    Finite systems are scanned completely; affine ones up to simple length
    ``max_length``.
    """
    if _is_affine(system):
        elems = _affine_candidates(system, max_length)
    else:
        _require_supported(system)
        elems = system.elements()
    report = Report("thm13", details={"positive": 0})
    memo: Dict = {}
    for x in elems:
        if reflection_length(x) != system.rank - 1:
            continue
        item = check_thm13(x, K, memo)
        report.details["positive"] += bool(item.details["left"])
        report.absorb(item)
    return report


def check_main4_all(system, max_length: int = 8, K: int = DEFAULT_K) -> Report:
    """Run :func:`check_cor_main4` on elliptic ``x`` with ``l_T(x) < rank`` up to simple length ``max_length``."""
    if not _is_affine(system):
        raise UnsupportedSystem("main4 needs an affine system")
    report = Report("main4", details={"K": K, "positive": 0})
    for x in _affine_candidates(system, max_length):
        if not system.is_elliptic(x) or reflection_length(x) >= system.rank:
            continue
        item = check_cor_main4(x, K)
        report.details["positive"] += bool(item.details["proper_pqc"])
        report.absorb(item)
    return report


def check_multiset(system: CoxeterSystem, w=None, L: Optional[int] = None) -> Report:
    """Multiset criterion for ``w`` (default: the Coxeter element ``s_1...s_n``)."""
    if w is None:
        w = system.element(range(system.rank))
    if not classify(w).is_quasi_coxeter:
        raise CoxeterError("the multiset criterion is stated for quasi-Coxeter elements")
    if L is None:
        L = reflection_length(w) + 2
    return multiset_criterion_check(w, L)


THEOREMS = ("main1", "main1.1", "main2", "main4", "thm13", "multiset", "transitivity")


def run_check(theorem: str, system, **params) -> Report:
    """Dispatch a named harness on a whole system."""
    if theorem == "main1":
        return check_reduction(system, **params)
    if theorem == "main1.1":
        return check_extension(system)
    if theorem in ("main2", "transitivity"):
        return check_transitivity_all(system, **params)
    if theorem == "main4":
        return check_main4_all(system, **params)
    if theorem == "thm13":
        return check_thm13_all(system, **params)
    if theorem == "multiset":
        return check_multiset(system, **params)
    raise CoxeterError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
