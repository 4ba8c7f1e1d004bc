import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coxhurwitz.coxeter import build_system
from coxhurwitz.dyer import (
    ReflectionSubgroup,
    absolute_leq,
    chi,
    chi_rank2,
    conj_multiset,
    is_parabolic,
    parabolic_closure,
    red_T,
    reflection_length,
    reflections_of,
    satisfies_chi_condition,
)
from coxhurwitz.errors import CapExceeded, CoxeterError, UnsupportedSystem

import oracles


def _lengths(system):
    return {w: system.length(w) for w in system.elements()}


def _subgroup_reflections(gens, system):
    T = set(system.reflections())
    return frozenset(x for x in oracles.subgroup_elements(gens, system.identity) if x in T)


def _commuting_pair(system):
    for t, u in itertools.combinations(system.reflections(), 2):
        if t * u == u * t:
            return t, u


def _sample_generator_sets(system, count, seed):
    rng = random.Random(seed)
    T = system.reflections()
    out = [frozenset(p) for p in itertools.combinations(T, 2)]
    for _ in range(count):
        out.append(frozenset(rng.sample(T, rng.randint(1, 4))))
    return out


# -- examples -------------------------------------------------------------


def test_chi_rank2_examples():
    a3 = build_system("A3")
    s1, s2, s3 = a3.gens
    assert chi_rank2(s1, s3) == {s1, s3}
    a2 = build_system("A2")
    s1, s2 = a2.gens
    assert chi_rank2(s2, s1 * s2 * s1) == {s1, s2}
    at1 = build_system("At1")
    a, b = at1.gens
    assert chi_rank2(a, b * a * b) == {a, b * a * b}
    assert at1.length(a * b * a * b) == 4 > at1.length(b * a * b) == 3
    with pytest.raises(CoxeterError):
        chi_rank2(a, a)


def test_chi_examples():
    for name in ["A2", "B3", "H3"]:
        system = build_system(name)
        assert chi(system.gens) == set(system.gens)
    a2 = build_system("A2")
    s1, s2 = a2.gens
    assert chi({s1, s1 * s2 * s1}) == {s1, s2}
    with pytest.raises(CoxeterError):
        chi([])


def test_reflections_of_examples():
    a2 = build_system("A2")
    assert reflections_of([a2.gens[0]]) == {a2.gens[0]}
    assert len(reflections_of(a2.gens)) == 3
    b2 = build_system("B2")
    t, u = _commuting_pair(b2)
    assert reflections_of([t, u]) == {t, u}
    at2 = build_system("At2")
    with pytest.raises(CapExceeded) as exc:
        reflections_of(at2.gens, cap=50)
    assert len(exc.value.partial) > 50


def test_conj_multiset_examples():
    assert conj_multiset(()) == ()
    a2 = build_system("A2")
    k = conj_multiset(a2.gens)
    assert k[0] == k[1]
    b2 = build_system("B2")
    k = conj_multiset(b2.gens)
    assert k[0] != k[1]


def test_reflection_length_examples():
    b2 = build_system("B2")
    w0 = b2.element([0, 1, 0, 1])
    assert reflection_length(b2.identity) == 0
    assert reflection_length(w0) == 2
    assert all(reflection_length(t) == 1 for t in b2.reflections())
    assert len(oracles.brute_factorizations(w0, b2.reflections(), 2)) == 4
    assert len(oracles.brute_factorizations(w0, b2.reflections(), 1)) == 0


def test_red_T_examples():
    a2 = build_system("A2")
    s1, s2 = a2.gens
    assert set(red_T(s1 * s2)) == {(s1, s2), (s2, s2 * s1 * s2), (s1 * s2 * s1, s1)}
    assert red_T(s1) == [(s1,)]
    assert red_T(a2.identity) == [()]
    b2 = build_system("B2")
    assert len(red_T(b2.element([0, 1, 0, 1]))) == 4
    with pytest.raises(UnsupportedSystem):
        red_T(build_system("At2").gens[0])


def test_absolute_leq_examples():
    a2 = build_system("A2")
    s1, s2 = a2.gens
    for v in a2.elements():
        assert absolute_leq(a2.identity, v)
        assert absolute_leq(v, v)
    assert absolute_leq(s2, s1 * s2)
    assert reflection_length(s2 * s1 * s2) == 1
    assert not absolute_leq(s1 * s2, s1)


def test_parabolic_examples():
    a3 = build_system("A3")
    s1, s2, s3 = a3.gens
    p = parabolic_closure([s1])
    assert p.rank == 1 and p.reflections == {s1}
    p = parabolic_closure([s1 * s3])
    assert p.rank == 2 and p.reflections == {s1, s3}
    b2 = build_system("B2")
    p = parabolic_closure([b2.element([0, 1, 0, 1])])
    assert p.is_whole and p.reflections == set(b2.reflections())
    assert is_parabolic(ReflectionSubgroup(a3, [s1, s2]))
    assert is_parabolic(ReflectionSubgroup(a3, [s1 * s2 * s1]))
    assert not is_parabolic(ReflectionSubgroup(b2, _commuting_pair(b2)))
    with pytest.raises(UnsupportedSystem):
        parabolic_closure([build_system("H3").gens[0]], build_system("I2(inf)"))


# -- chi properties -------------------------------------------------------


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_chi_defining_condition_and_eq1(name):
    system = build_system(name)
    lengths = _lengths(system)
    for gens in _sample_generator_sets(system, 100, seed=len(name)):
        sub = ReflectionSubgroup(system, gens)
        refl = _subgroup_reflections(list(gens), system)
        assert sub.reflections() == refl
        c = sub.chi
        assert c == oracles.definitional_chi(refl, lengths)
        assert satisfies_chi_condition(c, refl)
        # chi generates the same subgroup and its conjugates give all reflections
        assert _subgroup_reflections(list(c), system) == refl
        conj = {w * t * w.inverse() for w in oracles.subgroup_elements(list(c), system.identity) for t in c}
        assert conj == refl
        assert len(c) <= len(gens) or len(c) <= system.rank


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_chi_conjugation_rule(name):
    system = build_system(name)
    rng = random.Random(7)
    for gens in _sample_generator_sets(system, 60, seed=11)[::3]:
        s = system.gens[rng.randrange(system.rank)]
        c = chi(gens)
        conj = chi({s * t * s for t in gens})
        if s in c:
            assert conj == c
        else:
            assert conj == {s * t * s for t in c}


@pytest.mark.parametrize("name", ["A3", "B3", "H3"])
def test_chi_rank2_preserves_conjugacy_multiset(name):
    system = build_system(name)
    for t, u in itertools.combinations(system.reflections(), 2):
        c = chi_rank2(t, u)
        assert conj_multiset(sorted(c, key=lambda x: x.key)) == conj_multiset((t, u))
        assert reflections_of(c) == reflections_of((t, u))


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_standard_parabolic_reflections_stay_canonical(name):
    system = build_system(name)
    T = system.reflections()
    for r in range(1, system.rank):
        for I in itertools.combinations(range(system.rank), r):
            P = reflections_of([system.gens[i] for i in I])
            for t in P:
                for u in T:
                    if u not in P:
                        assert t in chi_rank2(t, u)


# -- reflection length and closures ---------------------------------------


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_reflection_length_vs_bfs(name):
    system = build_system(name)
    for w, d in oracles.reflection_lengths(system).items():
        assert reflection_length(w) == d


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_red_T_vs_brute_force_and_closure_rank(name):
    system = build_system(name)
    T = system.reflections()
    by_len = {}
    for w in system.elements():
        by_len.setdefault(reflection_length(w), []).append(w)
    for k, ws in by_len.items():
        brute = {}
        for tup in itertools.product(T, repeat=k):
            p = system.identity
            for t in tup:
                p = p * t
            brute.setdefault(p, set()).add(tup)
        for w in ws:
            fs = red_T(w)
            assert set(fs) == brute.get(w, {()}) and len(fs) == len(set(fs))
            pw = parabolic_closure([w])
            for f in fs[:6]:
                if not f:
                    continue
                sub = ReflectionSubgroup(system, f)
                pf = parabolic_closure(f)
                assert len(set(f)) == sub.rank == pf.rank == k
                assert pf.reflections == pw.reflections


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_parabolic_closure_vs_brute_force(name):
    system = build_system(name)
    parabolics = oracles.all_parabolics(system)
    rng = random.Random(3)
    elems = system.elements()
    samples = [[w] for w in elems] + [rng.sample(elems, 2) for _ in range(40)]
    for xs in samples:
        rank, refl = oracles.brute_parabolic_closure(system, xs, parabolics)
        p = parabolic_closure(xs)
        assert (p.rank, p.reflections) == (rank, refl)


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_is_parabolic_vs_brute_force(name):
    system = build_system(name)
    parabolic_sets = {frozenset(t for t in system.reflections() if t in P) for P in oracles.all_parabolics(system)}
    for gens in _sample_generator_sets(system, 50, seed=5):
        sub = ReflectionSubgroup(system, gens)
        assert is_parabolic(sub) == (sub.reflections() in parabolic_sets)


@settings(max_examples=40)
@given(st.data())
def test_absolute_order_is_a_partial_order(data):
    system = build_system("B3")
    elems = system.elements()
    u, v, w = (data.draw(st.sampled_from(elems)) for _ in range(3))
    if absolute_leq(u, v) and absolute_leq(v, w):
        assert absolute_leq(u, w)
    if absolute_leq(u, v) and absolute_leq(v, u):
        assert u == v


def test_subgroup_object():
    system = build_system("B3")
    s1, s2, s3 = system.gens
    sub = ReflectionSubgroup(system, [s1, s2 * s1 * s2])
    assert sub.chi <= sub.reflections()
    assert sub == ReflectionSubgroup(system, sub.chi)
    assert hash(sub) == hash(ReflectionSubgroup(system, sub.chi))
    assert not sub.generates_whole()
    assert ReflectionSubgroup(system, system.gens).generates_whole()
    assert sub.contains(s1) and not sub.contains(s3)
    with pytest.raises(CoxeterError):
        ReflectionSubgroup(system, [s1 * s2])
