import os
import random
import subprocess
import sys

import pytest

from coxhurwitz import kernels
from coxhurwitz.coxeter import build_system

import oracles

py = kernels.backend("python")
try:
    cy = kernels.backend("cython")
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def _orbit_input(name, seed, m):
    system = build_system(name)
    rng = random.Random(seed)
    n = len(system.reflections())
    return system, [rng.randrange(n) for _ in range(m)], system.conjugation_table()


@pytest.mark.parametrize("name,m", [("A3", 3), ("B3", 4), ("H3", 3), ("D4", 4)])
def test_python_orbit_kernel_matches_brute_force(name, m):
    system, seed, conj = _orbit_input(name, 1, m)
    refl = system.reflections()
    states, parent, move, complete, _ = py.orbit_bfs(seed, conj, 10**6)
    assert complete
    got = {tuple(refl[p] for p in st) for st in states}
    assert got == oracles.brute_orbit(tuple(refl[p] for p in seed))


@needs_cython
@pytest.mark.parametrize("name,m,seed", [("A3", 4, 2), ("B3", 4, 3), ("H3", 3, 4), ("D4", 4, 5), ("G2", 5, 6)])
def test_backends_agree_on_orbits(name, m, seed):
    _, start, conj = _orbit_input(name, seed, m)
    a = py.orbit_bfs(start, conj, 10**6)
    b = cy.orbit_bfs(start, conj, 10**6)
    assert [tuple(s) for s in a[0]] == [tuple(s) for s in b[0]]
    assert list(a[1]) == list(b[1]) and list(a[2]) == list(b[2])
    assert a[3] == b[3] and a[4] == b[4]


@needs_cython
def test_backends_agree_under_cap():
    _, start, conj = _orbit_input("B3", 9, 5)
    a = py.orbit_bfs(start, conj, 50)
    b = cy.orbit_bfs(start, conj, 50)
    assert not a[3] and not b[3]
    assert [tuple(s) for s in a[0]] == [tuple(s) for s in b[0]] and a[4] == b[4]


@pytest.mark.parametrize("name,L", [("A2", 4), ("B2", 4), ("A3", 5)])
def test_factorization_kernel_matches_brute_force(name, L):
    system = build_system(name)
    refl = system.reflections()
    mul = system._table.perm.mul_table.tolist()
    idx = [t.index for t in refl]
    lent = system.reflection_length_table()
    for w in system.elements()[::5]:
        got = {tuple(refl[p] for p in tup) for tup in py.factorizations_of(w.index, L, idx, mul, lent)}
        assert got == set(oracles.brute_factorizations(w, refl, L))
        if cy is not None:
            other = cy.factorizations_of(w.index, L, idx, mul, lent)
            assert [tuple(x) for x in other] == [tuple(x) for x in py.factorizations_of(w.index, L, idx, mul, lent)]


def test_backend_selection_env():
    code = "from coxhurwitz import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, COXHURWITZ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
    env["COXHURWITZ_PURE_PYTHON"] = "0"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == ("cython" if cy is not None else "python")
    with pytest.raises(ValueError):
        kernels.backend("fortran")
