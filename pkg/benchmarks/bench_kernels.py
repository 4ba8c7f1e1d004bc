"""Time the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Each case is checked for
identical output across backends before its timings are printed.
"""

import argparse
import time

from coxhurwitz import kernels
from coxhurwitz.coxeter import build_system


def _orbit_case(name):
    system = build_system(name)
    refl = system.reflections()
    # a Coxeter element factorization plus one duplicate pair: a largish orbit
    word = [system.reflection_position(system.gens[s]) for s in range(system.rank)]
    seed = word + [word[0], word[0]]
    return seed, system.conjugation_table()


def _factor_case(name, extra):
    system = build_system(name)
    c = system.element(range(system.rank))
    table = system._table.perm.mul_table.tolist()
    refl_idx = [t.index for t in system.reflections()]
    return c.index, system.rank + extra, refl_idx, table, system.reflection_length_table()


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = {"python": kernels.backend("python")}
    try:
        backends["cython"] = kernels.backend("cython")
    except ImportError:
        print("compiled kernels not built; timing the Python fallback only")

    cases = []
    for name in ("A3", "B3", "D4"):
        seed, conj = _orbit_case(name)
        cases.append((f"orbit_bfs {name} len {len(seed)}",
                      lambda mod, s=seed, c=conj: mod.orbit_bfs(s, c, 10**7)[0]))
    for name, extra in (("A3", 2), ("B3", 2)):
        target, L, refl, mul, lent = _factor_case(name, extra)
        cases.append((f"factorizations_of {name} len {L}",
                      lambda mod, a=(target, L, refl, mul, lent): mod.factorizations_of(*a)))

    print(f"{'case':34s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, run in cases:
        times = {}
        results = {}
        for bname, mod in backends.items():
            times[bname], results[bname] = _time(lambda: run(mod), args.repeat)
        if "cython" in results and [tuple(x) for x in results["cython"]] != [tuple(x) for x in results["python"]]:
            raise SystemExit(f"backends disagree on {label}")
        py = times["python"]
        cy = times.get("cython")
        if cy is None:
            print(f"{label:34s} {py:10.4f} {'-':>10s} {'-':>8s}")
        else:
            print(f"{label:34s} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
