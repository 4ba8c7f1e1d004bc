"""Command-line interface.

Every subcommand prints one JSON document to stdout (or ``--out``); progress
goes to stderr. Exit codes: 0 success, 1 a check reported a failure,
2 invalid input, 3 a cap was exceeded, 4 indeterminate (a bounded search
found nothing).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Dict, List, Optional

from . import __version__
from .coxeter import parse_word
from .dyer import chi, parabolic_closure, red_T, reflection_length
from .errors import CapExceeded, CoxeterError, Indeterminate, UnsupportedSystem
from .jsonio import (
    braid_to_json,
    element_from_json,
    element_to_json,
    factorization_to_json,
    load_system,
    parse_factorization,
    reflection_to_json,
    system_to_json,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_INDETERMINATE = 4

SUBCOMMANDS = (
    "group", "element", "lenT", "redT", "chi", "closure", "orbit", "reduce",
    "extend", "normalize", "classify", "check", "affine",
)

# flags that may also come from a config file
_CONFIG_KEYS = {
    "type": str, "matrix": str, "word": str, "factorization": str, "cap": int,
    "seed": int, "K": int, "out": str, "dot": str, "theorem": str, "max_length": int,
    "samples": int, "start": str,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="catalog type such as A3, H3, I2(5) or Bt2")
    common.add_argument("--matrix", help="Coxeter matrix as JSON rows (0 means infinity)")
    common.add_argument("--word", help="1-based word, e.g. '1 2 1'")
    common.add_argument("--factorization", help="JSON list or ';'-separated words / root:level entries")
    common.add_argument("--cap", type=int, help="size cap for orbits and enumerations")
    common.add_argument("--seed", type=int, help="random seed (recorded in the output)")
    common.add_argument("--K", type=int, help="affine level bound for witness searches")
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--dot", help="write a DOT graph here")

    parser = _Parser(prog="coxhurwitz", description="Coxeter groups and the Hurwitz action.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    p = sub.add_parser("group", parents=[common], help="describe a Coxeter system")
    p.add_argument("--roots", action="store_true", help="list all roots")
    sub.add_parser("element", parents=[common], help="describe an element")
    sub.add_parser("lenT", parents=[common], help="reflection length of an element")
    sub.add_parser("redT", parents=[common], help="all reduced reflection factorizations")
    sub.add_parser("chi", parents=[common], help="canonical simple system of <factors>")
    sub.add_parser("closure", parents=[common], help="parabolic closure")
    sub.add_parser("orbit", parents=[common], help="Hurwitz orbit of a factorization")
    sub.add_parser("reduce", parents=[common], help="Hurwitz-reduce a factorization")
    sub.add_parser("extend", parents=[common], help="extend a reduced factorization by simple reflections")
    p = sub.add_parser("normalize", parents=[common], help="single-valley normal form of a Bruhat path")
    p.add_argument("--start", help="start vertex of the path as a word (default e)")
    sub.add_parser("classify", parents=[common], help="quasi-Coxeter flags of an element")
    p = sub.add_parser("check", parents=[common], help="run a theorem harness")
    p.add_argument("--theorem", help="main1, main1.1, main2, main4, thm13, multiset or transitivity")
    p.add_argument("--max-length", dest="max_length", type=int, help="simple-length bound for affine scans")
    p.add_argument("--samples", type=int, help="number of random samples (main1)")
    sub.add_parser("affine", parents=[common], help="affine element data (semidirect model)")
    return parser


def read_config(path: str) -> Dict[str, object]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: Dict[str, object] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CoxeterError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise CoxeterError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _CONFIG_KEYS[key](value)
    return out


def _apply_config(args) -> None:
    if args.config:
        for key, value in read_config(args.config).items():
            if getattr(args, key, None) is None:
                setattr(args, key, value)
    if args.seed is None:
        args.seed = 0
    if args.cap is not None and args.cap <= 0:
        raise CoxeterError("--cap must be positive")
    if args.K is not None and args.K < 0:
        raise CoxeterError("--K must be non-negative")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- helpers -----------------------------------------------------------------


def _system(args):
    return load_system(args.type, args.matrix)


def _element(args, system):
    if args.word is None:
        raise CoxeterError("--word is required")
    return element_from_json(system, args.word)


def _factorization(args, system):
    if args.factorization is None:
        raise CoxeterError("--factorization is required")
    return parse_factorization(system, args.factorization)


def _cap(args, default: int) -> int:
    return args.cap if args.cap is not None else default


class _Result(Exception):
    """Carries a payload together with a non-zero exit code."""

    def __init__(self, payload: dict, code: int):
        super().__init__(payload.get("note", ""))
        self.payload = payload
        self.code = code


# -- subcommands -------------------------------------------------------------


def cmd_group(args) -> dict:
    system = _system(args)
    out = system_to_json(system)
    if args.roots:
        if getattr(system, "is_affine", False):
            D = system.datum
            out["roots"] = [[str(x) for x in D.ambient(r)] for r in D.roots]
            out["roots_basis"] = "ambient (finite root system)"
        else:
            out["roots"] = [r.to_json() for r in system.roots()]
            out["roots_basis"] = "simple roots"
    return out


def cmd_element(args) -> dict:
    system = _system(args)
    w = _element(args, system)
    out = element_to_json(w)
    out["length"] = system.length(w)
    out["reflection_length"] = reflection_length(w)
    root = system.is_reflection(w)
    out["is_reflection"] = root is not None
    out["inversions"] = [reflection_to_json(t) for t in system.inversion_list(w)]
    if not getattr(system, "is_affine", False) and system.is_finite:
        out["matrix"] = [[str(c) for c in row] for row in w.matrix]
    return out


def cmd_lenT(args) -> dict:
    system = _system(args)
    w = _element(args, system)
    return {"element": element_to_json(w), "reflection_length": reflection_length(w)}


def cmd_redT(args) -> dict:
    system = _system(args)
    w = _element(args, system)
    facts = red_T(w, _cap(args, 100_000))
    return {
        "element": element_to_json(w),
        "reflection_length": reflection_length(w),
        "count": len(facts),
        "factorizations": [factorization_to_json(f) for f in facts],
    }


def cmd_chi(args) -> dict:
    from .classify import coxeter_matrix_of

    system = _system(args)
    f = _factorization(args, system)
    if not len(f):
        raise CoxeterError("chi needs at least one reflection")
    gens = sorted(chi(f.entries), key=lambda t: t.key)
    return {
        "generators": factorization_to_json(f),
        "chi": [reflection_to_json(t) for t in gens],
        "rank": len(gens),
        "coxeter_matrix": coxeter_matrix_of(gens).to_json(),
    }


def cmd_closure(args) -> dict:
    system = _system(args)
    if args.factorization is not None:
        elems = list(_factorization(args, system).entries)
    else:
        elems = [_element(args, system)]
    cl = parabolic_closure(elems, system)
    out = {
        "elements": [element_to_json(x) for x in elems],
        "rank": cl.rank,
        "is_whole": cl.is_whole,
    }
    if cl.reflections is not None:
        out["reflections"] = [reflection_to_json(t) for t in sorted(cl.reflections, key=lambda t: t.key)]
    return out


def _write_dot(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _factor_label(f) -> str:
    return " | ".join(" ".join(str(s + 1) for s in t.system.reduced_word(t)) for t in f.entries)


def cmd_orbit(args) -> dict:
    from .hurwitz import orbit

    system = _system(args)
    f = _factorization(args, system)
    cap = _cap(args, 10_000)
    try:
        orb = orbit(f, cap)
    except CapExceeded as exc:
        raise _Result({
            "seed_factorization": factorization_to_json(f),
            "visited": len(exc.partial or []),
            "frontier": len(exc.frontier or []),
            "cap": cap,
            "note": "orbit exceeded cap",
        }, EXIT_CAP) from None
    if args.dot:
        _write_dot(args.dot, orb.to_dot(_factor_label))
    return {
        "seed_factorization": factorization_to_json(f),
        "size": len(orb),
        "members": [factorization_to_json(g) for g in orb],
        "witnesses": [braid_to_json(orb.witness(k)) for k in range(len(orb))],
    }


def _duplicate_search(f, cap: int) -> dict:
    """BFS through the orbit for a member with two equal adjacent factors."""
    from .hurwitz import orbit

    try:
        orb = orbit(f, cap)
    except CapExceeded as exc:
        visited = exc.partial or []
        for g in visited:
            if g.has_adjacent_duplicate():
                return {"found": True, "factorization": factorization_to_json(g)}
        raise _Result({
            "factorization": factorization_to_json(f),
            "visited": len(visited),
            "all_entries_distinct": all(not g.has_repeated_entry() for g in visited),
            "cap": cap,
            "note": "no duplicate pair reachable (cap)",
        }, EXIT_INDETERMINATE) from None
    for k, g in enumerate(orb):
        if g.has_adjacent_duplicate():
            return {
                "found": True,
                "factorization": factorization_to_json(g),
                "braid": braid_to_json(orb.witness(k)),
            }
    return {"found": False, "orbit_size": len(orb), "note": "orbit has no duplicate pair"}


def cmd_reduce(args) -> dict:
    from .hurwitz import reduce

    system = _system(args)
    f = _factorization(args, system)
    if getattr(system, "is_finite", False) and not getattr(system, "is_affine", False):
        red = reduce(f)
        return {
            "factorization": factorization_to_json(f),
            "braid": braid_to_json(red.braid),
            "reduced": factorization_to_json(red.factorization),
            "m": red.m,
        }
    # infinite groups: the reduction need not exist, so search the orbit
    _progress("searching the Hurwitz orbit for a duplicate pair")
    out = _duplicate_search(f, _cap(args, 10_000))
    out["input"] = factorization_to_json(f)
    return out


def cmd_extend(args) -> dict:
    from .hurwitz import apply_braid, extend_to_simples

    system = _system(args)
    f = _factorization(args, system)
    if args.word is None:
        word = system.reduced_word(f.product)
    else:
        word = parse_word(args.word, system.rank)
    ext = extend_to_simples(word, f)
    return {
        "word": [s + 1 for s in ext.word],
        "factorization": factorization_to_json(f),
        "q": [s + 1 for s in ext.q],
        "braid": braid_to_json(ext.braid),
        "replay_ok": apply_braid(ext.source(), ext.braid) == ext.target(),
    }


def cmd_normalize(args) -> dict:
    from .hurwitz import DuplicatePair, normalize_path

    system = _system(args)
    f = _factorization(args, system)
    x = system.identity if args.start is None else element_from_json(system, args.start)
    res = normalize_path(x, f)
    out = {
        "start": element_to_json(x),
        "factorization": factorization_to_json(f),
        "braid": braid_to_json(res.braid),
        "result": factorization_to_json(res.factorization),
    }
    if isinstance(res, DuplicatePair):
        out["duplicate_pair_at"] = res.position
    else:
        out["valley"] = res.valley
        out["lengths"] = list(res.lengths)
    return out


def cmd_classify(args) -> dict:
    from .classify import classify, closure_system

    system = _system(args)
    w = _element(args, system)
    c = classify(w)
    gens, matrix = closure_system(c.closure)
    return {
        "element": element_to_json(w),
        "reflection_length": c.reflection_length,
        "is_coxeter": c.is_coxeter,
        "is_quasi_coxeter": c.is_quasi_coxeter,
        "is_parabolic_quasi_coxeter": c.is_parabolic_quasi_coxeter,
        "is_proper_parabolic_quasi_coxeter": c.is_proper_parabolic_quasi_coxeter,
        "witness": None if c.witness is None else factorization_to_json(c.witness),
        "closure": {
            "rank": c.closure.rank,
            "is_whole": c.closure.is_whole,
            "chi": [reflection_to_json(t) for t in gens] if not c.closure.is_whole else None,
            "coxeter_matrix": None if matrix is None else matrix.to_json(),
        },
    }


def cmd_check(args) -> dict:
    from . import classify as C

    system = _system(args)
    theorem = args.theorem
    if theorem not in C.THEOREMS:
        raise CoxeterError(f"--theorem must be one of {', '.join(C.THEOREMS)}")
    K = args.K if args.K is not None else C.DEFAULT_K
    if args.word is not None:
        x = _element(args, system)
        if theorem == "thm13":
            report = C.check_thm13(x, K)
        elif theorem == "main4":
            report = C.check_cor_main4(x, K)
        elif theorem == "transitivity" or theorem == "main2":
            report = C.transitivity_check(x, _cap(args, 10**6))
        elif theorem == "multiset":
            report = C.check_multiset(system, x)
        else:
            raise CoxeterError(f"--word is not used by {theorem}")
    else:
        params: Dict[str, object] = {}
        if theorem == "main1":
            params = {"seed": args.seed, "samples": args.samples or 200}
        elif theorem in ("thm13", "main4"):
            params = {"K": K}
            if getattr(system, "is_affine", False):
                params["max_length"] = args.max_length or 8
        _progress(f"running {theorem} on {system!r}")
        report = C.run_check(theorem, system, **params)
    out = report.to_json()
    if report.status == "fail":
        raise _Result(out, EXIT_CHECK_FAILED)
    if report.status == "indeterminate":
        raise _Result(out, EXIT_INDETERMINATE)
    return out


def cmd_affine(args) -> dict:
    from .affine import build_affine

    if args.type is None:
        raise CoxeterError("affine needs --type (finite type such as B2, or Bt2)")
    W = build_affine(args.type)
    out = {"group": system_to_json(W)}
    if args.factorization is not None:
        f = parse_factorization(W, args.factorization)
        x = f.product
        out["factorization"] = factorization_to_json(f)
    elif args.word is not None:
        x = _element(args, W)
    else:
        D = W.datum
        out["simple_roots"] = [[str(v) for v in D.ambient(D.roots[i])] for i in range(W.n)]
        out["highest_root"] = [str(v) for v in D.ambient(D.highest_root)]
        return out
    fp = W.fixed_point(x)
    out.update({
        "element": W.element_to_json(x),
        "length": W.length(x),
        "is_translation": x.is_translation(),
        "elliptic": fp is not None,
        "fixed_point": None if fp is None else [str(v) for v in fp],
        "reflection_length": W.reflection_length(x),
    })
    return out


_COMMANDS = {
    "group": cmd_group, "element": cmd_element, "lenT": cmd_lenT, "redT": cmd_redT,
    "chi": cmd_chi, "closure": cmd_closure, "orbit": cmd_orbit, "reduce": cmd_reduce,
    "extend": cmd_extend, "normalize": cmd_normalize, "classify": cmd_classify,
    "check": cmd_check, "affine": cmd_affine,
}


def _run_record(args) -> dict:
    rec = {"command": args.command, "seed": args.seed, "version": __version__}
    for key in ("type", "matrix", "word", "factorization", "cap", "K"):
        value = getattr(args, key, None)
        if value is not None:
            rec[key] = value
    return rec


def _emit(args, payload: dict) -> None:
    doc = {"run": _run_record(args), "result": payload}
    text = json.dumps(doc, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INVALID
    try:
        _apply_config(args)
        random.seed(args.seed)
        payload = _COMMANDS[args.command](args)
    except _Result as res:
        _emit(args, res.payload)
        return res.code
    except Indeterminate as exc:
        _emit(args, {"error": str(exc), "note": "indeterminate"})
        return EXIT_INDETERMINATE
    except CapExceeded as exc:
        _emit(args, {"error": str(exc), "note": "cap exceeded"})
        return EXIT_CAP
    except (CoxeterError, UnsupportedSystem, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"coxhurwitz: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(args, payload)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
