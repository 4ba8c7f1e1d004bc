"""JSON encodings of systems, elements and factorizations.

Words are 1-based lists of generator indices. A reflection carries its
word plus either its root (Tits systems) or its finite root and level
(affine systems); parsing accepts any of these.
"""

from __future__ import annotations

import json
from typing import List, Sequence

from .coxeter import CoxeterMatrix, CoxeterSystem, build_system, coxeter_matrix, parse_word
from .errors import CoxeterError
from .hurwitz import BraidWord, Factorization

__all__ = [
    "load_system",
    "system_to_json",
    "element_to_json",
    "element_from_json",
    "reflection_to_json",
    "reflection_from_json",
    "factorization_to_json",
    "factorization_from_json",
    "parse_factorization",
    "braid_to_json",
]


def _is_affine(system) -> bool:
    return getattr(system, "is_affine", False)


def load_system(type_name=None, matrix=None):
    """System from a catalog name or a Coxeter matrix.

    Tilde names (``"Bt2"``) give the affine Weyl group in its semidirect
    product model; a matrix (JSON rows, 0 for infinity) gives a Tits system.
    """
    if matrix is not None:
        rows = json.loads(matrix) if isinstance(matrix, str) else matrix
        return build_system(CoxeterMatrix.from_json(rows))
    if type_name is None:
        raise CoxeterError("need --type or --matrix")
    if "t" in type_name:
        from .affine import build_affine

        return build_affine(type_name)
    coxeter_matrix(type_name)  # validates the name
    return build_system(type_name)


def system_to_json(system) -> dict:
    if _is_affine(system):
        return {
            "type": system.name,
            "affine": True,
            "rank": system.rank,
            "coxeter_matrix": system.coxeter_matrix.to_json(),
        }
    out = {
        "type": system.name,
        "affine": False,
        "rank": system.rank,
        "coxeter_matrix": system.matrix.to_json(),
        "finite": system.is_finite,
    }
    if system.is_finite:
        out["order"] = system.order()
        out["reflections"] = len(system.reflections())
    return out


def _word(x) -> List[int]:
    return [s + 1 for s in x.system.reduced_word(x)]


def element_to_json(x) -> dict:
    if _is_affine(x.system):
        return x.system.element_to_json(x)
    return {"word": _word(x)}


def element_from_json(system, data):
    if isinstance(data, dict):
        data = data["word"]
    return system.element(parse_word(data, system.rank))


def reflection_to_json(t) -> dict:
    system = t.system
    if _is_affine(system):
        out = system.reflection_to_json(t)
        out["word"] = _word(t)
        return out
    return {"word": _word(t), "root": system.root_of(t).to_json()}


def reflection_from_json(system, data):
    if isinstance(data, dict) and "k" in data and _is_affine(system):
        t = system.reflection_from_ambient(data["root"], data["k"])
    else:
        t = element_from_json(system, data)
    if system.is_reflection(t) is None:
        raise CoxeterError(f"{data!r} is not a reflection")
    return t


def factorization_to_json(f: Sequence) -> List[dict]:
    return [reflection_to_json(t) for t in f]


def factorization_from_json(system, data) -> Factorization:
    return Factorization(system, [reflection_from_json(system, d) for d in data])


def _parse_affine_entry(system, text: str):
    root, k = text.split(":")
    coords = [c for c in root.replace(",", " ").split() if c]
    return system.reflection_from_ambient(coords, int(k))


def parse_factorization(system, text: str) -> Factorization:
    """Parse a factorization from JSON or a ``;``-separated list of entries.

    Each text entry is a word (``"1 2 1"``) or, for affine systems, a root
    in ambient coordinates with a level (``"1,-1:1"`` for ``s_{e1-e2,1}``).
    """
    text = text.strip()
    if text.startswith("["):
        return factorization_from_json(system, json.loads(text))
    if text in ("", "e"):
        return Factorization(system, [])
    entries = []
    for part in text.split(";"):
        part = part.strip()
        if ":" in part:
            if not _is_affine(system):
                raise CoxeterError("root:level entries need an affine system")
            entries.append(_parse_affine_entry(system, part))
        else:
            entries.append(element_from_json(system, part))
    return Factorization(system, entries)


def braid_to_json(b: BraidWord) -> dict:
    return {"letters": b.to_json(), "text": str(b)}


def is_tits_system(system) -> bool:
    return isinstance(system, CoxeterSystem)
