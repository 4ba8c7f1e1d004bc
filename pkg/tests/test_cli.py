import json
import os
import subprocess
import sys

import pytest

from coxhurwitz.cli import main, read_config
from coxhurwitz.coxeter import build_system
from coxhurwitz.errors import CoxeterError
from coxhurwitz.jsonio import (
    element_from_json,
    factorization_from_json,
    load_system,
    parse_factorization,
    reflection_from_json,
)
from coxhurwitz.affine import build_affine

BT2_TUPLE = "1,-1:1; 1,-1:0; 1,1:1; 1,1:0"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_group_roots(capsys):
    code, doc, _ = run(capsys, "group", "--type", "A2", "--roots")
    assert code == 0
    assert len(doc["result"]["roots"]) == 6 and doc["result"]["order"] == 6
    assert doc["run"]["command"] == "group" and doc["run"]["seed"] == 0


def test_group_from_matrix_and_affine(capsys):
    code, doc, _ = run(capsys, "group", "--matrix", "[[1,0],[0,1]]")
    assert code == 0 and doc["result"]["finite"] is False
    code, doc, _ = run(capsys, "group", "--type", "Bt2", "--roots")
    assert code == 0 and doc["result"]["affine"] and len(doc["result"]["roots"]) == 8


def test_check_main2(capsys):
    code, doc, _ = run(capsys, "check", "--theorem", "main2", "--type", "A3")
    assert code == 0 and doc["result"]["status"] == "pass"


def test_check_single_word(capsys):
    code, doc, _ = run(capsys, "check", "--theorem", "transitivity", "--type", "B2", "--word", "1 2 1 2")
    assert code == 0
    assert doc["result"]["details"]["orbits"] == [2, 2]
    code, doc, _ = run(capsys, "check", "--theorem", "thm13", "--type", "Bt2", "--word", "1 2")
    assert code == 0 and doc["result"]["status"] == "pass"


def test_reduce_bt2_example(capsys):
    code, doc, err = run(capsys, "reduce", "--type", "Bt2", "--factorization", BT2_TUPLE)
    assert code == 4
    res = doc["result"]
    assert res["note"] == "no duplicate pair reachable (cap)"
    assert res["visited"] == 10_000 and res["all_entries_distinct"]
    assert "searching" in err


def test_reduce_finite(capsys):
    code, doc, _ = run(capsys, "reduce", "--type", "A2", "--factorization", "1; 2; 1")
    assert code == 0 and doc["result"]["m"] == 1
    system = build_system("A2")
    red = factorization_from_json(system, doc["result"]["reduced"])
    assert red.entries[1] == red.entries[2]


def test_invalid_input_exit_codes(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["group", "--type", "Q9"]) == 2
    assert main(["group", "--bogus"]) == 2
    assert main(["element", "--type", "A2", "--word", "7"]) == 2
    assert main(["check", "--theorem", "nope", "--type", "A2"]) == 2
    assert main(["orbit", "--type", "A2", "--factorization", "1 2"]) == 2
    assert main(["group", "--type", "A2", "--cap", "0"]) == 2
    capsys.readouterr()


def test_orbit_cap_and_dot(capsys, tmp_path):
    dot = tmp_path / "orbit.dot"
    code, doc, _ = run(capsys, "orbit", "--type", "A3", "--factorization", "1;2;3", "--dot", str(dot))
    assert code == 0 and doc["result"]["size"] == 16
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 16 * 4
    code, doc, _ = run(capsys, "orbit", "--type", "B3", "--factorization", "1;2;3;1;1", "--cap", "5")
    assert code == 3 and doc["result"]["note"] == "orbit exceeded cap"


def test_orbit_witnesses_round_trip(capsys):
    from coxhurwitz.hurwitz import BraidWord, apply_braid

    code, doc, _ = run(capsys, "orbit", "--type", "B2", "--factorization", "1;2")
    system = build_system("B2")
    seed = factorization_from_json(system, doc["result"]["seed_factorization"])
    for member, wit in zip(doc["result"]["members"], doc["result"]["witnesses"]):
        g = factorization_from_json(system, member)
        assert apply_braid(seed, BraidWord.from_json(wit["letters"])) == g


def test_element_and_lenT_round_trip(capsys):
    code, doc, _ = run(capsys, "element", "--type", "B3", "--word", "1 2 3 2")
    assert code == 0
    system = build_system("B3")
    w = system.element([0, 1, 2, 1])
    assert element_from_json(system, doc["result"]) == w
    assert doc["result"]["length"] == 4
    code, doc, _ = run(capsys, "lenT", "--type", "B2", "--word", "1 2 1 2")
    assert doc["result"]["reflection_length"] == 2


def test_redT_chi_closure(capsys):
    system = build_system("A2")
    code, doc, _ = run(capsys, "redT", "--type", "A2", "--word", "1 2")
    assert code == 0 and doc["result"]["count"] == 3
    facts = {factorization_from_json(system, f).entries for f in doc["result"]["factorizations"]}
    assert len(facts) == 3
    code, doc, _ = run(capsys, "chi", "--type", "A2", "--factorization", "1; 1 2 1")
    assert {tuple(t["word"]) for t in doc["result"]["chi"]} == {(1,), (2,)}
    code, doc, _ = run(capsys, "closure", "--type", "A3", "--word", "1 3")
    assert doc["result"]["rank"] == 2 and len(doc["result"]["reflections"]) == 2


def test_extend_normalize_classify(capsys):
    code, doc, _ = run(capsys, "extend", "--type", "A2", "--word", "1 2 1", "--factorization", "1 2 1")
    assert code == 0 and doc["result"]["q"] == [1, 1] and doc["result"]["replay_ok"]
    code, doc, _ = run(capsys, "normalize", "--type", "A2", "--start", "1", "--factorization", "1; 2")
    assert code == 0 and doc["result"]["valley"] == 1
    code, doc, _ = run(capsys, "normalize", "--type", "A2", "--factorization", "1; 1")
    assert doc["result"]["duplicate_pair_at"] == 1
    code, doc, _ = run(capsys, "classify", "--type", "D4", "--word", "2 3 1 2 4 3")
    r = doc["result"]
    assert r["is_quasi_coxeter"] and not r["is_coxeter"]
    code, doc, _ = run(capsys, "classify", "--type", "Bt2", "--word", "1 2")
    assert code == 0 and doc["result"]["is_proper_parabolic_quasi_coxeter"]


def test_affine_command(capsys):
    code, doc, _ = run(capsys, "affine", "--type", "Bt2")
    assert doc["result"]["highest_root"] == ["1", "1"]
    code, doc, _ = run(capsys, "affine", "--type", "Bt2", "--factorization", BT2_TUPLE)
    r = doc["result"]
    assert r["is_translation"] and not r["elliptic"] and r["reflection_length"] == 2
    assert r["element"]["lambda"] and r["length"] == 6
    W = build_affine("Bt2")
    f = factorization_from_json(W, r["factorization"])
    assert f.product.lam == tuple(r["element"]["lambda"])


def test_config_file_and_out(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# demo\ntype = A3\nseed = 11\ntheorem = main2\n")
    out = tmp_path / "out.json"
    code = main(["check", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["run"]["seed"] == 11 and doc["run"]["type"] == "A3"
    # flags override the file
    code, doc, _ = run(capsys, "group", "--config", str(cfg), "--type", "B2")
    assert doc["result"]["type"] == "B2"
    assert read_config(str(cfg)) == {"type": "A3", "seed": 11, "theorem": "main2"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    with pytest.raises(CoxeterError):
        read_config(str(bad))
    assert main(["group", "--config", str(bad)]) == 2
    capsys.readouterr()


def test_deterministic_output(capsys):
    _, a, _ = run(capsys, "check", "--theorem", "main1", "--type", "A2", "--seed", "5", "--samples", "20")
    _, b, _ = run(capsys, "check", "--theorem", "main1", "--type", "A2", "--seed", "5", "--samples", "20")
    assert a == b


def test_json_round_trips():
    for name in ["B3", "H3"]:
        system = load_system(name)
        from coxhurwitz.jsonio import reflection_to_json, element_to_json
        for t in system.reflections():
            assert reflection_from_json(system, reflection_to_json(t)) == t
        for w in system.elements()[::11]:
            assert element_from_json(system, element_to_json(w)) == w
    W = load_system("Bt2")
    from coxhurwitz.jsonio import reflection_to_json
    for t in W.reflections(2):
        assert reflection_from_json(W, reflection_to_json(t)) == t
    f = parse_factorization(W, BT2_TUPLE)
    assert len(f) == 4
    with pytest.raises(CoxeterError):
        parse_factorization(build_system("A2"), "1,-1:0")
    with pytest.raises(CoxeterError):
        reflection_from_json(build_system("A2"), [1, 2])


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "coxhurwitz", "lenT", "--type", "A2", "--word", "1 2 1"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["reflection_length"] == 1
