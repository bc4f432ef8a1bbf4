import copy
import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from wquot.cli import main
from wquot.fixtures import contains_ab_dwa, shifted_length_wa, tropical_pair
from wquot.io import DocumentError, export_dot, parse_document, to_document
from wquot.semiring import chain
from wquot.series import words_upto
from wquot.universal import universal_automaton
from wquot.wcfg import wcfg_eval
from strategies import dwas, polys, semirings, was

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def doc(name):
    return json.loads((DATA / name).read_text())


@given(semirings, st.data())
@settings(max_examples=100)
def test_round_trip(S, data):
    X = data.draw(st.one_of(dwas(S), was(S), polys(S)))
    Y = parse_document(json.loads(json.dumps(to_document(X)))).payload
    for w in words_upto("ab", 4):
        assert X.eval(w) == Y.eval(w)


def test_grammar_round_trip():
    d = parse_document(doc("balanced.json"))
    G = parse_document(to_document(d.payload)).payload
    assert d.kind == "grammar" and wcfg_eval(G, "aabb") == 1
    assert d.metadata["description"]


def test_violations_name_paths():
    d = doc("contains_ab.json")
    d["dwa"]["delta"][1] = [1]
    d["dwa"]["final"][0] = -4
    with pytest.raises(DocumentError) as e:
        parse_document(d)
    paths = {p for p, _ in e.value.violations}
    assert "$.dwa.delta[1]" in paths and "$.dwa.final[0]" in paths
    assert any("delta not total" in m for _, m in e.value.violations)
    with pytest.raises(DocumentError):
        parse_document({"semiring": {"kind": "boolean"}})
    with pytest.raises(DocumentError):
        parse_document({"dwa": d["dwa"]})
    with pytest.raises(DocumentError):
        parse_document([])


def test_eval_command(capsys):
    code, out, _ = run(capsys, "eval", DATA / "contains_ab.json", "--word", "bab", "--word", "")
    assert code == 0 and json.loads(out) == {"bab": 2, "": 1}
    code, out, _ = run(capsys, "eval", DATA / "balanced.json", "--word", "aabb")
    assert code == 0 and json.loads(out) == {"aabb": 1}


def test_quotient_and_residual_commands(capsys):
    base, div = DATA / "tropical_base.json", DATA / "tropical_divisor.json"
    code, out, _ = run(capsys, "quotient", base, "--by", f"series:{div}", "--window", "1")
    assert code == 0 and json.loads(out)["a"] == 2 and json.loads(out)["b"] == 2
    code, out, _ = run(capsys, "residual", base, "--by", f"series:{div}")
    assert code == 0 and json.loads(out)["a"] == 6 and json.loads(out)["b"] == 0
    code, out, _ = run(capsys, "quotient", DATA / "contains_ab.json", "--by", "word:ab")
    assert code == 0 and parse_document(json.loads(out)).payload.eval(()) == 2
    code, out, _ = run(capsys, "residual", base, "--by", f"series:{div}", "--emit", "automaton")
    assert code == 0 and parse_document(json.loads(out)).kind == "dwa"


def test_structure_commands(capsys):
    A = DATA / "contains_ab_chain2.json"
    code, out, _ = run(capsys, "universal", A)
    res = json.loads(out)
    assert code == 0 and len(res["classes"]) == 3
    assert sorted(c["J"] for c in res["classes"]) == [1, 1, 2]
    code, out, _ = run(capsys, "factorize", A, "--window", "2")
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run(capsys, "morphism", A, A)
    assert code == 0 and json.loads(out)["injective"]
    code, out, _ = run(capsys, "mergible", A, "0", "1", "--universal")
    assert code == 0 and json.loads(out)["mergible"] is False
    code, out, _ = run(capsys, "include", A, A)
    assert code == 0 and json.loads(out) == 2
    code, out, _ = run(capsys, "minimize", A)
    assert code == 0 and json.loads(out)["dwa"]["states"] == 3


def test_wcfg_commands(capsys):
    code, out, _ = run(capsys, "wcfg-quotient", DATA / "balanced.json", DATA / "single_b.json")
    assert code == 0
    Q = parse_document(json.loads(out)).payload
    assert wcfg_eval(Q, "aab") == 1 and wcfg_eval(Q, "ab") == 0
    code, out, _ = run(capsys, "wcfg-eval", DATA / "balanced.json", "--word", "ab")
    assert code == 0 and json.loads(out) == 1


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "determinize", DATA / "shifted_length.json", "--bound", "50")
    assert code == 3 and "BoundExceeded" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "eval", bad)[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "quotient", DATA / "contains_ab.json", "--by", "oops")[0] == 2
    assert run(capsys, "eval", DATA / "contains_ab.json", "--word", "abc")[0] == 2
    assert run(capsys, "mergible", DATA / "contains_ab.json", "0", "9")[0] == 2
    mixed = run(capsys, "include", DATA / "contains_ab.json", DATA / "contains_ab_chain2.json")
    assert mixed[0] == 2


def corruptions():
    """Edits that each make a valid DWA document invalid."""
    return st.sampled_from([
        ("dwa", "delta", lambda d: d[:-1]),
        ("dwa", "delta", lambda d: [r + [0] for r in d]),
        ("dwa", "delta", lambda d: [[9, 0]] + d[1:]),
        ("dwa", "final", lambda f: f[:-1]),
        ("dwa", "final", lambda f: ["x"] + f[1:]),
        ("dwa", "final", lambda f: [-1] + f[1:]),
        ("dwa", "initial", lambda i: 7),
        ("dwa", "alphabet", lambda a: ["a", "a"]),
        ("dwa", "states", lambda n: "three"),
        ("semiring", "kind", lambda k: "nope"),
    ])


@given(corruptions(), st.integers(0, 3))
@settings(max_examples=60, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_fuzzed_documents_never_succeed(capsys, tmp_path, edit, drop):
    d = copy.deepcopy(doc("contains_ab.json"))
    top, key, f = edit
    d[top][key] = f(d[top][key])
    if drop == 3:
        del d["semiring"]
    path = tmp_path / "fuzz.json"
    path.write_text(json.dumps(d))
    for cmd in (["eval", path], ["minimize", path], ["universal", path]):
        code, out, err = run(capsys, *cmd)
        assert code == 2 and err.startswith("error:")


@given(st.recursive(st.none() | st.booleans() | st.integers() | st.text(max_size=3),
                    lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=6), c, max_size=3),
                    max_leaves=10))
@settings(max_examples=100, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_random_json_is_rejected(capsys, tmp_path, junk):
    path = tmp_path / "junk.json"
    path.write_text(json.dumps(junk))
    assert run(capsys, "eval", path)[0] == 2


@pytest.mark.parametrize("name,build", [
    ("contains_ab", lambda: export_dot(contains_ab_dwa())),
    ("shifted_length", lambda: export_dot(shifted_length_wa())),
    ("universal_chain2", lambda: export_dot(universal_automaton(contains_ab_dwa(chain(2)), audit=False), "U")),
])
def test_dot_golden(name, build):
    assert build() == (GOLDEN / f"{name}.dot").read_text()


def test_dot_command_matches_golden(capsys):
    code, out, _ = run(capsys, "dot", DATA / "contains_ab.json")
    assert code == 0 and out == (GOLDEN / "contains_ab.dot").read_text()
    code, out, _ = run(capsys, "universal", DATA / "contains_ab_chain2.json", "--dot")
    assert code == 0 and out == (GOLDEN / "universal_chain2.dot").read_text()


def test_data_files_match_fixtures():
    A = parse_document(doc("contains_ab.json")).payload
    assert A.delta == contains_ab_dwa().delta and A.final == contains_ab_dwa().final
    base, div = tropical_pair()
    assert parse_document(doc("tropical_base.json")).payload.terms == base.terms
    assert parse_document(doc("tropical_divisor.json")).payload.terms == div.terms
