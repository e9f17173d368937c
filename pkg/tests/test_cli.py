import io
import json
import os
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hdqva.cli import run
from hdqva.cli.app import UsageError, env_defaults
from hdqva.cli.grammar import StateSyntaxError, format_state, parse_state
from hdqva.hopf import VElem, VMono, d_action, multiply

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "bichar_eval_hh": ["bichar", "eval", "--a", "h", "--b", "h", "--t-order", "2"],
    "bichar_eval_e1_em1": ["bichar", "eval", "--a", "E(1)", "--b", "E(-1)", "--t-order", "2"],
    "bichar_braiding_h_e1": ["bichar", "braiding", "--a", "h", "--b", "E(1)", "--t-order", "2"],
    "bichar_translation_hh": ["bichar", "translation", "--a", "h", "--b", "h", "--t-order", "2"],
    "bichar_lattice_e1_e1": ["bichar", "eval", "--a", "E(1)", "--b", "E(1)", "--bichar", "lattice"],
    "vx_nprod_m1": ["vx", "nprod", "--a", "E(1)", "--n", "-1", "--b", "E(-1)"],
    "vx_nprod_m2": ["vx", "nprod", "--a", "E(1)", "--n", "-2", "--b", "E(-1)", "--t-order", "2"],
    "vx_nprod_0": ["vx", "nprod", "--a", "E(1)", "--n", "0", "--b", "E(-1)"],
    "vx_y_hh": ["vx", "y", "--a", "h", "--b", "h", "--t-order", "2", "--weight-cap", "3"],
    "vx_x2_e1_em1": ["vx", "x2", "--a", "E(1)", "--b", "E(-1)", "--t-order", "1", "--weight-cap", "2"],
    "vx_scomm_hh": ["vx", "scomm", "--a", "h", "--b", "h"],
    "vx_scomm_e1_em1": ["vx", "scomm", "--a", "E(1)", "--b", "E(-1)", "--t-order", "2"],
    "vx_locality_hh": ["vx", "locality", "--a", "h", "--b", "h"],
    "hl_q_2": ["hl", "q", "--partition", "2"],
    "hl_q_31_m": ["hl", "q", "--partition", "3,1", "--basis", "m"],
    "hl_table_2": ["hl", "table", "--max-weight", "2"],
    "hl_jing_21": ["hl", "jing", "--mtilde", "2,1", "--report"],
    "braid_words_201": ["braid", "words", "--perm", "2,0,1"],
    "verify_list": ["verify", "--list"],
}


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("QVA_DEFAULT_SPEC", raising=False)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = call(CASES[name])
    assert code == 0, err
    path = GOLDEN / (name + ".txt")
    if os.environ.get("QVA_UPDATE_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_documented_examples():
    assert call(CASES["vx_nprod_m1"])[1] == "h\n"
    assert call(CASES["bichar_eval_hh"])[1] == "1/(z1-z2)^2 - t/z1^2 - 2*t^2*z2/z1^3 + O(t^3)\n"
    assert call(["verify", "--axiom", "yang_baxter", "--weight-cap", "2"])[0] == 0


def test_deterministic():
    argv = ["vx", "scomm", "--a", "E(1)", "--b", "E(-1)", "--json"]
    assert call(argv) == call(argv)


def test_json_schema():
    code, out, _ = call(["vx", "scomm", "--a", "h", "--b", "E(2)", "--json"])
    obj = json.loads(out)
    assert code == 0
    assert obj["schema"] == 1 and obj["command"] == "vx scomm" and obj["bichar"] == "jing"
    assert obj["spec"] == {"t_order": 3, "z_window": 4, "weight_cap": 5}
    assert [d["derivative_order"] for d in obj["terms"]] == [0]
    assert obj["terms"][0]["coefficient_by_basis_monomial"] == {"E(2)": "2 + O(t^4)"}


def test_verify_json_and_failure_exit(monkeypatch):
    code, out, _ = call(["verify", "--axiom", "vacuum", "--weight-cap", "2", "--json"])
    rep = json.loads(out)["reports"]
    assert code == 0 and rep[0]["name"] == "vacuum" and rep[0]["ok"] and rep[0]["witness"] is None

    import hdqva.verify as verify
    real = verify.verify_axiom

    def broken(name, **kw):
        r = real(name, **kw)
        r.ok, r.witness = False, ("forced",)
        return r
    monkeypatch.setattr(verify, "verify_axiom", broken)
    code, out, _ = call(["verify", "--axiom", "vacuum", "--weight-cap", "1"])
    assert code == 1 and out.startswith("FAIL vacuum") and "forced" in out


@pytest.mark.parametrize("argv", [
    ["vx", "nprod", "--a", "E(1", "--n", "0", "--b", "h"],
    ["vx", "nprod", "--a", "h", "--b", "h"],
    ["verify", "--axiom", "nonsense"],
    ["verify", "--property", "nonsense"],
    ["hl", "jing", "--mtilde", "1,1"],
    ["hl", "q", "--partition", "x"],
    ["braid", "words", "--perm", "0,0"],
    ["bichar", "eval", "--a", "h", "--b", "h", "--t-order", "-1"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    code, out, err = call(argv)
    assert code == 2 and out == ""
    assert err


def test_computation_errors_are_surfaced():
    code, out, err = call(["vx", "scomm", "--a", "h", "--b", "h", "--bichar", "1/(z1+z2)"])
    assert code == 3 and "BadPoleStructure" in err
    code, _, err = call(["vx", "x2", "--a", "E(1)", "--b", "E(1)", "--bichar", "(z1-z2)/z2"])
    assert code == 3 and "VOViolation" in err


def test_env_defaults(monkeypatch):
    assert env_defaults({}) == {"t_order": 3, "z_window": 4, "weight_cap": 5}
    assert env_defaults({"QVA_DEFAULT_SPEC": "2,3"}) == {"t_order": 2, "z_window": 3, "weight_cap": 5}
    assert env_defaults({"QVA_DEFAULT_SPEC": "weight-cap=7"})["weight_cap"] == 7
    for bad in ("foo", "1,2,3,4", "depth=2"):
        with pytest.raises(UsageError):
            env_defaults({"QVA_DEFAULT_SPEC": bad})
    monkeypatch.setenv("QVA_DEFAULT_SPEC", "2,3,4")
    obj = json.loads(call(["vx", "nprod", "--a", "E(1)", "--n", "-1", "--b", "E(-1)", "--json"])[1])
    assert obj["spec"] == {"t_order": 2, "z_window": 3, "weight_cap": 4}
    obj = json.loads(call(["vx", "nprod", "--a", "h", "--n", "-1", "--b", "1", "--t-order", "1", "--json"])[1])
    assert obj["spec"]["t_order"] == 1
    monkeypatch.setenv("QVA_DEFAULT_SPEC", "oops")
    assert call(["verify", "--list"])[0] == 2


# -- grammar ---------------------------------------------------------------------------
def test_parse_examples():
    h = VElem.mono(VMono(0, (1,)))
    assert parse_state("h") == h
    assert parse_state("D E(1)") == d_action(VElem.e(1), 1)
    assert parse_state("D^2 h") == d_action(h, 2)
    assert parse_state("h^2 - 1/2 g1") == multiply(h, h) - VElem.mono(VMono(0, (0, 1))).scale(0.5)
    assert parse_state("2 h E(-1)") == VElem.mono(VMono(-1, (1,))).scale(2)
    assert parse_state("(h + 1)*(h - 1)") == multiply(h, h) - VElem.one()
    assert format_state(parse_state("3/2 g2 h + E(2)")) == "E(2) + 3/2*h g2"


@pytest.mark.parametrize("text", ["", "E(", "h +", "1/0", "x", "E(1))", "h^", "g"])
def test_parse_errors(text):
    with pytest.raises(StateSyntaxError):
        parse_state(text)


monomial = st.builds(lambda m, g: VMono(m, tuple(g)), st.integers(-3, 3),
                     st.lists(st.integers(0, 2), max_size=3).map(lambda g: g[:len(g) - next((i for i, x in enumerate(reversed(g)) if x), len(g))]))
state = st.lists(st.tuples(monomial, st.fractions(max_denominator=6).filter(bool)), max_size=4).map(
    lambda items: sum((VElem.mono(m).scale(c) for m, c in items), VElem()))


@given(state)
def test_format_parse_round_trip(v):
    assert parse_state(format_state(v)) == v
