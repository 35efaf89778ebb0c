import json

import pytest

from conftest import ROOT
from sym3 import verify
from sym3.cli import flatten, main, render_table
from sym3.verify import Check

DESC = ROOT / "descriptors"
CHARS = DESC / "characters"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["n11_special.json", "s1_supercuspidal.json", "squarefree_special.json"])
def test_goldens(capsys, name):
    code, out, _ = run(capsys, "conductor", "--input", str(DESC / name), "--format", "json")
    assert code == 0
    assert out == (ROOT / "tests" / "golden" / name).read_text()


def test_table_carries_the_json_leaves(capsys):
    f = str(DESC / "s1_supercuspidal.json")
    _, js, _ = run(capsys, "conductor", "--input", f, "--format", "json")
    _, tab, _ = run(capsys, "conductor", "--input", f, "--format", "table")
    assert tab == render_table(json.loads(js))
    rows = [line.split(None, 1) for line in tab.splitlines()]
    assert [(k, v.strip()) for k, v in rows] == flatten(json.loads(js))


def test_usage_errors(capsys):
    assert run(capsys, "conductor", "--input", str(ROOT / "missing.json"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    f = str(DESC / "n11_special.json")
    assert run(capsys, "epsilon", "--input", f, "--prime", "11", "--char", str(CHARS / "q3_level3.json"))[0] == 2
    assert run(capsys, "epsilon", "--input", f)[0] == 2


def test_domain_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "conductor", "--input", str(bad))[0] == 1
    assert run(capsys, "classify", "--input", str(DESC / "n11_special.json"), "--prime", "13")[0] == 1
    bad.write_text(json.dumps({"weight": 2, "level": [{"p": 4, "exp": 1}], "nebentypus": [], "minimal": True, "local": []}))
    code, _, err = run(capsys, "conductor", "--input", str(bad))
    assert code == 1 and "$.level" in err


def test_verify_exit_codes(capsys, monkeypatch):
    monkeypatch.setitem(verify.SUITES, "gross-koblitz", lambda cfg: [Check("always fails", False, 1, ["x"])])
    code, out, err = run(capsys, "verify", "--suite", "gross-koblitz", "--seed", "4")
    assert code == 3 and "FAIL" in out and "seed 4" in err
    monkeypatch.setitem(verify.SUITES, "gross-koblitz", lambda cfg: [Check("always holds", True, 1)])
    code, out, _ = run(capsys, "verify", "--suite", "gross-koblitz", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_is_deterministic(capsys):
    argv = ("verify", "--suite", "epsilon-props", "--seed", "11", "--format", "json")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert json.loads(first[1])["seed"] == 11


def test_classify_and_epsilon(capsys):
    f = str(DESC / "s1_supercuspidal.json")
    code, out, _ = run(capsys, "classify", "--input", f, "--prime", "5")
    rec = json.loads(out)
    assert code == 0 and rec["sym3_type"] == "III" and "kappa_cubed_conductor" in rec
    code, out, _ = run(capsys, "epsilon", "--input", str(DESC / "n11_special.json"), "--prime", "11")
    rec = json.loads(out)
    assert code == 0 and rec["closed_match"] is True


def test_char_commands(capsys):
    code, out, _ = run(capsys, "char", "--op", "cube-conductor", "--char", str(CHARS / "q3_level3.json"))
    rec = json.loads(out)
    assert code == 0 and rec["conductor"] == 3 and rec["cube_conductor"] == rec["predicted"] == 2
    code, out, _ = run(capsys, "char", "--op", "square-conductor", "--char", str(CHARS / "q2_conductor3.json"))
    rec = json.loads(out)
    assert rec["square_conductor"] == rec["predicted"] == 0
    code, out, _ = run(capsys, "epsilon", "--char", str(CHARS / "q2_conductor3.json"), "--phi-scale", "1")
    rec = json.loads(out)
    assert code == 0 and rec["conductor"] == 3 and rec["epsilon"] == "1"
