import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ROOT
from sym3.characters import character_to_literal, all_characters
from sym3.global_report import (
    DescriptorError,
    DescriptorGenerator,
    LocalEntry,
    NewformDescriptor,
    check_hypothesis_h,
    descriptor_from_json,
    global_sym3_conductor,
    global_twist_relation,
    parse_descriptor,
    partition_primes,
    sym3_report,
    twist_product,
)
from sym3.local import LocalFieldSpec
from sym3.sweeps import dihedral_data
from sym3.wd import DomainError, p_minimality

DESC = ROOT / "descriptors"


def lit(p, level, exps, kind=None):
    obj = {"level": level, "unit_exponents": exps}
    if kind is None:
        obj["field"] = {"p": p, "kind": "base"}
    return obj


def principal(p, n, exps, weight=2, extra=()):
    level = [{"p": p, "exp": n}] + [{"p": q, "exp": 1} for q in extra]
    return {
        "weight": weight,
        "level": level,
        "nebentypus": [{"p": p, "exp": n}],
        "minimal": True,
        "local": [{"p": p, "type": "principal", "omega": lit(p, n, exps)}] + [{"p": q, "type": "special"} for q in extra],
    }


def test_example_files():
    d = parse_descriptor(DESC / "n11_special.json")
    gc = global_sym3_conductor(d)
    assert gc.agrees and sorted(gc.per_prime.items()) == [(11, 3)]
    d = parse_descriptor(DESC / "s1_supercuspidal.json")
    gc = global_sym3_conductor(d)
    assert gc.agrees and gc.value == 5**2 * 7**3
    assert 5 in gc.partition.S1
    d = parse_descriptor(DESC / "squarefree_special.json")
    assert global_sym3_conductor(d).value == d.N**3


def test_partition_examples():
    d = descriptor_from_json(principal(5, 3, [[1, 100]], weight=3))
    part = partition_primes(d)
    assert part.P1 == (5,) or list(part.P1) == [5]
    d = descriptor_from_json(principal(3, 2, [[1, 3]], weight=2))
    assert list(partition_primes(d).P3) == [3]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_partition_is_total_and_disjoint(seed):
    d = DescriptorGenerator(seed).descriptor()
    part = partition_primes(d)
    P = set(part.P1) | set(part.P2) | set(part.P3)
    assert len(P) == len(part.P1) + len(part.P2) + len(part.P3)
    assert P | set(part.SP) | set(part.SC) == set(d.primes)
    assert not (set(part.S1) & set(part.S2))
    assert set(part.S1) | set(part.S2) <= set(part.SC)


def test_nebentypus_exceeding_level_names_the_prime():
    obj = principal(5, 1, [[1, 4]], extra=(7,))
    obj["nebentypus"].append({"p": 7, "exp": 2})
    with pytest.raises(DescriptorError) as info:
        descriptor_from_json(obj)
    assert any("7" in v.message and "nebentypus" in v.path for v in info.value.violations)


def test_special_with_character_rejected():
    obj = json.loads((DESC / "n11_special.json").read_text())
    obj["nebentypus"] = [{"p": 11, "exp": 1}]
    with pytest.raises(DescriptorError, match="special"):
        descriptor_from_json(obj)


def test_parity_gate():
    obj = json.loads((DESC / "s1_supercuspidal.json").read_text())
    obj["level"][0]["exp"] = 3
    with pytest.raises(DescriptorError) as info:
        descriptor_from_json(obj)
    assert any("parity" in v.message and v.path.endswith(".K") for v in info.value.violations)


def test_malformed_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{")
    with pytest.raises(DescriptorError, match="malformed"):
        parse_descriptor(f)


def test_round_trip():
    for f in DESC.glob("*.json"):
        d = parse_descriptor(f)
        again = descriptor_from_json(json.loads(json.dumps(d.to_json())))
        assert again == d
    gen = DescriptorGenerator(3)
    for _ in range(20):
        d = gen.descriptor()
        assert descriptor_from_json(d.to_json()) == d


def _sc_descriptor(kappa, weight=2):
    from sym3.wd import SupercuspidalDihedral

    sc = SupercuspidalDihedral(kappa, weight)
    p = kappa.p
    neb = ((p, sc.nebentypus_exponent),) if sc.nebentypus_exponent else ()
    return NewformDescriptor(weight, ((p, sc.level_exponent),), neb, True, (LocalEntry(p, "supercuspidal", kappa=kappa),))


def test_hypothesis_violations():
    assert check_hypothesis_h(parse_descriptor(DESC / "n11_special.json")) == []
    K = LocalFieldSpec(2, "ramified", -1)
    h2 = None
    for sc, _ in dihedral_data(K, 2):
        if sc.level_exponent == 4:
            h2 = sc.kappa
            break
    assert h2 is not None and K.delta == 2
    assert any("2 delta + 1" in v for v in check_hypothesis_h(_sc_descriptor(h2)))
    K = LocalFieldSpec(7, "unramified")
    h3 = next(sc.kappa for sc, _ in dihedral_data(K, 1) if sc.nebentypus_exponent == 1)
    d = _sc_descriptor(h3)
    assert any("N_7/2" in v for v in check_hypothesis_h(d))
    with pytest.raises(DomainError):
        global_sym3_conductor(d)


def test_special_twist_relation():
    d = parse_descriptor(DESC / "n11_special.json")
    rel = global_twist_relation(d, 11)
    assert rel.closed_match and rel.variance == "-11^{1}·a_11^3"
    assert rel.product.M_prime == 1 and rel.product.holds


def _p3_ramified(pred):
    for K in (LocalFieldSpec(3, "ramified", -3), LocalFieldSpec(3, "ramified", -6)):
        for sc, _ in dihedral_data(K, 4):
            if p_minimality(sc).minimal and pred(sc):
                return sc.kappa
    raise LookupError


def test_p3_ramified_relations():
    k = _p3_ramified(lambda sc: (sc.kappa**3).conductor() == 0)
    rel = global_twist_relation(_sc_descriptor(k), 3)
    assert rel.type_name == "III" and rel.verdict == "III"
    k = _p3_ramified(lambda sc: (sc.kappa**3).conductor() >= 2 and (sc.kappa**3).conductor() % 2 == 0)
    rel = global_twist_relation(_sc_descriptor(k), 3)
    assert rel.verdict == "I or II" and rel.verdict_consistent


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_twist_product_two_routes(seed):
    gen = DescriptorGenerator(seed)
    d = gen.descriptor()
    for p in d.primes:
        tp = twist_product(d, p)
        assert tp.by_symbols == tp.by_character
        assert tp.holds


def test_report_shape_and_golden_values():
    d = parse_descriptor(DESC / "s1_supercuspidal.json")
    rep = sym3_report(d).to_json()
    assert rep["global_conductor"]["factors"] == [[5, 2], [7, 3]]
    rec = {r["p"]: r for r in rep["per_prime"]}
    assert rec[5]["sets"] == ["SC", "S1"] and rec[5]["sym3_type"] == "III"
    assert {t["p"] for t in rep["twist_relations"]} == {5, 7}
