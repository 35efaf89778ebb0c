from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dirichlet_character_invariants
from sym3.characters import (
    AdditiveCharacter,
    LiteralError,
    MultiplicativeCharacter,
    all_characters,
    character_from_literal,
    character_to_literal,
    inflate_by_norm,
    norm_residue_character,
    sigma_conjugate,
)
from sym3.cyclotomic import FormalScalar
from sym3.local import EnumerationTooLarge, LocalFieldSpec, build_unit_group
from sym3.sweeps import dihedral_data, quadratic_extensions

Q = LocalFieldSpec


@pytest.mark.parametrize(
    "field,level,orders",
    [
        (Q(5), 1, (4,)),
        (Q(2), 3, (2, 2)),
        (Q(3, "unramified"), 1, (8,)),
        (Q(3, "unramified"), 2, (24, 3)),
        (Q(2), 5, (8, 2)),
        (Q(2, "unramified"), 4, (24, 4, 2)),
        (Q(7, "ramified", -7), 4, (294, 7)),
    ],
)
def test_unit_group_invariant_factors(field, level, orders):
    assert build_unit_group(field, level).orders == orders


def test_enumeration_cap_names_the_order():
    with pytest.raises(EnumerationTooLarge, match="order"):
        build_unit_group(Q(7), 4, cap=100)


def test_dyadic_level_three_representatives():
    g = build_unit_group(Q(2), 3)
    reps = sorted(int(g.ring.decode(i)[0]) for i in g.unit_indices())
    assert reps == [1, 3, 5, 7]


@pytest.mark.parametrize("p,t", [(3, 4), (5, 3), (7, 2), (2, 5)])
def test_conductor_distribution_matches_dirichlet_oracle(p, t):
    power = 2 if p == 2 else 3
    ours = {}
    for chi in all_characters(Q(p), t):
        key = (chi.conductor(), (chi**power).conductor(), chi.unit_order())
        ours[key] = ours.get(key, 0) + 1
    assert ours == dict(dirichlet_character_invariants(p, t, power))


def test_conductor_examples():
    assert MultiplicativeCharacter.trivial(Q(5), 3).conductor() == 0
    quad = MultiplicativeCharacter.from_exponents(Q(5), 1, [Fraction(1, 2)]).at_level(3)
    assert quad.conductor() == 1
    faithful = MultiplicativeCharacter.from_exponents(Q(3), 2, [Fraction(1, 6)])
    assert faithful.unit_order() == 6 and faithful.conductor() == 2
    cube = faithful**3
    assert cube.unit_order() == 2 and cube.conductor() == 1
    assert (faithful**0).is_unramified()
    assert (quad**2).is_unramified()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 400), st.integers(1, 3**4 - 1), st.integers(1, 3**4 - 1))
def test_character_is_multiplicative(k, x, y):
    if x % 3 == 0 or y % 3 == 0:
        return
    K = Q(3)
    chi = MultiplicativeCharacter.from_exponents(K, 4, [Fraction(k % 54, 54)])
    assert chi(K.elt(x * y)) == chi(K.elt(x)) * chi(K.elt(y))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 23), st.integers(0, 2), st.integers(0, 10))
def test_power_never_raises_conductor(a, b, k):
    chi = MultiplicativeCharacter.from_exponents(Q(3, "unramified"), 2, [Fraction(a, 24), Fraction(b, 3)])
    assert (chi**k).conductor() <= chi.conductor()


def test_inflation_of_tame_quadratic():
    p = 5
    quad = MultiplicativeCharacter.from_exponents(Q(p), 1, [Fraction(1, 2)])
    assert inflate_by_norm(quad, Q(p, "unramified")).conductor() == 1
    assert inflate_by_norm(quad, Q(p, "ramified", -p)).conductor() == 0
    assert inflate_by_norm(MultiplicativeCharacter.trivial(Q(p)), Q(p, "unramified")).is_unramified()


def test_frobenius_acts_by_cubing_on_f9():
    K = Q(3, "unramified")
    kappa = MultiplicativeCharacter.from_exponents(K, 1, [Fraction(1, 8)])
    assert sigma_conjugate(kappa).same_on_units(kappa**3)


@pytest.mark.parametrize("K", [Q(3, "unramified"), Q(5, "ramified", -5), Q(2, "unramified"), Q(2, "ramified", 3)])
def test_sigma_is_an_involution(K):
    for kappa in all_characters(K, 2):
        assert sigma_conjugate(sigma_conjugate(kappa)) == kappa


@pytest.mark.parametrize("p", [3, 5, 7])
def test_central_relation_on_dihedral_data(p):
    for K in quadratic_extensions(p):
        for sc, _ in dihedral_data(K, 2):
            eps = sc.epsilon_prime()
            w = inflate_by_norm(sc.determinant() / norm_residue_character(K), K, level=eps.level)
            assert eps.same_on_units(w)


def test_additive_character_values():
    phi = AdditiveCharacter(Q(2), Fraction(1, 4))
    assert phi(1) == Fraction(1, 4) and phi(3) == Fraction(3, 4)
    assert AdditiveCharacter(Q(5), 1)(7) == 0
    K = Q(2, "unramified")
    assert AdditiveCharacter(K, Fraction(1, 2))(K.elt(0, 1)) == Fraction(1, 2)


def test_character_literal_round_trip():
    obj = {"field": {"p": 3, "kind": "unramified"}, "level": 2, "unit_exponents": [[1, 8], [0, 1]]}
    chi = character_from_literal(obj)
    assert chi.unit_order() == 8
    assert character_from_literal(character_to_literal(chi)) == chi


def test_character_literal_errors_name_the_path():
    with pytest.raises(LiteralError, match=r"character.unit_exponents"):
        character_from_literal({"field": {"p": 5}, "level": 1, "unit_exponents": [[1, 3]]})
    with pytest.raises(LiteralError, match=r"character.level"):
        character_from_literal({"field": {"p": 5}, "level": 0, "unit_exponents": []})


def test_unramified_value_at_uniformizer():
    K = Q(7)
    chi = MultiplicativeCharacter.unramified(K, FormalScalar.root(Fraction(1, 3), 7))
    assert chi(K.elt(49)) == FormalScalar.root(Fraction(2, 3), 7)
