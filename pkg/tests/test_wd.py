from fractions import Fraction

import pytest

from sym3.characters import MultiplicativeCharacter, all_characters
from sym3.cyclotomic import FormalScalar
from sym3.local import LocalFieldSpec
from sym3.sweeps import dihedral_data, quadratic_extensions
from sym3.wd import (
    DomainError,
    PrincipalSeries,
    Special,
    SupercuspidalDihedral,
    classify_type,
    local_sym3_conductor,
    p_minimality,
    sym3_parameter,
    twist_for_prime,
    type_possibility,
    unramified_twist_epsilon_q,
)
from sym3.variance import variance_epsilon
from oracles import legendre

Q = LocalFieldSpec


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
@pytest.mark.parametrize("k", [2, 3, 4, 12])
def test_special_conductor_is_three(p, k):
    r = local_sym3_conductor(Special(p, k))
    assert r.machinery == 3 == r.closed_form


def test_special_parameter_bookkeeping():
    par = sym3_parameter(Special(5, 2))
    assert par.dimension == 4 and par.nilpotent_rank == 3
    assert par.inertia_invariants() == 4 and par.inertia_kernel_invariants() == 1
    mu = MultiplicativeCharacter.from_exponents(Q(5), 1, [Fraction(1, 4)])
    par = sym3_parameter(Special(5, 2, mu))
    assert par.inertia_invariants() == 0 and par.inertia_kernel_invariants() == 0


def test_principal_examples():
    K = Q(5)
    w = next(c for c in all_characters(K, 2) if c.conductor() == 2)
    r = local_sym3_conductor(PrincipalSeries(w))
    assert r.machinery == 6 == r.closed_form
    with pytest.raises(DomainError):
        PrincipalSeries(MultiplicativeCharacter.trivial(K))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_parameter_dimension_and_determinant(p):
    for w in list(all_characters(Q(p), 2))[1:6]:
        lp = PrincipalSeries(w, 3)
        par = sym3_parameter(lp)
        assert par.dimension == 4
        assert par.determinant() == lp.determinant() ** 6
    for K in quadratic_extensions(p):
        for sc, _ in list(dihedral_data(K, 2))[:4]:
            par = sym3_parameter(sc)
            assert par.dimension == 4
            assert par.determinant().same_on_units(sc.determinant() ** 6)


def test_type_iii_example_and_descent_pair():
    K = Q(5, "unramified")
    kappa = MultiplicativeCharacter.from_exponents(K, 1, [Fraction(1, 3)])
    sc = SupercuspidalDihedral(kappa)
    tc = classify_type(sc)
    assert tc.name == "III" and len(tc.phis) == 2
    from sym3.characters import norm_residue_character

    a, b = tc.phis
    assert a * norm_residue_character(K) == b or b * norm_residue_character(K) == a
    r = local_sym3_conductor(sc)
    assert r.machinery == 2 == r.closed_form


@pytest.mark.parametrize("p", [5, 7])
def test_no_type_iii_for_minimal_ramified_large_p(p):
    for K in quadratic_extensions(p)[1:]:
        for sc, _ in dihedral_data(K, 4):
            if p_minimality(sc).minimal:
                assert classify_type(sc).name != "III"
                if sc.nebentypus_exponent <= 1:
                    assert classify_type(sc).name == "II"


def test_type_table_examples():
    assert not type_possibility(5, "unramified", 1, 4, "I").possible
    assert not type_possibility(7, "ramified", 0, 3, "III").possible
    assert type_possibility(5, "ramified", 2, 5, "II").possible


def test_unramified_twist_epsilon_q():
    assert unramified_twist_epsilon_q(3, 7, 0) == 1
    assert unramified_twist_epsilon_q(2, 5, 3) == -1
    for q in (3, 7, 11, 13):
        for p in (5, 7, 11):
            if q != p:
                assert unramified_twist_epsilon_q(q, p, 1) == legendre(q, p)


def test_twist_character_is_quadratic():
    for p in (3, 5, 7):
        chi = twist_for_prime(p)
        assert chi.conductor() == 1 and (chi**2).is_unramified()


def test_variance_special_value():
    for p, k in ((5, 2), (7, 4), (3, 3)):
        r = variance_epsilon(Special(p, k))
        want = FormalScalar.make(-1, p, Fraction(8 - 3 * k, 2), 3)
        assert r.compared == want
    r = variance_epsilon(Special(2, 2))
    assert r.matches


def test_variance_principal_order_two():
    w = MultiplicativeCharacter.from_exponents(Q(7), 1, [Fraction(1, 2)])
    assert variance_epsilon(PrincipalSeries(w, 2)).matches
