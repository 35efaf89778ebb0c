from fractions import Fraction

import pytest

from oracles import gauss_sums
from sym3.cyclotomic import CyclotomicNumber
from sym3.gauss import (
    FiniteFieldCharacterPair,
    characters_of_order,
    davenport_hasse_defect,
    finite_field_character,
    gauss_sum,
    lift_pair,
    stickelberger_value,
)


def G(p, r, e):
    return gauss_sum(FiniteFieldCharacterPair(finite_field_character(p, r, Fraction(e))))


def rounded(xs):
    return sorted((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0) for z in xs)


@pytest.mark.parametrize("p,r", [(2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)])
def test_gauss_sums_match_float_oracle_as_a_multiset(p, r):
    q1 = p**r - 1
    ours = [G(p, r, Fraction(k, q1)).embed_complex() for k in range(q1)]
    assert rounded(ours) == rounded(gauss_sums(p, r))


def test_examples():
    assert G(7, 1, 0) == CyclotomicNumber.rational(-1)
    g5 = G(5, 1, Fraction(1, 2))
    assert g5.abs_square() == CyclotomicNumber.rational(5)
    assert abs(g5.embed_complex() - 5**0.5) < 1e-9
    assert abs(G(3, 1, Fraction(1, 2)).embed_complex() - 1j * 3**0.5) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_conjugation_identity(p):
    for k in range(1, p - 1):
        chi = finite_field_character(p, 1, Fraction(k, p - 1))
        g = gauss_sum(FiniteFieldCharacterPair(chi))
        gbar = gauss_sum(FiniteFieldCharacterPair(chi.inverse()))
        sign = chi(-1).coefficient
        assert gbar == sign * g.conjugate()


def test_lifts():
    quad3 = finite_field_character(3, 1, Fraction(1, 2))
    lifted = lift_pair(FiniteFieldCharacterPair(quad3)).chi
    assert lifted.unit_order() == 2
    o4 = finite_field_character(5, 1, Fraction(1, 4))
    assert lift_pair(FiniteFieldCharacterPair(o4)).chi.unit_order() == 4
    triv = finite_field_character(5, 1, 0)
    assert lift_pair(FiniteFieldCharacterPair(triv)).chi.is_unramified()


def test_davenport_hasse_examples():
    pair = FiniteFieldCharacterPair(finite_field_character(3, 1, Fraction(1, 2)))
    assert gauss_sum(lift_pair(pair)) == CyclotomicNumber.rational(3)
    assert davenport_hasse_defect(pair).is_zero()
    assert davenport_hasse_defect(FiniteFieldCharacterPair(finite_field_character(5, 1, Fraction(1, 4)))).is_zero()
    with pytest.raises(ValueError):
        davenport_hasse_defect(FiniteFieldCharacterPair(finite_field_character(5, 1, 0)))


def test_stickelberger_examples():
    assert stickelberger_value(5, 3).value == 5
    assert stickelberger_value(5, 6).value == -5
    assert not stickelberger_value(7, 3).applicable
    for chi in characters_of_order(5, 2, 3):
        assert gauss_sum(FiniteFieldCharacterPair(chi)) == CyclotomicNumber.rational(5)
