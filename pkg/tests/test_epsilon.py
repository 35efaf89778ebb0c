import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sym3.characters import AdditiveCharacter, MultiplicativeCharacter, all_characters
from sym3.cyclotomic import CyclotomicNumber, FormalScalar, sqrt_prime, zeta
from sym3.epsilon import (
    EpsilonInput,
    deligne_twist,
    epsilon,
    epsilon_factor,
    epsilon_ratio,
    local_tau,
    solve_additive_parameter,
)
from sym3.local import LocalFieldSpec

Q = LocalFieldSpec


def tau_oracle(p: int, t: int, chi_angle_of, phi_scale: Fraction, c: int) -> complex:
    """sum over x in (Z/p^t)^x of chi^{-1}(x) e^{2 pi i {scale x / c}_p}, floats only."""
    total = 0
    for x in range(1, p**t):
        if x % p == 0:
            continue
        frac = Fraction(x) * phi_scale / c
        # fractional part in Q_p: the p-power denominator part
        den = frac.denominator
        pp = 1
        while den % p == 0:
            den //= p
            pp *= p
        num = frac.numerator * pow(den, -1, pp) % pp if pp > 1 else 0
        total += cmath.exp(-2j * cmath.pi * chi_angle_of(x)) * cmath.exp(2j * cmath.pi * num / pp)
    return total


@pytest.mark.parametrize("p,t", [(3, 3), (5, 2), (7, 2)])
def test_tau_matches_float_oracle(p, t):
    K = Q(p)
    phi = AdditiveCharacter.standard(K)
    for chi in all_characters(K, t):
        a = chi.conductor()
        if a == 0:
            continue
        chi = chi.at_level(a)
        ours = local_tau(EpsilonInput(chi, phi)).embed_complex()
        c = p ** (a - 1)
        want = tau_oracle(p, a, lambda x: chi.unit_angle(K.elt(x)), phi.scale, c)
        assert abs(ours - want) < 1e-8


def test_unramified_epsilon_is_inverse_value_at_p():
    K = Q(5)
    phi = AdditiveCharacter.standard(K)
    v = FormalScalar.root(Fraction(1, 3), 5)
    chi = MultiplicativeCharacter.unramified(K, v)
    assert epsilon(chi, phi) == v.inverse()


@pytest.mark.parametrize("p,want", [(5, CyclotomicNumber.one()), (7, zeta(1, 4)), (13, CyclotomicNumber.one()), (11, zeta(1, 4))])
def test_tame_quadratic_values(p, want):
    alpha = MultiplicativeCharacter.from_exponents(Q(p), 1, [Fraction(1, 2)])
    assert epsilon(alpha, AdditiveCharacter.standard(Q(p))) == FormalScalar.make(want, p)


def test_dyadic_tau_vectors():
    Q2 = Q(2)
    phi2 = AdditiveCharacter(Q2, 1)
    (a2,) = [c for c in all_characters(Q2, 2) if c.conductor() == 2]
    assert local_tau(EpsilonInput(a2, phi2)) == CyclotomicNumber.rational(2) * zeta(1, 4)
    taus = {}
    for c in all_characters(Q2, 3):
        if c.conductor() == 3:
            kernel = "chi_2" if c(Q2.elt(7)) == FormalScalar.one(2) else "chi_-2"
            taus[kernel] = local_tau(EpsilonInput(c, phi2))
    two_root2 = CyclotomicNumber.rational(2) * sqrt_prime(2)
    assert taus["chi_2"] == two_root2
    # derived by hand: zeta + zeta^3 - zeta^5 - zeta^7 for zeta = e^{2 pi i/8}
    assert taus["chi_-2"] == two_root2 * zeta(1, 4)
    K = Q(2, "unramified")
    for k in all_characters(K, 1):
        if k.conductor() == 1:
            assert local_tau(EpsilonInput(k, AdditiveCharacter(K, 1))) == CyclotomicNumber.rational(2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 10**6), st.integers(1, 10**4))
def test_unit_independence(p, k, u):
    if u % p == 0:
        return
    K = Q(p)
    chis = list(all_characters(K, 2))
    chi = chis[k % len(chis)]
    phi = AdditiveCharacter.standard(K)
    e = chi.conductor() + phi.conductor()
    c = K.mul(K.power(K.uniformizer, e), K.elt(u))
    assert epsilon(chi, phi, c) == epsilon(chi, phi)


def test_wrong_valuation_rejected():
    K = Q(5)
    chi = MultiplicativeCharacter.from_exponents(K, 1, [Fraction(1, 4)])
    with pytest.raises(ValueError):
        epsilon(chi, AdditiveCharacter.standard(K), K.elt(5))


def test_additive_parameter_p5():
    K = Q(5)
    phi = AdditiveCharacter.standard(K)
    for chi in all_characters(K, 2):
        if chi.conductor() != 2:
            continue
        c = solve_additive_parameter(chi, phi)
        assert K.valuation(c) == -(2 + phi.conductor())
        for x in range(5, 25, 5):
            assert chi.unit_angle(K.elt(1 + x)) == phi(K.mul(c, K.elt(x)))


def test_additive_parameter_is_stable_under_larger_r():
    K = Q(7)
    phi = AdditiveCharacter.standard(K)
    for chi in list(all_characters(K, 4))[::37]:
        a = chi.conductor()
        if a < 2:
            continue
        r = (a + 1) // 2
        c1 = solve_additive_parameter(chi, phi, r)
        for r2 in range(r + 1, a):
            c2 = solve_additive_parameter(chi, phi, r2)
            # c is pinned down modulo 1 + p^{a - r}
            diff = K.add(K.mul(c1, K.inverse(c2)), K.elt(-1))
            assert diff == K.elt(0) or K.valuation(diff) >= a - r2


def test_additive_parameter_unramified():
    K = Q(5)
    phi = AdditiveCharacter.standard(K)
    c = solve_additive_parameter(MultiplicativeCharacter.trivial(K), phi)
    assert c == K.power(K.uniformizer, -phi.conductor())


def test_deligne_twist_examples():
    K = Q(5)
    phi = AdditiveCharacter.standard(K)
    alphas = [a for a in all_characters(K, 2) if a.conductor() == 2]
    triv = MultiplicativeCharacter.trivial(K)
    theta = MultiplicativeCharacter.unramified(K, FormalScalar.root(Fraction(1, 4), 5))
    for alpha in alphas:
        assert deligne_twist(alpha, triv, phi) == epsilon(alpha, phi)
        assert deligne_twist(alpha, theta, phi) == theta.at_uniformizer ** (2 + phi.conductor()) * epsilon(alpha, phi)
        for beta in all_characters(K, 1):
            assert deligne_twist(alpha, beta, phi) == epsilon(alpha * beta, phi)
    with pytest.raises(ValueError):
        deligne_twist(alphas[0], alphas[1], phi)


def test_epsilon_ratio():
    K = Q(7)
    phi = AdditiveCharacter.standard(K)
    ins = [EpsilonInput(c, phi) for c in list(all_characters(K, 2))[:4]]
    assert epsilon_ratio(ins, ins) == FormalScalar.one(7)
    assert epsilon_ratio(ins[:1], []) == epsilon_factor(ins[0])
