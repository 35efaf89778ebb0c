import cmath
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sym3.cyclotomic import CyclotomicNumber, FormalScalar, legendre, sqrt_prime, zeta
from oracles import legendre as euler_legendre

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 24, 36, 40, 72, 360])


@st.composite
def numbers(draw):
    n = draw(orders)
    terms = draw(st.dictionaries(st.integers(0, n - 1), st.fractions(-5, 5, max_denominator=6), max_size=4))
    return CyclotomicNumber.build(n, terms)


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


def test_examples():
    assert zeta(1, 4) * zeta(1, 4) == CyclotomicNumber.rational(-1)
    assert (zeta(1, 8) + zeta(7, 8)) ** 2 == CyclotomicNumber.rational(2)
    assert (zeta(1, 3) + zeta(2, 3)).abs_square() == CyclotomicNumber.one()
    assert close(zeta(1, 4).embed_complex(), 1j)
    x = FormalScalar.make(-1, 7, Fraction(1, 2), 3) * FormalScalar.make(1, 7, Fraction(1, 2))
    assert x == FormalScalar.make(-1, 7, 1, 3)


@settings(max_examples=60, deadline=None)
@given(numbers(), numbers(), numbers())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == CyclotomicNumber.zero()


@settings(max_examples=60, deadline=None)
@given(numbers(), numbers())
def test_embedding_is_a_homomorphism(a, b):
    assert close((a * b).embed_complex(), a.embed_complex() * b.embed_complex())
    assert close((a + b).embed_complex(), a.embed_complex() + b.embed_complex())
    assert close(a.conjugate().embed_complex(), a.embed_complex().conjugate())


@settings(max_examples=40, deadline=None)
@given(numbers())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == CyclotomicNumber.one()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9, 12]), st.lists(st.integers(-3, 3), min_size=1, max_size=12))
def test_multiples_of_the_cyclotomic_polynomial_vanish(n, coeffs):
    # sum_{k} zeta^k over a full set of d-th roots of unity vanishes for d | n, d > 1
    d = next(d for d in range(2, n + 1) if n % d == 0)
    base = CyclotomicNumber.build(n, {k * (n // d): 1 for k in range(d)})
    assert base.is_zero()
    shifted = CyclotomicNumber.build(n, {i % n: c for i, c in enumerate(coeffs)})
    assert shifted + base * zeta(1, n) == shifted


def test_sqrt_prime():
    for p in (2, 3, 5, 7, 11, 13):
        r = sqrt_prime(p)
        assert r * r == CyclotomicNumber.rational(p)
        assert close(r.embed_complex(), p**0.5)


def test_legendre_matches_euler():
    for p in (3, 5, 7, 11, 13):
        for a in range(-20, 20):
            assert legendre(a, p) == euler_legendre(a, p)


def test_root_of_unity_exponent():
    assert zeta(5, 12).root_of_unity_exponent() == Fraction(5, 12)
    assert CyclotomicNumber.rational(2).root_of_unity_exponent() is None


def test_formal_scalar_rendering_is_stable():
    x = FormalScalar.make(-1, 11, 1, 3)
    assert x.render() == FormalScalar.make(-1, 11, 1, 3).render()
    assert close(x.embed_complex(ap_value=2.0), -11 * 8)
    assert close(FormalScalar.root(Fraction(1, 6), 5).embed_complex(), cmath.exp(1j * cmath.pi / 3))
