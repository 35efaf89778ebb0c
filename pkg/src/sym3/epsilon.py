"""Local epsilon factors of characters from the finite Gauss-sum definition.

    eps(chi, phi, c) = q^{-a/2} chi(c) tau(chi, phi, c)
    tau(chi, phi, c) = sum over x in O^x / U^a of chi^{-1}(x) phi(x / c)

with a = a(chi) and val(c) = a + n(phi).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .characters import AdditiveCharacter, MultiplicativeCharacter, root_scalar
from .cyclotomic import CyclotomicNumber, FormalScalar, reduce_counts
from .local import Elt, LevelTooLow, ResidueRing


class NoAdditiveParameter(ValueError):
    pass


@dataclass(frozen=True)
class EpsilonInput:
    chi: MultiplicativeCharacter
    phi: AdditiveCharacter
    c: Elt | None = None

    def __post_init__(self):
        if self.chi.field != self.phi.field:
            raise ValueError("character and additive character live on different fields")

    @property
    def exponent(self) -> int:
        return self.chi.conductor() + self.phi.conductor()

    def element(self) -> Elt:
        K = self.chi.field
        if self.c is None:
            return K.power(K.uniformizer, self.exponent)
        c = self.c if isinstance(self.c, tuple) else K.elt(self.c)
        if K.valuation(c) != self.exponent:
            raise ValueError(f"c must have valuation {self.exponent}, got {K.valuation(c)}")
        return c


def tau_counts(inp: EpsilonInput) -> tuple[int, np.ndarray]:
    """(M, counts) with tau = sum_k counts[k] zeta_M^k, unreduced."""
    chi = inp.chi
    K = chi.field
    a = chi.conductor()
    if a == 0:
        counts = np.zeros(1, dtype=np.int64)
        counts[0] = 1
        return 1, counts
    chi = chi.at_level(a)
    ring: ResidueRing = chi.group.ring
    w = K.inverse(inp.element())
    alpha, beta = inp.phi.to_base_linear(w)
    n, table = chi.value_table()
    m = lcm(n, alpha.denominator, beta.denominator)
    units = chi.group.unit_indices()
    xa, xb = ring.coords[0][units], ring.coords[1][units]
    expo = (-table[units] * (m // n) + xa * int(alpha * m) + xb * int(beta * m)) % m
    return m, np.bincount(expo, minlength=m)


def local_tau(inp: EpsilonInput) -> CyclotomicNumber:
    m, counts = tau_counts(inp)
    return CyclotomicNumber.from_counts(m, counts)


def epsilon_factor(inp: EpsilonInput) -> FormalScalar:
    chi = inp.chi
    K = chi.field
    a = chi.conductor()
    value_c = chi(inp.element())
    if a == 0:
        return value_c
    tau = local_tau(inp)
    return FormalScalar.make(tau, K.p, Fraction(-a * K.f, 2)) * value_c


def epsilon(chi: MultiplicativeCharacter, phi: AdditiveCharacter, c: Elt | None = None) -> FormalScalar:
    return epsilon_factor(EpsilonInput(chi, phi, c))


def epsilon_ratio(numerators: Sequence[EpsilonInput], denominators: Sequence[EpsilonInput]) -> FormalScalar:
    p = (list(numerators) + list(denominators))[0].chi.p
    out = FormalScalar.one(p)
    for inp in numerators:
        out = out * epsilon_factor(inp)
    for inp in denominators:
        out = out / epsilon_factor(inp)
    return out


# the additive parameter of a character


def solve_additive_parameter(chi: MultiplicativeCharacter, phi: AdditiveCharacter, r: int | None = None) -> Elt:
    """An element c of valuation -(a + n) with chi(1 + x) = phi(c x) for all x in p^r."""
    K = chi.field
    a = chi.conductor()
    n = phi.conductor()
    pi = K.uniformizer
    if a == 0:
        return K.power(pi, -n)
    if r is None:
        r = (a + 1) // 2
    if 2 * r < a:
        raise ValueError(f"need 2r >= a(chi), got r={r}, a={a}")
    base = K.power(pi, -(a + n))
    if r >= a:
        return base
    one = K.elt(1)
    pir = K.power(pi, r)
    gens = [pir, K.mul(pir, K.elt(0, 1))] if K.kind != "base" else [pir]
    # a generator x of p^r / p^a gives chi(1+x) against phi(c x)
    targets = [chi.unit_angle(K.add(one, x)) for x in gens]
    ring = ResidueRing(K, a - r)
    for idx in np.nonzero(ring.unit_mask())[0]:
        u = K.elt(*ring.decode(int(idx)))
        c = K.mul(base, u)
        if all(phi(K.mul(c, x)) == t for x, t in zip(gens, targets)):
            return c
    raise NoAdditiveParameter(f"no additive parameter for {chi} at r={r}")


class DeligneTwister:
    """beta -> beta^{-1}(c) eps(alpha, phi) for a fixed alpha, with c solved once."""

    def __init__(self, alpha: MultiplicativeCharacter, phi: AdditiveCharacter):
        self.alpha = alpha
        self.phi = phi
        self.a = alpha.conductor()
        self.c = solve_additive_parameter(alpha, phi, r=(self.a + 1) // 2)
        self.eps_alpha = epsilon(alpha, phi)

    def __call__(self, beta: MultiplicativeCharacter) -> FormalScalar:
        b = beta.conductor()
        if self.a < 2 * b:
            raise ValueError(f"twisting needs a(alpha) >= 2 a(beta), got {self.a} and {b}")
        return beta.inverse()(self.c) * self.eps_alpha


def deligne_twist(alpha: MultiplicativeCharacter, beta: MultiplicativeCharacter, phi: AdditiveCharacter) -> FormalScalar:
    """eps(alpha beta, phi) through beta^{-1}(c) eps(alpha, phi)."""
    return DeligneTwister(alpha, phi)(beta)


def epsilon_dense(inp: EpsilonInput) -> tuple[int, np.ndarray, FormalScalar]:
    """(M, reduced tau vector, chi(c) q^{-a/2}) for fast exact comparisons."""
    m, counts = tau_counts(inp)
    chi = inp.chi
    K = chi.field
    scalar = FormalScalar.make(1, K.p, Fraction(-chi.conductor() * K.f, 2)) * chi(inp.element())
    return m, reduce_counts(m, counts), scalar


def shifted_counts(m: int, counts: np.ndarray, shift_angle: Fraction) -> tuple[int, np.ndarray]:
    """counts times e^{2 pi i shift_angle}, on a common order."""
    M = lcm(m, Fraction(shift_angle).denominator)
    out = np.zeros(M, dtype=np.int64)
    out[np.arange(m) * (M // m)] = counts
    return M, np.roll(out, int(Fraction(shift_angle) * M) % M)


def same_counts(m1: int, c1: np.ndarray, m2: int, c2: np.ndarray) -> bool:
    M = lcm(m1, m2)
    d = np.zeros(M, dtype=np.int64)
    d[np.arange(m1) * (M // m1)] += c1
    d[np.arange(m2) * (M // m2)] -= c2
    return not reduce_counts(M, d).any()
