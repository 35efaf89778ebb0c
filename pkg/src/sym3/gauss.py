"""Classical Gauss sums over F_p and F_{p^2}.

F_q is the residue field of Q_p (q = p) or of its unramified quadratic extension
(q = p^2, F_p[x]/(x^2 - r) for the least nonresidue r, F_2[x]/(x^2 + x + 1) at 2),
so a multiplicative character of F_q^x is a level-one character of that field.
The additive character is x -> e^{2 pi i Tr(lam x)/p}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import MultiplicativeCharacter, inflate_by_norm
from .cyclotomic import CyclotomicNumber
from .local import LocalFieldSpec, ResidueRing, build_unit_group


def residue_field(p: int, r: int) -> LocalFieldSpec:
    if r not in (1, 2):
        raise ValueError("only F_p and F_{p^2} are modeled")
    return LocalFieldSpec(p, "base" if r == 1 else "unramified")


def finite_field_character(p: int, r: int, exponent) -> MultiplicativeCharacter:
    """The character sending the fixed generator of F_q^x to e^{2 pi i exponent}."""
    return MultiplicativeCharacter.from_exponents(residue_field(p, r), 1, [Fraction(exponent)])


@dataclass(frozen=True, eq=False)
class FiniteFieldCharacterPair:
    chi: MultiplicativeCharacter
    lam: tuple[int, int] = (1, 0)

    def __post_init__(self):
        if self.chi.level != 1:
            object.__setattr__(self, "chi", self.chi.at_level(1))

    @property
    def p(self) -> int:
        return self.chi.p

    @property
    def r(self) -> int:
        return self.chi.field.f

    @property
    def q(self) -> int:
        return self.p**self.r


def _trace_table(ring: ResidueRing, lam: tuple[int, int]) -> np.ndarray:
    K = ring.field
    p = K.p
    A, B = K.theta_relation
    a, b = ring.coords
    la, lb = lam
    # lam * x = (la a + B lb b) + (la b + lb a + A lb b) theta
    first = la * a + B * lb * b
    second = la * b + lb * a + A * lb * b
    if K.kind == "base":
        return (la * a) % p
    return (2 * first + A * second) % p


def gauss_sum(pair: FiniteFieldCharacterPair) -> CyclotomicNumber:
    chi = pair.chi
    ring = chi.group.ring
    if pair.q > 10**4:
        raise ValueError("field too large for direct summation")
    n, table = chi.value_table()
    p = pair.p
    m = n * p // np.gcd(n, p)
    units = chi.group.unit_indices()
    tr = _trace_table(ring, pair.lam)[units]
    expo = (table[units] * (m // n) + tr * (m // p)) % m
    return CyclotomicNumber.from_counts(int(m), np.bincount(expo, minlength=int(m)))


def lift_pair(pair: FiniteFieldCharacterPair) -> FiniteFieldCharacterPair:
    """(chi o N, psi o Tr) over F_{p^2}."""
    if pair.r != 1:
        raise ValueError("lifting starts from F_p")
    K = residue_field(pair.p, 2)
    chi2 = inflate_by_norm(pair.chi, K, level=1)
    return FiniteFieldCharacterPair(chi2, (pair.lam[0], 0))


def davenport_hasse_defect(pair: FiniteFieldCharacterPair) -> CyclotomicNumber:
    """G(chi', psi') - (-1)^{r-1} G(chi, psi)^r for r = 2."""
    if pair.chi.is_unramified():
        raise ValueError("Davenport-Hasse comparison needs a nontrivial character")
    lifted = lift_pair(pair)
    return gauss_sum(lifted) + gauss_sum(pair) ** 2


@dataclass(frozen=True)
class StickelbergerPrediction:
    applicable: bool
    value: int | None


def stickelberger_value(p: int, m: int) -> StickelbergerPrediction:
    """Predicted G(chi, psi) for chi of order m | p+1 on F_{p^2}, in the cases used for the variance numbers."""
    if m < 2 or (p + 1) % m:
        return StickelbergerPrediction(False, None)
    if m % 2 == 1 and p % 4 == 1:
        return StickelbergerPrediction(True, p)
    if m % 2 == 0 and ((p + 1) // m) % 2 == 1:
        return StickelbergerPrediction(True, -p)
    return StickelbergerPrediction(False, None)


def characters_of_order(p: int, r: int, m: int):
    q1 = p**r - 1
    if q1 % m:
        return []
    return [finite_field_character(p, r, Fraction(k, m)) for k in range(1, m) if np.gcd(k, m) == 1]


def unit_count(p: int, r: int) -> int:
    return build_unit_group(residue_field(p, r), 1).order
