"""Exact sums of roots of unity and formal monomials in p^{1/2} and a_p.

A CyclotomicNumber of order n is stored sparsely as {k: coefficient of zeta_n^k}
in a fixed Q-basis of Q(zeta_n). The basis comes from the relations
sum_{j<q} zeta^{k + j n/q} = 0 for each prime q | n: an exponent whose q-digit
(the top base-q digit of k mod q^e) equals q-1 is rewritten through the others.
Reduced vectors are unique, so equality is a dictionary comparison after the
order is shrunk to the smallest one that still carries the support.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

import numpy as np

from .arith import factorize, lcm, val


@lru_cache(maxsize=None)
def _digit_data(n: int) -> tuple[tuple[int, int, int], ...]:
    # (q, q^e, q^(e-1)) for each prime power exactly dividing n
    return tuple((q, q**e, q ** (e - 1)) for q, e in sorted(factorize(n).items()))


def _reduce(n: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    for q, qe, qlow in _digit_data(n):
        step = n // q
        for k in [k for k in terms if (k % qe) // qlow == q - 1]:
            c = terms.pop(k)
            for j in range(1, q):
                kk = (k + j * step) % n
                terms[kk] = terms.get(kk, 0) - c
    return {k: c for k, c in terms.items() if c != 0}


@lru_cache(maxsize=256)
def _dense_plan(n: int):
    idx_all = np.arange(n)
    plan = []
    for q, qe, qlow in _digit_data(n):
        step = n // q
        idx = idx_all[(idx_all % qe) // qlow == q - 1]
        plan.append((idx, np.stack([(idx + j * step) % n for j in range(1, q)])))
    return plan


def reduce_counts(n: int, counts: np.ndarray) -> np.ndarray:
    """Canonical integer vector of sum counts[k] zeta_n^k."""
    counts = np.array(counts, dtype=np.int64)
    for idx, targets in _dense_plan(n):
        vals = counts[idx]
        counts[idx] = 0
        for row in targets:
            counts[row] -= vals
    return counts


def _shrink(n: int, terms: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    # reduced forms of subfield elements sit on multiples of n/d; re-reduce at d until stable
    while terms:
        g = n
        for k in terms:
            g = gcd(g, k)
            if g == 1:
                return n, terms
        n //= g
        terms = _reduce(n, {k // g: c for k, c in terms.items()})
    return 1, {}


@dataclass(frozen=True, eq=False)
class CyclotomicNumber:
    order: int
    terms: Mapping[int, Fraction] = field(default_factory=dict)

    @classmethod
    def build(cls, order: int, terms: Mapping[int, object]) -> "CyclotomicNumber":
        raw: dict[int, Fraction] = {}
        for k, c in terms.items():
            kk = k % order
            raw[kk] = raw.get(kk, 0) + Fraction(c)
        n, red = _shrink(order, _reduce(order, raw))
        return cls(n, red)

    @classmethod
    def from_counts(cls, order: int, counts: np.ndarray) -> "CyclotomicNumber":
        """Integer combination sum counts[k] zeta_order^k, reduced with numpy."""
        red = reduce_counts(order, np.asarray(counts))
        nz = np.nonzero(red)[0]
        n, terms = _shrink(order, {int(k): Fraction(int(red[k])) for k in nz})
        return cls(n, terms)

    @classmethod
    def rational(cls, value) -> "CyclotomicNumber":
        value = Fraction(value)
        return cls(1, {0: value} if value else {})

    @classmethod
    def root(cls, k: int, n: int) -> "CyclotomicNumber":
        return cls.build(n, {k % n: 1})

    @classmethod
    def zero(cls) -> "CyclotomicNumber":
        return cls(1, {})

    @classmethod
    def one(cls) -> "CyclotomicNumber":
        return cls(1, {0: Fraction(1)})

    def lift(self, n: int) -> dict[int, Fraction]:
        if n % self.order:
            raise ValueError(f"order {self.order} does not divide {n}")
        m = n // self.order
        return {k * m: c for k, c in self.terms.items()}

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = lcm(self.order, other.order)
        acc = self.lift(n)
        for k, c in other.lift(n).items():
            acc[k] = acc.get(k, 0) + c
        return CyclotomicNumber.build(n, acc)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return CyclotomicNumber.zero()
        if other.order == 1:
            c = other.terms[0]
            return self if c == 1 else CyclotomicNumber(self.order, {k: v * c for k, v in self.terms.items()})
        if self.order == 1:
            return other * self
        n = lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        acc: dict[int, Fraction] = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = (k1 + k2) % n
                acc[k] = acc.get(k, 0) + c1 * c2
        return CyclotomicNumber.build(n, acc)

    __rmul__ = __mul__

    def scale_root(self, k: int, n: int) -> "CyclotomicNumber":
        """Multiply by zeta_n^k without a full convolution."""
        m = lcm(self.order, n)
        shift = k * (m // n)
        return CyclotomicNumber.build(m, {e + shift: c for e, c in self.lift(m).items()})

    def __pow__(self, e: int):
        if self.order == 1:
            return CyclotomicNumber.rational(self.as_rational() ** e)
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CyclotomicNumber.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, a: int) -> "CyclotomicNumber":
        """Apply zeta_n -> zeta_n^a for a prime to n."""
        if gcd(a, self.order) != 1:
            raise ValueError("Galois exponent must be a unit")
        return CyclotomicNumber.build(self.order, {k * a: c for k, c in self.terms.items()})

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1)

    def abs_square(self) -> "CyclotomicNumber":
        return self * self.conjugate()

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return CyclotomicNumber.build(self.order, {-k: 1 / c})
        norm_sq = self.abs_square()
        if norm_sq.is_rational():
            return self.conjugate() * (1 / norm_sq.as_rational())
        # product of the other Galois conjugates over the field norm
        n = self.order
        others = CyclotomicNumber.one()
        for a in range(2, n):
            if gcd(a, n) == 1:
                others = others * self.galois(a)
        norm = self * others
        return others * (1 / norm.as_rational())

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.terms.items()))))

    def embed_complex(self) -> complex:
        w = 2j * cmath.pi / self.order
        return complex(sum(float(c) * cmath.exp(w * k) for k, c in self.terms.items()))

    def root_of_unity_exponent(self) -> Fraction | None:
        """If self is a root of unity e^{2 pi i r}, return r in [0, 1)."""
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            if c == 1:
                return Fraction(k, self.order)
            if c == -1:
                return (Fraction(k, self.order) + Fraction(1, 2)) % 1
            return None
        return _root_lookup(self.order).get(self)

    def to_json(self) -> dict:
        coeffs = [str(self.terms.get(k, 0)) for k in range(self.order)]
        return {"order": self.order, "coeffs": coeffs}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
                continue
            z = f"ζ_{self.order}" + (f"^{k}" if k != 1 else "")
            if c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}{z}")
        return "+".join(parts).replace("+-", "-")

    __repr__ = __str__


@lru_cache(maxsize=4096)
def zeta(k: int, n: int) -> CyclotomicNumber:
    return CyclotomicNumber.root(k, n)


@lru_cache(maxsize=None)
def sqrt_prime(p: int) -> CyclotomicNumber:
    """The positive square root of p as an element of Q(zeta_{4p}) or Q(zeta_8)."""
    if p == 2:
        return zeta(1, 8) + zeta(7, 8)
    g = CyclotomicNumber.build(p, {x: legendre(x, p) for x in range(1, p)})
    return g if p % 4 == 1 else g * zeta(3, 4)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True, eq=False)
class FormalScalar:
    """coefficient * p^{half_p_exp} * a_p^{ap_exp}."""

    coefficient: CyclotomicNumber
    half_p_exp: Fraction
    ap_exp: int
    p: int

    @classmethod
    def make(cls, coefficient, p: int, half_p_exp=0, ap_exp: int = 0) -> "FormalScalar":
        if not isinstance(coefficient, CyclotomicNumber):
            coefficient = CyclotomicNumber.rational(coefficient)
        if coefficient.is_zero():
            return cls(coefficient, Fraction(0), 0, p)
        return cls(coefficient, Fraction(half_p_exp), int(ap_exp), p)

    @classmethod
    def one(cls, p: int) -> "FormalScalar":
        return cls.make(1, p)

    @classmethod
    def root(cls, angle: Fraction, p: int) -> "FormalScalar":
        angle = Fraction(angle)
        return cls.make(zeta(angle.numerator, angle.denominator), p)

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def _check(self, other: "FormalScalar"):
        if self.p != other.p:
            raise ValueError(f"mixing primes {self.p} and {other.p}")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return FormalScalar.make(self.coefficient * other, self.p, self.half_p_exp, self.ap_exp)
        self._check(other)
        return FormalScalar.make(
            self.coefficient * other.coefficient,
            self.p,
            self.half_p_exp + other.half_p_exp,
            self.ap_exp + other.ap_exp,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return FormalScalar.make(-self.coefficient, self.p, self.half_p_exp, self.ap_exp)

    def inverse(self) -> "FormalScalar":
        return FormalScalar.make(self.coefficient.inverse(), self.p, -self.half_p_exp, -self.ap_exp)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self * (1 / CyclotomicNumber.rational(other) if not isinstance(other, CyclotomicNumber) else other.inverse())
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FormalScalar.make(self.coefficient**e, self.p, self.half_p_exp * e, self.ap_exp * e)

    def __add__(self, other: "FormalScalar"):
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.ap_exp != other.ap_exp:
            raise ValueError("cannot add monomials with different powers of a_p")
        d = other.half_p_exp - self.half_p_exp
        return FormalScalar.make(
            self.coefficient + other.coefficient * p_power(self.p, d),
            self.p,
            self.half_p_exp,
            self.ap_exp,
        )

    def numeric_coefficient(self) -> CyclotomicNumber:
        """coefficient * p^{half_p_exp} as a cyclotomic number (a_p left out)."""
        return self.coefficient * p_power(self.p, self.half_p_exp)

    def normalized(self) -> tuple[int, CyclotomicNumber]:
        return self.ap_exp, self.numeric_coefficient()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = FormalScalar.make(other, self.p)
        if not isinstance(other, FormalScalar):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.p != other.p or self.ap_exp != other.ap_exp:
            return False
        d = other.half_p_exp - self.half_p_exp
        return self.coefficient == other.coefficient * p_power(self.p, d)

    def __hash__(self):
        return hash((self.ap_exp, self.numeric_coefficient()))

    def embed_complex(self, ap_value: complex = 1.0) -> complex:
        return self.coefficient.embed_complex() * self.p ** float(self.half_p_exp) * ap_value**self.ap_exp

    def simplified(self) -> "FormalScalar":
        """Move a factor sqrt(p) in or out of the coefficient when that shortens it."""
        if self.is_zero():
            return self
        best = self
        for shift in (Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)):
            coef = self.coefficient * p_power(self.p, shift)
            if len(coef.terms) < len(best.coefficient.terms):
                best = FormalScalar(coef, self.half_p_exp - shift, self.ap_exp, self.p)
        v = min(val(c, self.p) for c in best.coefficient.terms.values())
        if v:
            coef = best.coefficient * Fraction(self.p) ** (-v)
            best = FormalScalar(coef, best.half_p_exp + v, self.ap_exp, self.p)
        return best

    def render(self) -> str:
        if self.is_zero():
            return "0"
        self = self.simplified()
        parts = []
        sign = ""
        coef = self.coefficient
        if coef == CyclotomicNumber.rational(-1):
            sign, coef = "-", CyclotomicNumber.one()
        elif len(coef.terms) == 1 and next(iter(coef.terms.values())) < 0:
            sign, coef = "-", -coef
        if self.half_p_exp:
            parts.append(f"{self.p}^{{{_frac(self.half_p_exp)}}}")
        if self.ap_exp:
            parts.append(f"a_{self.p}" + (f"^{self.ap_exp}" if self.ap_exp != 1 else ""))
        if not parts:
            parts.append(str(coef) if len(coef.terms) == 1 else f"({coef})")
        elif coef != CyclotomicNumber.one():
            parts.append(f"({coef})")
        return sign + "·".join(parts)

    __str__ = render
    __repr__ = render


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def p_power(p: int, exponent) -> CyclotomicNumber:
    """p^exponent for a half-integer exponent, exactly."""
    exponent = Fraction(exponent)
    if exponent.denominator not in (1, 2):
        raise ValueError(f"p-power {exponent} is not a half-integer")
    whole = exponent.numerator // exponent.denominator if exponent.denominator == 1 else (exponent - Fraction(1, 2))
    whole = int(whole)
    value = CyclotomicNumber.rational(Fraction(p) ** whole)
    if exponent.denominator == 2:
        value = value * sqrt_prime(p)
    return value


@lru_cache(maxsize=256)
def _root_lookup(n: int) -> dict:
    m = 2 * n
    return {zeta(k, m): Fraction(k, m) for k in range(m)}
