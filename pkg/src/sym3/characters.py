"""Multiplicative and additive characters of Q_p and its quadratic extensions.

Root-of-unity values are kept as angles: a Fraction in [0, 1) standing for
e^{2 pi i angle}. A multiplicative character is its list of angles on the SNF
generators of O^x / U^t plus a formal value at the uniformizer.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterator, Sequence

import numpy as np

from .arith import padic_fractional, val
from .cyclotomic import CyclotomicNumber, FormalScalar, zeta
from .local import (
    Elt,
    LevelTooLow,
    LocalFieldSpec,
    UnitGroupModel,
    build_unit_group,
)

RationalAngle = Fraction


def angle(x) -> RationalAngle:
    return Fraction(x) % 1


def angle_order(a: Fraction) -> int:
    return Fraction(a).denominator


def root_scalar(a: Fraction, p: int) -> FormalScalar:
    a = angle(a)
    return FormalScalar.make(zeta(a.numerator, a.denominator), p)


@dataclass(frozen=True, eq=False)
class MultiplicativeCharacter:
    group: UnitGroupModel
    unit_exponents: tuple[RationalAngle, ...]
    at_uniformizer: FormalScalar

    def __post_init__(self):
        ex = tuple(angle(a) for a in self.unit_exponents)
        if len(ex) != len(self.group.orders):
            raise ValueError("one exponent per SNF generator is required")
        for a, d in zip(ex, self.group.orders):
            if d % a.denominator:
                raise ValueError(f"angle {a} is not a character value on a cyclic factor of order {d}")
        object.__setattr__(self, "unit_exponents", ex)

    # constructors

    @classmethod
    def trivial(cls, field: LocalFieldSpec, level: int = 1) -> "MultiplicativeCharacter":
        g = build_unit_group(field, level)
        return cls(g, tuple(Fraction(0) for _ in g.orders), FormalScalar.one(field.p))

    @classmethod
    def unramified(cls, field: LocalFieldSpec, value: FormalScalar, level: int = 1) -> "MultiplicativeCharacter":
        g = build_unit_group(field, level)
        return cls(g, tuple(Fraction(0) for _ in g.orders), value)

    @classmethod
    def from_exponents(cls, field: LocalFieldSpec, level: int, exponents: Sequence, at_uniformizer=None):
        g = build_unit_group(field, level)
        if at_uniformizer is None:
            at_uniformizer = FormalScalar.one(field.p)
        elif not isinstance(at_uniformizer, FormalScalar):
            at_uniformizer = root_scalar(at_uniformizer, field.p)
        return cls(g, tuple(Fraction(a) for a in exponents), at_uniformizer)

    @classmethod
    def from_values(cls, group: UnitGroupModel, value_of, at_uniformizer: FormalScalar):
        """Build from a function giving the angle at each SNF generator element."""
        ex = tuple(angle(value_of(g)) for g in group.generators)
        return cls(group, ex, at_uniformizer)

    # basic data

    @property
    def field(self) -> LocalFieldSpec:
        return self.group.field

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def level(self) -> int:
        return self.group.level

    @cached_property
    def _table(self) -> tuple[int, np.ndarray]:
        n = lcm(*(a.denominator for a in self.unit_exponents)) if self.unit_exponents else 1
        coeffs = np.array([int(a * n) for a in self.unit_exponents], dtype=np.int64)
        if len(coeffs) == 0:
            return 1, np.zeros(self.group.ring.size, dtype=np.int64)
        return n, (self.group.dlog @ coeffs) % n

    def value_table(self) -> tuple[int, np.ndarray]:
        """(n, v) with chi(unit index i) = zeta_n^{v[i]}; rows of non-units are meaningless."""
        return self._table

    def unit_angle_at_index(self, idx: int) -> RationalAngle:
        n, v = self._table
        return Fraction(int(v[idx]), n)

    def unit_angle(self, u: Elt) -> RationalAngle:
        ring = self.group.ring
        if self.field.valuation(u) != 0:
            raise ValueError(f"{u} is not a unit")
        return self.unit_angle_at_index(ring.encode_elt(u))

    def __call__(self, x) -> FormalScalar:
        K = self.field
        if not isinstance(x, tuple):
            x = K.elt(x)
        v, u = K.split(x)
        return self.at_uniformizer**v * root_scalar(self.unit_angle(u), self.p)

    # invariants

    def is_unramified(self) -> bool:
        return all(a == 0 for a in self.unit_exponents)

    def unit_order(self) -> int:
        """Order of the restriction to O^x."""
        return lcm(*(a.denominator for a in self.unit_exponents)) if self.unit_exponents else 1

    def conductor(self) -> int:
        return self._conductor

    @cached_property
    def _conductor(self) -> int:
        if self.is_unramified():
            return 0
        n = self.unit_order()
        coeffs = [int(a * n) for a in self.unit_exponents]
        top = 0
        for j, idxs in self.group.filtration:
            for i in idxs:
                if sum(int(k) * c for k, c in zip(self.group.dlog[i], coeffs)) % n:
                    top = j
        return top + 1

    # arithmetic

    def _aligned(self, other: "MultiplicativeCharacter"):
        if self.field != other.field:
            raise ValueError("characters live on different fields")
        t = max(self.level, other.level)
        return self.at_level(t), other.at_level(t)

    def __mul__(self, other: "MultiplicativeCharacter") -> "MultiplicativeCharacter":
        a, b = self._aligned(other)
        ex = tuple(x + y for x, y in zip(a.unit_exponents, b.unit_exponents))
        return MultiplicativeCharacter(a.group, ex, a.at_uniformizer * b.at_uniformizer)

    def __pow__(self, k: int) -> "MultiplicativeCharacter":
        ex = tuple(a * k for a in self.unit_exponents)
        return MultiplicativeCharacter(self.group, ex, self.at_uniformizer**k)

    def inverse(self) -> "MultiplicativeCharacter":
        return self ** (-1)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, MultiplicativeCharacter):
            return NotImplemented
        if self.field != other.field:
            return False
        a, b = self._aligned(other)
        return a.unit_exponents == b.unit_exponents and a.at_uniformizer == b.at_uniformizer

    __hash__ = None

    def same_on_units(self, other: "MultiplicativeCharacter") -> bool:
        a, b = self._aligned(other)
        return a.unit_exponents == b.unit_exponents

    def at_level(self, level: int) -> "MultiplicativeCharacter":
        """Re-express the character on the unit model of another level."""
        if level == self.level:
            return self
        if level < self.level and self.conductor() > level:
            raise LevelTooLow(f"conductor {self.conductor()} exceeds level {level}", self.conductor())
        g = build_unit_group(self.field, level)
        old = self.group.ring
        ex = []
        for gen in g.generators:
            a, b = g.ring.decode(gen)
            ex.append(self.unit_angle_at_index(old.encode(a, b)))
        return MultiplicativeCharacter(g, tuple(ex), self.at_uniformizer)

    def minimal(self) -> "MultiplicativeCharacter":
        return self.at_level(max(1, self.conductor()))

    def with_uniformizer(self, value: FormalScalar) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(self.group, self.unit_exponents, value)

    def __repr__(self):
        ex = ",".join(str(a) for a in self.unit_exponents)
        return f"χ[{self.field.label()}, t={self.level}, ({ex}), π↦{self.at_uniformizer}]"


# construction from base characters


def inflate_by_norm(chi: MultiplicativeCharacter, K: LocalFieldSpec, level: int | None = None) -> MultiplicativeCharacter:
    """chi o N_{K/Q_p} on K^x, on the smallest adequate unit level unless one is given."""
    base = chi.field
    if base.kind != "base" or base.p != K.p:
        raise ValueError("inflation needs a character of Q_p")
    one = K.elt(1)

    def norm_angle(x: Elt) -> Fraction:
        return chi.unit_angle(K.elt(K.norm(x)))

    # N(U_K^{e t}) lies in U^t, so only steps below e*t can carry the inflated character
    top = 0
    for j in range(K.e * chi.level - 1, 0, -1):
        step = [K.add(one, K.mul(u, K.power(K.uniformizer, j))) for u in _residue_basis(K)]
        if any(norm_angle(x) for x in step):
            top = j
            break
    required = top + 1
    if level is None:
        level = required
    elif level < required:
        raise LevelTooLow(f"inflated character needs level {required}, got {level}", required)
    g = build_unit_group(K, level)
    return MultiplicativeCharacter.from_values(
        g, lambda idx: norm_angle(K.elt(*g.ring.decode(idx))), chi(K.uniformizer_norm)
    )


def _residue_basis(K: LocalFieldSpec) -> list[Elt]:
    if K.kind == "unramified":
        return [K.elt(1), K.elt(0, 1)]
    return [K.elt(1)]


def sigma_conjugate(kappa: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """kappa^sigma(x) = kappa(sigma x)."""
    K = kappa.field
    if K.kind == "base":
        return kappa
    g = kappa.group

    def on(idx):
        a, b = g.ring.decode(idx)
        return kappa.unit_angle(K.sigma((Fraction(a), Fraction(b))))

    pi = K.uniformizer
    ratio = K.mul(K.sigma(pi), K.inverse(pi))
    at_pi = kappa.at_uniformizer * root_scalar(kappa.unit_angle(ratio), K.p)
    return MultiplicativeCharacter.from_values(g, on, at_pi)


def restrict_to_base(kappa: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """kappa restricted to Q_p^x."""
    K = kappa.field
    base = LocalFieldSpec(K.p)
    level = -(-kappa.level // K.e)
    g = build_unit_group(base, level)

    def on(idx):
        a, _ = g.ring.decode(idx)
        return kappa.unit_angle(K.elt(a))

    # p = pi^e * unit
    v, u = K.split(K.elt(K.p))
    at_p = kappa.at_uniformizer**v * root_scalar(kappa.unit_angle(u), K.p)
    return MultiplicativeCharacter.from_values(g, on, at_p)


def all_characters(
    field: LocalFieldSpec, level: int, uniformizer_values: Sequence[FormalScalar] | None = None
) -> Iterator[MultiplicativeCharacter]:
    g = build_unit_group(field, level)
    if uniformizer_values is None:
        uniformizer_values = [FormalScalar.one(field.p)]
    for ex in itertools.product(*(range(d) for d in g.orders)):
        angles = tuple(Fraction(e, d) for e, d in zip(ex, g.orders))
        for u in uniformizer_values:
            yield MultiplicativeCharacter(g, angles, u)


def galois_orbit_representatives(
    field: LocalFieldSpec, level: int, uniformizer_value: FormalScalar | None = None
) -> Iterator[tuple[MultiplicativeCharacter, int]]:
    """One character per orbit of chi -> chi^j, j odd and prime to the exponent, with the orbit size.

    Conductors of chi, chi^3 and of products with Galois conjugates and quadratic
    characters are constant on these orbits."""
    g = build_unit_group(field, level)
    d = np.array(g.orders, dtype=np.int64)
    if uniformizer_value is None:
        uniformizer_value = FormalScalar.one(field.p)
    total = int(np.prod(d)) if len(d) else 1
    if not len(d):
        yield MultiplicativeCharacter(g, (), uniformizer_value), 1
        return
    M = lcm(g.exponent, 2)
    J = np.array([j for j in range(1, M) if gcd(j, M) == 1], dtype=np.int64)
    seen = np.zeros(total, dtype=bool)
    cursor = 0
    while True:
        free = np.flatnonzero(~seen[cursor:])
        if not len(free):
            return
        cursor += int(free[0])
        ex = np.array(np.unravel_index(cursor, tuple(d)), dtype=np.int64)
        orbit = np.unique(np.ravel_multi_index(tuple(((J[:, None] * ex[None, :]) % d).T), tuple(d)))
        seen[orbit] = True
        angles = tuple(Fraction(int(e), int(n)) for e, n in zip(ex, d))
        yield MultiplicativeCharacter(g, angles, uniformizer_value), len(orbit)


def characters_of_order_dividing(field: LocalFieldSpec, level: int, n: int, uniformizer_values=None):
    for chi in all_characters(field, level, uniformizer_values):
        if n % chi.unit_order() == 0:
            yield chi


# quadratic characters attached to quadratic extensions


def norm_residue_character(K: LocalFieldSpec) -> MultiplicativeCharacter:
    """omega_{K/Q_p}: the quadratic character of Q_p^x with kernel N(K^x)."""
    p = K.p
    base = LocalFieldSpec(p)
    if K.kind == "unramified":
        return MultiplicativeCharacter.unramified(base, FormalScalar.make(-1, p))
    level = 3 if p == 2 else 1
    gk = build_unit_group(K, K.e * level + 1)
    norms = [K.norm(K.elt(*gk.ring.decode(g))) for g in gk.generators]
    norms.append(K.uniformizer_norm)
    found = []
    for chi in all_characters(base, level, [FormalScalar.one(p), FormalScalar.make(-1, p)]):
        if chi.is_unramified() and chi.at_uniformizer == FormalScalar.one(p):
            continue
        if all(chi(n) == FormalScalar.one(p) for n in norms):
            found.append(chi)
    if len(found) != 1:
        raise AssertionError(f"expected one norm residue character, found {len(found)}")
    return found[0]


def twisting_character(p: int, which: int | None = None) -> MultiplicativeCharacter:
    """The quadratic twist chi_p: omega of Q_p(sqrt -p) for odd p, omega of Q_2(sqrt which) at 2."""
    if p == 2:
        if which not in (-1, 2, -2):
            raise ValueError("the twist at 2 is one of chi_{-1}, chi_2, chi_{-2}")
        return norm_residue_character(LocalFieldSpec(2, "ramified", which))
    return norm_residue_character(LocalFieldSpec(p, "ramified", -p))


# additive characters


@dataclass(frozen=True)
class AdditiveCharacter:
    field: LocalFieldSpec
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale == 0:
            raise ValueError("additive character scale must be nonzero")

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def standard(cls, field: LocalFieldSpec) -> "AdditiveCharacter":
        """x -> e^{2 pi i {Tr(x)/p}_p}, of conductor -1 on Q_p."""
        return cls(field, Fraction(1, field.p))

    def base_conductor(self) -> int:
        return val(self.scale, self.p)

    def conductor(self) -> int:
        """n(phi): largest n with phi trivial on p_K^{-n}."""
        K = self.field
        return K.e * self.base_conductor() + K.delta

    def __call__(self, x) -> RationalAngle:
        K = self.field
        if not isinstance(x, tuple):
            x = K.elt(x)
        return padic_fractional(self.scale * K.trace(x), self.p)

    def scaled(self, a) -> "AdditiveCharacter":
        """x -> phi(a x) for a in Q_p^x."""
        return AdditiveCharacter(self.field, self.scale * Fraction(a))

    def to_base_linear(self, w: Elt) -> tuple[Fraction, Fraction]:
        """Angles (alpha, beta) with phi(w * (a + b theta)) = a alpha + b beta for integers a, b."""
        K = self.field
        theta = K.elt(0, 1) if K.kind != "base" else K.elt(0)
        alpha = self(w)
        beta = self(K.mul(w, theta)) if K.kind != "base" else Fraction(0)
        return alpha, beta


def lcm_all(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


# JSON literals


class LiteralError(ValueError):
    """A malformed field or character literal; `path` locates the offending entry."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _fraction_literal(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fraction(v, path: str) -> Fraction:
    if isinstance(v, bool):
        raise LiteralError(path, "expected a number")
    if isinstance(v, (list, tuple)) and len(v) == 2:
        num, den = v
        if isinstance(num, int) and isinstance(den, int) and den:
            return Fraction(num, den)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            pass
    raise LiteralError(path, f"cannot read {v!r} as a rational number")


def field_to_literal(K: LocalFieldSpec) -> dict:
    out = {"p": K.p, "kind": K.kind}
    if K.kind == "ramified":
        out["d"] = K.d
    return out


def field_from_literal(obj, path: str = "field", p: int | None = None) -> LocalFieldSpec:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    q = obj.get("p", p)
    if not isinstance(q, int) or isinstance(q, bool):
        raise LiteralError(f"{path}.p", "expected an integer prime")
    if p is not None and q != p:
        raise LiteralError(f"{path}.p", f"field lives over Q_{q}, expected Q_{p}")
    kind = obj.get("kind", "base")
    try:
        return LocalFieldSpec(q, kind, obj.get("d"))
    except ValueError as exc:
        raise LiteralError(path, str(exc)) from None


def scalar_to_literal(x: FormalScalar) -> dict:
    r = x.coefficient.root_of_unity_exponent()
    if r is None:
        raise ValueError(f"{x.render()} is not a root of unity times p and a_p powers")
    return {"angle": [r.numerator, r.denominator], "half_p_exp": _fraction_literal(x.half_p_exp), "ap_exp": x.ap_exp}


def scalar_from_literal(obj, p: int, path: str = "at_uniformizer") -> FormalScalar:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    a = _parse_fraction(obj.get("angle", [0, 1]), f"{path}.angle") % 1
    h = _parse_fraction(obj.get("half_p_exp", 0), f"{path}.half_p_exp")
    e = obj.get("ap_exp", 0)
    if not isinstance(e, int) or isinstance(e, bool):
        raise LiteralError(f"{path}.ap_exp", "expected an integer")
    return FormalScalar.make(zeta(a.numerator, a.denominator), p, h, e)


def character_to_literal(chi: MultiplicativeCharacter) -> dict:
    return {
        "field": field_to_literal(chi.field),
        "level": chi.level,
        "unit_exponents": [[a.numerator, a.denominator] for a in chi.unit_exponents],
        "at_uniformizer": scalar_to_literal(chi.at_uniformizer),
    }


def character_from_literal(obj, path: str = "character", p: int | None = None) -> MultiplicativeCharacter:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    K = field_from_literal(obj.get("field", {"p": p} if p is not None else None), f"{path}.field", p)
    level = obj.get("level")
    if not isinstance(level, int) or isinstance(level, bool) or level < 1:
        raise LiteralError(f"{path}.level", "expected a positive integer")
    ex = obj.get("unit_exponents")
    if not isinstance(ex, list):
        raise LiteralError(f"{path}.unit_exponents", "expected a list")
    angles = [_parse_fraction(v, f"{path}.unit_exponents[{i}]") for i, v in enumerate(ex)]
    u = scalar_from_literal(obj.get("at_uniformizer", {}), K.p, f"{path}.at_uniformizer")
    try:
        return MultiplicativeCharacter(build_unit_group(K, level), tuple(angles), u)
    except ValueError as exc:
        raise LiteralError(f"{path}.unit_exponents", str(exc)) from None
