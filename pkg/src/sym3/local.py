"""Local fields Q_p and their quadratic extensions, with finite unit-group models.

An element of K = Q_p(theta) is a pair (a, b) of rationals standing for a + b*theta,
where theta^2 = A*theta + B. The basis {1, theta} is integral, so integral elements
have p-integral coordinates, and O/p^t is a finite ring of integer pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import primitive_root, rational_mod, smallest_nonresidue, val

Elt = tuple[Fraction, Fraction]

KINDS = ("base", "unramified", "ramified")
TWO_ADIC_RAMIFIED = (-1, 3, 2, -2, 6, -6)


class EnumerationTooLarge(ValueError):
    pass


class LevelTooLow(ValueError):
    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


@dataclass(frozen=True)
class LocalFieldSpec:
    p: int
    kind: str = "base"
    d: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "base":
            object.__setattr__(self, "d", None)
        elif self.kind == "unramified":
            object.__setattr__(self, "d", -3 if self.p == 2 else smallest_nonresidue(self.p))
        else:
            d = self.d if self.d is not None else (-1 if self.p == 2 else -self.p)
            if self.p == 2 and d not in TWO_ADIC_RAMIFIED:
                raise ValueError(f"Q_2(sqrt {d}) is not a ramified quadratic extension in the standard list")
            if self.p != 2 and (d % self.p or (d // self.p) % self.p == 0):
                raise ValueError(f"d={d} does not define a ramified extension of Q_{self.p}")
            object.__setattr__(self, "d", d)

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def f(self) -> int:
        return 2 if self.kind == "unramified" else 1

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def delta(self) -> int:
        """Valuation of the discriminant."""
        if self.kind != "ramified":
            return 0
        if self.p != 2:
            return 1
        return 2 if self.d in (-1, 3) else 3

    @property
    def theta_relation(self) -> tuple[int, int]:
        """(A, B) with theta^2 = A*theta + B."""
        if self.kind == "base":
            return 0, 0
        if self.kind == "unramified":
            return (-1, -1) if self.p == 2 else (0, self.d)
        if self.p == 2 and self.d in (-1, 3):
            return 2, self.d - 1
        return 0, self.d

    def label(self) -> str:
        if self.kind == "base":
            return f"Q_{self.p}"
        return f"Q_{self.p}(sqrt {self.d})"

    # exact arithmetic on K

    def elt(self, a, b=0) -> Elt:
        if self.kind == "base" and b:
            raise ValueError("base field elements have no theta part")
        return Fraction(a), Fraction(b)

    def mul(self, x: Elt, y: Elt) -> Elt:
        A, B = self.theta_relation
        a, b = x
        c, d = y
        return a * c + B * b * d, a * d + b * c + A * b * d

    def add(self, x: Elt, y: Elt) -> Elt:
        return x[0] + y[0], x[1] + y[1]

    def power(self, x: Elt, n: int) -> Elt:
        if x == self.uniformizer:
            return self.pi_power(n)
        if n < 0:
            return self.power(self.inverse(x), -n)
        out = (Fraction(1), Fraction(0))
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def sigma(self, x: Elt) -> Elt:
        A, _ = self.theta_relation
        a, b = x
        return a + b * A, -b

    def norm(self, x: Elt) -> Fraction:
        A, B = self.theta_relation
        a, b = x
        if self.kind == "base":
            return a
        return a * a + A * a * b - B * b * b

    def trace(self, x: Elt) -> Fraction:
        A, _ = self.theta_relation
        if self.kind == "base":
            return x[0]
        return 2 * x[0] + A * x[1]

    def inverse(self, x: Elt) -> Elt:
        if self.kind == "base":
            return 1 / x[0], Fraction(0)
        n = self.norm(x)
        s = self.sigma(x)
        return s[0] / n, s[1] / n

    @property
    def uniformizer(self) -> Elt:
        if self.kind == "ramified":
            return Fraction(0), Fraction(1)
        return Fraction(self.p), Fraction(0)

    @lru_cache(maxsize=None)
    def pi_power(self, n: int) -> Elt:
        pi = self.uniformizer
        if n < 0:
            pi = self.inverse(pi)
            n = -n
        out = (Fraction(1), Fraction(0))
        for _ in range(n):
            out = self.mul(out, pi)
        return out

    @property
    def uniformizer_norm(self) -> Fraction:
        return self.norm(self.uniformizer)

    def valuation(self, x: Elt) -> int:
        """Normalized valuation of K (uniformizer has valuation 1)."""
        if self.kind == "base":
            return val(x[0], self.p)
        return val(self.norm(x), self.p) // self.f

    def split(self, x: Elt) -> tuple[int, Elt]:
        """x = pi^v * u with u a unit."""
        v = self.valuation(x)
        return v, self.mul(x, self.pi_power(-v))

    def is_integral(self, x: Elt) -> bool:
        return all(c == 0 or val(c, self.p) >= 0 for c in x)


# finite quotients O/p^t


@dataclass(frozen=True)
class ResidueRing:
    """O_K / p^t with elements encoded as a * mod_b + b."""

    field: LocalFieldSpec
    level: int

    @property
    def moduli(self) -> tuple[int, int]:
        p, t = self.field.p, self.level
        if self.field.kind == "base":
            return p**t, 1
        if self.field.kind == "unramified":
            return p**t, p**t
        return p ** ((t + 1) // 2), p ** (t // 2)

    @property
    def size(self) -> int:
        ma, mb = self.moduli
        return ma * mb

    def encode(self, a, b=0) -> int:
        ma, mb = self.moduli
        return (rational_mod(a, ma)) * mb + (rational_mod(b, mb) if mb > 1 else 0)

    def encode_elt(self, x: Elt) -> int:
        return self.encode(x[0], x[1])

    def decode(self, idx: int) -> tuple[int, int]:
        _, mb = self.moduli
        return divmod(idx, mb)

    @cached_property
    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        ma, mb = self.moduli
        idx = np.arange(ma * mb, dtype=np.int64)
        return idx // mb, idx % mb

    def mul_arrays(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        A, B = self.field.theta_relation
        ma, mb = self.moduli
        a, b = self.coords[0][i], self.coords[1][i]
        c, d = self.coords[0][j], self.coords[1][j]
        bd = b * d % ma
        ra = (a * c + B * bd) % ma
        rb = (a * d + b * c + A * bd) % mb
        return ra * mb + rb

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_arrays(np.array([i]), np.array([j]))[0])

    def pow(self, i: int, e: int) -> int:
        out, base = self.encode(1), i
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def unit_mask(self) -> np.ndarray:
        p = self.field.p
        a, b = self.coords
        if self.field.kind == "unramified":
            return (a % p != 0) | (b % p != 0)
        return a % p != 0

    def unit_count(self) -> int:
        p, t = self.field.p, self.level
        if self.field.kind == "unramified":
            return (p * p - 1) * p ** (2 * (t - 1))
        return (p - 1) * p ** (t - 1)

    def residue_basis(self) -> list[Elt]:
        one = (Fraction(1), Fraction(0))
        if self.field.kind == "unramified":
            return [one, (Fraction(0), Fraction(1))]
        return [one]

    def principal_generator(self, j: int, u: Elt) -> int:
        """Index of 1 + u*pi^j."""
        K = self.field
        x = K.add((Fraction(1), Fraction(0)), K.mul(u, K.power(K.uniformizer, j)))
        return self.encode_elt(x)

    def residue_generator(self) -> int | None:
        """Lift of a generator of the residue field's multiplicative group."""
        K = self.field
        p = K.p
        if K.kind != "unramified":
            if p == 2:
                return None
            return self.encode(primitive_root(p))
        small = ResidueRing(K, 1)
        order = p * p - 1
        for idx in range(1, small.size):
            if not small.unit_mask()[idx]:
                continue
            x, k = idx, 1
            while x != small.encode(1):
                x = small.mul(x, idx)
                k += 1
            if k == order:
                a, b = small.decode(idx)
                return self.encode(a, b)
        raise AssertionError("no generator of the residue field")


# Smith normal form over Z with transforms


def smith_normal_form(M: list[list[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diag, V, Vinv) with U*M*V diagonal for some unimodular U."""
    A = [row[:] for row in M]
    n_rows, n_cols = len(A), len(A[0])
    V = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    Vi = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def col_op(i, j, k):
        # column_j += k * column_i
        for row in A:
            row[j] += k * row[i]
        for row in V:
            row[j] += k * row[i]
        Vi[i] = [x - k * y for x, y in zip(Vi[i], Vi[j])]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_neg(i):
        for row in A:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]
        Vi[i] = [-x for x in Vi[i]]

    for s in range(min(n_rows, n_cols)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(s, n_rows) for j in range(s, n_cols) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            A[s], A[pi] = A[pi], A[s]
            col_swap(s, pj)
            piv = A[s][s]
            done = True
            for i in range(s + 1, n_rows):
                qt = A[i][s] // piv
                if qt:
                    A[i] = [x - qt * y for x, y in zip(A[i], A[s])]
                if A[i][s]:
                    done = False
            for j in range(s + 1, n_cols):
                qt = A[s][j] // piv
                if qt:
                    col_op(s, j, -qt)
                if A[s][j]:
                    done = False
            if not done:
                continue
            bad = [(i, j) for i in range(s + 1, n_rows) for j in range(s + 1, n_cols) if A[i][j] % piv]
            if not bad:
                break
            i, _ = bad[0]
            A[s] = [x + y for x, y in zip(A[s], A[i])]
        if A[s][s] < 0:
            col_neg(s)
    diag = [A[i][i] for i in range(min(n_rows, n_cols))]
    return diag, V, Vi


# unit group model


@dataclass(eq=False)
class UnitGroupModel:
    field: LocalFieldSpec
    level: int
    ring: ResidueRing
    orders: tuple[int, ...]
    generators: tuple[int, ...]
    dlog: np.ndarray  # (ring.size, len(orders)); rows of non-units are -1
    filtration: tuple[tuple[int, tuple[int, ...]], ...]  # (j, indices of 1 + u pi^j)

    @property
    def structure(self) -> list[tuple[tuple[int, int], int]]:
        return [(self.ring.decode(g), d) for g, d in zip(self.generators, self.orders)]

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.orders) if self.orders else 1

    def log(self, x: Elt) -> np.ndarray:
        idx = self.ring.encode_elt(x)
        row = self.dlog[idx]
        if len(row) and row[0] < 0:
            raise ValueError(f"{x} is not a unit")
        return row

    def unit_indices(self) -> np.ndarray:
        return np.nonzero(self.ring.unit_mask())[0]


ENUMERATION_CAP = 10**7


def build_unit_group(field: LocalFieldSpec, level: int, cap: int = ENUMERATION_CAP) -> UnitGroupModel:
    if level < 1:
        raise ValueError("level must be positive")
    ring = ResidueRing(field, level)
    if ring.unit_count() > cap:
        raise EnumerationTooLarge(f"unit group of order {ring.unit_count()} exceeds cap {cap}")
    return _build_cached(field, level)


@lru_cache(maxsize=64)
def _build_cached(field: LocalFieldSpec, level: int) -> UnitGroupModel:
    ring = ResidueRing(field, level)
    one = ring.encode(1)

    gens: list[int] = []
    filtration = []
    res = ring.residue_generator()
    if res is not None:
        gens.append(res)
    for j in range(1, level):
        step = tuple(ring.principal_generator(j, u) for u in ring.residue_basis())
        filtration.append((j, step))
        gens.extend(step)
    m = len(gens)

    # incremental enumeration: elements of <g_1..g_i> with exponent vectors
    pos = np.full(ring.size, -1, dtype=np.int64)
    elems = np.array([one], dtype=np.int64)
    vecs = np.zeros((1, m), dtype=np.int64)
    pos[one] = 0
    relations = []
    for i, g in enumerate(gens):
        x, r = g, 1
        while pos[x] < 0:
            x = ring.mul(x, g)
            r += 1
        rel = [0] * m
        rel[i] = r
        for k in range(i):
            rel[k] = -int(vecs[pos[x], k])
        relations.append(rel)
        blocks_e, blocks_v = [elems], [vecs]
        cur = elems
        for s in range(1, r):
            cur = ring.mul_arrays(cur, np.full(len(cur), g, dtype=np.int64))
            v = vecs.copy()
            v[:, i] = s
            blocks_e.append(cur)
            blocks_v.append(v)
        elems = np.concatenate(blocks_e)
        vecs = np.concatenate(blocks_v)
        pos[elems] = np.arange(len(elems))
    if len(elems) != ring.unit_count():
        raise AssertionError("generators do not span the unit group")

    if m == 0:
        dlog = np.zeros((ring.size, 0), dtype=np.int64)
        return UnitGroupModel(field, level, ring, (), (), dlog, tuple(filtration))

    diag, V, Vi = smith_normal_form(relations)
    # largest invariant factor first
    keep = [j for j, d in enumerate(diag) if d != 1][::-1]
    orders = tuple(diag[j] for j in keep)
    Vk = np.array([[V[i][j] for j in keep] for i in range(m)], dtype=object)
    snf = (vecs.astype(object) @ Vk) if keep else np.zeros((len(vecs), 0), dtype=object)
    snf = np.array(snf % np.array(orders, dtype=object), dtype=np.int64).reshape(len(vecs), len(keep))
    dlog = np.full((ring.size, len(keep)), -1, dtype=np.int64)
    dlog[elems] = snf

    # SNF generator j is prod g_i^{Vinv[j][i]}
    snf_gens = []
    for j in keep:
        x = one
        for i, g in enumerate(gens):
            x = ring.mul(x, ring.pow(g, Vi[j][i] % len(elems)))
        snf_gens.append(x)
    model = UnitGroupModel(field, level, ring, orders, tuple(snf_gens), dlog, tuple(filtration))
    for k, g in enumerate(snf_gens):
        expect = np.zeros(len(keep), dtype=np.int64)
        expect[k] = 1
        if not np.array_equal(dlog[g], expect):
            raise AssertionError("SNF generators do not match the dlog table")
    return model

