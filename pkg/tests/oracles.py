"""Independent brute-force references written without the package: plain integers and complex floats."""
from __future__ import annotations

import cmath
from collections import Counter
import itertools
from math import gcd


def units_mod(n: int) -> list[int]:
    return [x for x in range(1, n) if gcd(x, n) == 1]


def _generators(p: int, t: int) -> list[int]:
    """Generators of (Z/p^t)^x as a product of cyclic groups."""
    n = p**t
    if p == 2:
        return [n - 1, 5 % n] if t >= 3 else ([n - 1] if t == 2 else [])
    phi = (p - 1) * p ** (t - 1)
    for g in range(2, n):
        if gcd(g, p) == 1 and all(pow(g, phi // q, n) != 1 for q in _prime_factors(phi)):
            return [g]
    return [1]


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _order_mod(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def dirichlet_log_table(p: int, t: int) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    n = p**t
    gens = _generators(p, t)
    orders = [_order_mod(g, n) for g in gens]
    table: dict[int, tuple[int, ...]] = {1 % n: tuple(0 for _ in gens)} if n > 1 else {}
    frontier = [(1, tuple(0 for _ in gens))]
    for i, g in enumerate(gens):
        nxt = []
        for x, e in frontier:
            y = x
            for j in range(orders[i]):
                ee = list(e)
                ee[i] = j
                table[y] = tuple(ee)
                nxt.append((y, tuple(ee)))
                y = y * g % n
        frontier = nxt
    return orders, table


def _subgroup(gens: list[int], n: int) -> set[int]:
    out, frontier = {1 % n}, [1 % n]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % n
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def principal_unit_generators(p: int, t: int, c: int) -> list[int]:
    """Generators of {x = 1 mod p^c} in (Z/p^t)^x, confirmed by enumerating the subgroup they generate."""
    n = p**t
    target = {x for x in range(1, n, p**c)} if c >= 1 else set(units_mod(n))
    for gens in ([1 + p**c], [n - 1, 1 + p**c], [n - 1, 5 % n]):
        gens = [g % n for g in gens]
        if _subgroup(gens, n) == target:
            return gens
    raise AssertionError((p, t, c))


def dirichlet_character_invariants(p: int, t: int, power: int) -> Counter:
    """Counter of (a(chi), a(chi^power), order of chi) over all characters of (Z/p^t)^x."""
    n = p**t
    orders, table = dirichlet_log_table(p, t)
    L = 1
    for d in orders:
        L = L * d // gcd(L, d)
    gens = {c: [table[g] for g in principal_unit_generators(p, t, c)] for c in range(1, t)}

    def value(ex, logs) -> int:
        return sum(e * (L // d) * k for e, d, k in zip(ex, orders, logs)) % L

    def conductor(ex) -> int:
        if all(e % d == 0 for e, d in zip(ex, orders)):
            return 0
        return next((c for c in range(1, t) if all(value(ex, g) == 0 for g in gens[c])), t)

    out = Counter()
    for ex in itertools.product(*(range(d) for d in orders)):
        powered = tuple(e * power % d for e, d in zip(ex, orders))
        order = 1
        for e, d in zip(ex, orders):
            k = d // gcd(e, d)
            order = order * k // gcd(order, k)
        out[(conductor(ex), conductor(powered), order)] += 1
    return out


def finite_field(p: int, r: int):
    """(elements, mul, trace) for F_p or F_{p^2} = F_p[x]/(x^2 - s) (p odd) or (x^2 + x + 1) (p = 2)."""
    if r == 1:
        els = [(a, 0) for a in range(1, p)]

        def mul(x, y):
            return (x[0] * y[0] % p, 0)

        def tr(x):
            return x[0] % p

        return els, mul, tr
    if p == 2:
        def mul(x, y):
            a, b = x
            c, d = y
            # x^2 = x + 1
            return ((a * c + b * d) % 2, (a * d + b * c + b * d) % 2)

        def tr(x):
            return x[1] % 2
    else:
        s = next(s for s in range(2, p) if pow(s, (p - 1) // 2, p) == p - 1)

        def mul(x, y):
            a, b = x
            c, d = y
            return ((a * c + s * b * d) % p, (a * d + b * c) % p)

        def tr(x):
            return 2 * x[0] % p
    els = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    return els, mul, tr


def gauss_sums(p: int, r: int) -> list[complex]:
    """G(chi, psi) for every character chi of F_q^x, psi(x) = e^{2 pi i Tr(x)/p}; index k = chi(g) = e^{2 pi i k/(q-1)}."""
    els, mul, tr = finite_field(p, r)
    q1 = len(els)
    g = next(x for x in els if _el_order(x, mul) == q1)
    one = (1, 0)
    logs = {}
    x = one
    for j in range(q1):
        logs[x] = j
        x = mul(x, g)
    out = []
    for k in range(q1):
        s = sum(cmath.exp(2j * cmath.pi * (k * logs[x] / q1 + tr(x) / p)) for x in els)
        out.append(s)
    return out


def _el_order(x, mul) -> int:
    one = (1, 0)
    k, y = 1, x
    while y != one:
        y = mul(y, x)
        k += 1
    return k


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1

