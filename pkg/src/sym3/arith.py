"""Small integer helpers: factorization, valuations, modular inverses."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return dict(_factor(n))


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == {n: 1}


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def val(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** val(x, p)


def rational_mod(x, modulus: int) -> int:
    """Image of a rational with denominator prime to modulus in Z/modulus."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def padic_fractional(x, p: int) -> Fraction:
    """The p-adic fractional part {x}_p in [0, 1)."""
    x = Fraction(x)
    v = val(x, p) if x else 0
    if v >= 0:
        return Fraction(0)
    pk = p ** (-v)
    num = x * pk
    return Fraction(rational_mod(num, pk), pk)


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    k, x = 1, a
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    raise ValueError(p)


def smallest_nonresidue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise ValueError(p)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    out = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0
