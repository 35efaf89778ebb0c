"""Truncated p-adic integers, Morita's p-adic gamma function, and the ring Z_p[pi]
with pi^{p-1} = -p used to test the Gross-Koblitz formula."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import rational_mod


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PAdicInt:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @classmethod
    def from_rational(cls, x, p: int, precision: int) -> "PAdicInt":
        return cls(p, precision, rational_mod(Fraction(x), p**precision))

    def _lift(self, other) -> "PAdicInt":
        if isinstance(other, PAdicInt):
            if other.p != self.p:
                raise ValueError("mixing primes")
            return other
        return PAdicInt.from_rational(other, self.p, self.precision)

    def _prec(self, other: "PAdicInt") -> int:
        return min(self.precision, other.precision)

    def __add__(self, other):
        other = self._lift(other)
        return PAdicInt(self.p, self._prec(other), self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self):
        return PAdicInt(self.p, self.precision, -self.residue)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        return PAdicInt(self.p, self._prec(other), self.residue * other.residue)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PAdicInt(self.p, self.precision, pow(self.residue, e, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> "PAdicInt":
        if not self.is_unit():
            raise ZeroDivisionError("inverse of a non-unit")
        return PAdicInt(self.p, self.precision, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def valuation(self) -> int | None:
        """Valuation, or None when the element is zero at this precision."""
        r = self.residue
        if r == 0:
            return None
        v = 0
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._lift(other)
        if not isinstance(other, PAdicInt):
            return NotImplemented
        m = self.p ** self._prec(other)
        return self.p == other.p and (self.residue - other.residue) % m == 0

    def __hash__(self):
        return hash((self.p, self.precision, self.residue))

    def __repr__(self):
        return f"{self.residue} + O({self.p}^{self.precision})"


def teichmuller(x: int, p: int, precision: int) -> PAdicInt:
    """The (p-1)-th root of unity congruent to x mod p."""
    if x % p == 0:
        raise ValueError("Teichmüller lift of zero residue")
    m = p**precision
    y = x % m
    while True:
        z = pow(y, p, m)
        if z == y:
            return PAdicInt(p, precision, y)
        y = z


@lru_cache(maxsize=32)
def _gamma_table(p: int, precision: int) -> tuple[int, ...]:
    # table[n] = (-1)^n prod_{0<j<n, p∤j} j  mod p^precision, for 1 <= n <= p^precision
    m = p**precision
    out = [0, m - 1]
    prod = 1
    for n in range(2, m + 1):
        j = n - 1
        if j % p:
            prod = prod * j % m
        out.append(prod if n % 2 == 0 else (-prod) % m)
    return tuple(out)


def gamma_p(x) -> PAdicInt:
    """Morita's p-adic gamma function, continuous on Z_p."""
    if not isinstance(x, PAdicInt):
        raise TypeError("gamma_p takes a PAdicInt; use PAdicInt.from_rational for a/k")
    m = x.modulus
    n = x.residue or m
    return PAdicInt(x.p, x.precision, _gamma_table(x.p, x.precision)[n])


# Z_p[pi], pi^{p-1} = -p


@dataclass(frozen=True)
class RamifiedPAdicElement:
    """sum c_j pi^j (j < p-1) known modulo pi^M."""

    p: int
    precision: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.p - 1:
            raise ValueError("need p-1 coefficients")
        n = self._digits
        mods = tuple(c % self.p ** self._coef_prec(j, n) for j, c in enumerate(self.coefficients))
        object.__setattr__(self, "coefficients", mods)

    @property
    def _digits(self) -> int:
        return self.precision

    def _coef_prec(self, j: int, n: int) -> int:
        # c_j p^k pi^j has valuation (p-1)k + j; keep k with (p-1)k + j < M
        e = self.p - 1
        return max(0, -(-(n - j) // e))

    @classmethod
    def constant(cls, x, p: int, precision: int) -> "RamifiedPAdicElement":
        if isinstance(x, PAdicInt):
            x = x.residue
        n = -(-precision // (p - 1))
        return cls(p, precision, (rational_mod(Fraction(x), p**n),) + (0,) * (p - 2))

    @classmethod
    def uniformizer(cls, p: int, precision: int) -> "RamifiedPAdicElement":
        if p == 2:
            return cls(p, precision, (-2,))
        return cls(p, precision, (0, 1) + (0,) * (p - 3))

    def _check(self, other):
        if not isinstance(other, RamifiedPAdicElement) or other.p != self.p:
            raise TypeError("incompatible ramified elements")

    def __add__(self, other):
        self._check(other)
        return RamifiedPAdicElement(
            self.p, min(self.precision, other.precision), tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self):
        return RamifiedPAdicElement(self.p, self.precision, tuple(-a for a in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, PAdicInt)):
            other = RamifiedPAdicElement.constant(other, self.p, self.precision)
        self._check(other)
        e = self.p - 1
        acc = [0] * (2 * e)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    acc[i + j] += a * b
        out = acc[:e]
        for k in range(e, 2 * e - 1):
            out[k - e] -= self.p * acc[k]
        return RamifiedPAdicElement(self.p, min(self.precision, other.precision), tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RamifiedPAdicElement.constant(1, self.p, self.precision)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def valuation(self) -> int:
        """pi-adic valuation, capped at the precision."""
        e = self.p - 1
        best = self.precision
        for j, c in enumerate(self.coefficients):
            if c:
                k = 0
                while c % self.p == 0:
                    c //= self.p
                    k += 1
                best = min(best, e * k + j)
        return best

    def with_precision(self, precision: int) -> "RamifiedPAdicElement":
        return RamifiedPAdicElement(self.p, precision, self.coefficients)

    def divide_by_pi(self) -> "RamifiedPAdicElement":
        """x / pi for x of positive valuation (loses one digit of precision)."""
        c = self.coefficients
        if c[0] % self.p:
            raise PrecisionError("element is not divisible by pi")
        # c_0 = p * d, and p / pi = -pi^{p-2}
        d = c[0] // self.p
        new = list(c[1:]) + [0]
        new[-1] -= d
        return RamifiedPAdicElement(self.p, self.precision - 1, tuple(new))

    def unit_inverse(self) -> "RamifiedPAdicElement":
        c0 = self.coefficients[0]
        if c0 % self.p == 0:
            raise ZeroDivisionError("not a unit")
        n = -(-self.precision // (self.p - 1))
        z = RamifiedPAdicElement.constant(pow(c0, -1, self.p**n), self.p, self.precision)
        two = RamifiedPAdicElement.constant(2, self.p, self.precision)
        for _ in range(self.precision.bit_length() + 2):
            z = z * (two - self * z)
        return z

    def __eq__(self, other):
        if not isinstance(other, RamifiedPAdicElement):
            return NotImplemented
        return (self - other).valuation() >= min(self.precision, other.precision)

    def __hash__(self):
        return hash((self.p, self.coefficients))


def primitive_pth_root(p: int, precision: int) -> RamifiedPAdicElement:
    """The p-th root of unity congruent to 1 + pi mod pi^2, by Newton iteration."""
    extra = 3 * p
    M = precision + extra
    one = RamifiedPAdicElement.constant(1, p, M)
    y = RamifiedPAdicElement.uniformizer(p, M)
    from math import comb

    def g(y):
        # ((1 + y)^p - 1) / y
        out = RamifiedPAdicElement.constant(0, p, M)
        yk = one
        for k in range(1, p + 1):
            out = out + yk * comb(p, k)
            yk = yk * y
        return out

    def dg(y):
        out = RamifiedPAdicElement.constant(0, p, M)
        yk = one
        for k in range(2, p + 1):
            out = out + yk * (comb(p, k) * (k - 1))
            yk = yk * y
        return out

    for _ in range(4 * precision.bit_length() + 8):
        gy = g(y)
        d = dg(y)
        num, den = gy, d
        for _ in range(d.valuation()):
            num, den = num.divide_by_pi(), den.divide_by_pi()
        new = (y - num * den.unit_inverse()).with_precision(M)
        # truncation noise sits above M - 2p; Newton pads it back in
        if (new - y).valuation() >= M - 2 * p:
            y = new
            break
        y = new
    z = (one + y).with_precision(precision)
    if (z**p - RamifiedPAdicElement.constant(1, p, precision)).valuation() < precision:
        raise PrecisionError("Newton iteration for the p-th root of unity did not converge")
    if (z - one.with_precision(precision) - RamifiedPAdicElement.uniformizer(p, precision)).valuation() < 2:
        raise PrecisionError("root is not congruent to 1 + pi")
    return z


@dataclass(frozen=True)
class GrossKoblitzDefect:
    p: int
    a: int
    precision: int
    sign: int
    valuation: int
    other_valuation: int


def padic_gauss_sum(p: int, a: int, precision: int) -> RamifiedPAdicElement:
    """sum over x in F_p^x of omega(x)^{-a} zeta^x, omega the Teichmüller character."""
    M = precision
    n = -(-M // (p - 1)) + 1
    zeta = primitive_pth_root(p, M)
    G = RamifiedPAdicElement.constant(0, p, M)
    zx = RamifiedPAdicElement.constant(1, p, M)
    for x in range(1, p):
        zx = zx * zeta
        G = G + zx * teichmuller(x, p, n) ** (-a)
    return G


def gamma_at(x, p: int, precision: int) -> PAdicInt:
    n = -(-precision // (p - 1)) + 1
    return gamma_p(PAdicInt.from_rational(Fraction(x), p, n))


def gross_koblitz_defect(p: int, a: int, precision: int) -> GrossKoblitzDefect:
    """Compare sum_x omega(x)^{-a} zeta^x with s pi^a Gamma_p(a/(p-1)) for s = +-1."""
    if p == 2:
        raise ValueError("odd p only")
    if not 1 <= a <= p - 2:
        raise ValueError(f"a must lie in 1..{p - 2}")
    if precision < 2 * (p - 1):
        raise ValueError("precision must be at least 2(p-1)")
    M = precision
    G = padic_gauss_sum(p, a, M)
    rhs = RamifiedPAdicElement.uniformizer(p, M) ** a * gamma_at(Fraction(a, p - 1), p, M)
    vals = {s: (G - rhs * s).valuation() for s in (1, -1)}
    best = max(vals, key=lambda s: vals[s])
    return GrossKoblitzDefect(p, a, M, best, vals[best], vals[-best])
