"""The variance number eps(sym^3 pi_p tensor chi_p) / eps(sym^3 pi_p) at p.

The definitional value is a ratio of Gauss-sum epsilon factors of the summands of
the symmetric cube. Closed forms are evaluated separately from additive
parameters and formal values at p, then compared with it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .characters import (
    AdditiveCharacter,
    MultiplicativeCharacter,
    inflate_by_norm,
    norm_residue_character,
)
from .cyclotomic import CyclotomicNumber, FormalScalar, sqrt_prime, zeta
from .epsilon import epsilon, solve_additive_parameter
from .gauss import FiniteFieldCharacterPair, finite_field_character, gauss_sum, lift_pair
from .local import LocalFieldSpec
from .padic import RamifiedPAdicElement, gamma_at, padic_gauss_sum
from .wd import (
    DomainError,
    LocalParameter,
    PrincipalSeries,
    Special,
    SupercuspidalDihedral,
    Sym3Parameter,
    TypeClass,
    classify_type,
    descend_through_norm,
    hypothesis_violations,
    p_minimality,
    sym3_parameter,
    twist_for_prime,
)

UNITARY = "unitary"
DYADIC_HALVED = "dyadic-halved"


def local_epsilon(chi: MultiplicativeCharacter, convention: str = UNITARY) -> FormalScalar:
    """eps(chi, phi) for the standard additive character of chi's field.

    With the dyadic-halved convention, ramified characters at p = 2 get an extra
    factor 1/2; this is the normalization in which the closed forms at 2 are written.
    """
    e = epsilon(chi, AdditiveCharacter.standard(chi.field))
    if convention == DYADIC_HALVED and chi.p == 2 and chi.conductor() > 0:
        e = e / 2
    return e


def wd_determinant(param: Sym3Parameter) -> FormalScalar:
    """det(-Phi p^{-s} | V^I / (ker N')^I) at s = 1/2."""
    p = param.summands[0].character.p
    out = FormalScalar.one(p)
    if param.nilpotent_rank == 0:
        return out
    for j, s in enumerate(param.summands):
        if j == param.kernel_index or s.induced or not s.character.is_unramified():
            continue
        out = out * (-s.character.at_uniformizer) * FormalScalar.make(1, p, Fraction(-1, 2))
    return out


def twist_parameter(param: Sym3Parameter, chi: MultiplicativeCharacter) -> Sym3Parameter:
    out = []
    for s in param.summands:
        if s.induced:
            out.append(type(s)(s.character * inflate_by_norm(chi, s.character.field), True))
        else:
            out.append(type(s)(s.character * chi))
    return Sym3Parameter(tuple(out), param.nilpotent_rank, param.kernel_index)


@dataclass
class EpsilonQuotient:
    numerators: list[MultiplicativeCharacter]
    denominators: list[MultiplicativeCharacter]
    extra: FormalScalar

    def value(self, convention: str = UNITARY) -> FormalScalar:
        out = self.extra
        for c in self.numerators:
            out = out * local_epsilon(c, convention)
        for c in self.denominators:
            out = out / local_epsilon(c, convention)
        return out


def variance_quotient(lp: LocalParameter, chi: MultiplicativeCharacter, tc: TypeClass | None = None) -> EpsilonQuotient:
    param = sym3_parameter(lp)
    if isinstance(lp, SupercuspidalDihedral):
        tc = tc or classify_type(lp)
        K = lp.K
        chi_k = inflate_by_norm(chi, K)
        ke = lp.kappa * lp.epsilon_prime()
        if tc.name == "III":
            phi = tc.phis[0]
            w = norm_residue_character(K)
            return EpsilonQuotient(
                [phi * w * chi, phi * chi, ke * chi_k], [phi * w, phi, ke], FormalScalar.one(lp.p)
            )
        k3 = lp.kappa**3
        return EpsilonQuotient([k3 * chi_k, ke * chi_k], [k3, ke], FormalScalar.one(lp.p))
    twisted = twist_parameter(param, chi)
    extra = wd_determinant(twisted) / wd_determinant(param)
    return EpsilonQuotient(
        [s.character for s in twisted.summands], [s.character for s in param.summands], extra
    )


def induced_route(lp: SupercuspidalDihedral, chi: MultiplicativeCharacter) -> FormalScalar:
    """The same ratio through Ind(kappa^3) on K, without descending kappa^3."""
    K = lp.K
    chi_k = inflate_by_norm(chi, K)
    k3 = lp.kappa**3
    ke = lp.kappa * lp.epsilon_prime()
    return EpsilonQuotient([k3 * chi_k, ke * chi_k], [k3, ke], FormalScalar.one(lp.p)).value()


# Gamma_p-valued forms


@dataclass(frozen=True)
class GammaRatio:
    """[G(w^{-a_num}) / G(w^{-a_den})]^power, G the Gauss sum of F_p against x -> zeta_p^x and
    w the Teichmüller character; it equals (pi^{a_num-a_den} Gamma_p(a_num/(p-1)) / Gamma_p(a_den/(p-1)))^power."""

    p: int
    a_num: int
    a_den: int
    power: int = 1

    def gauss(self, a: int) -> CyclotomicNumber:
        chi = finite_field_character(self.p, 1, Fraction(-a, self.p - 1))
        return gauss_sum(FiniteFieldCharacterPair(chi))

    def exact(self) -> CyclotomicNumber:
        return (self.gauss(self.a_num) / self.gauss(self.a_den)) ** self.power

    def padic_defects(self, precision: int) -> list[int]:
        """pi-adic valuations of G(w^{-a}) + pi^a Gamma_p(a/(p-1)) for both exponents."""
        p = self.p
        out = []
        for a in (self.a_num, self.a_den):
            G = padic_gauss_sum(p, a, precision)
            rhs = RamifiedPAdicElement.uniformizer(p, precision) ** a * gamma_at(Fraction(a, p - 1), p, precision)
            out.append((G + rhs).valuation())
        return out

    def arguments(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a_num, self.p - 1), Fraction(self.a_den, self.p - 1)

    def render(self) -> str:
        x, y = self.arguments()
        e = Fraction(self.power * (self.a_num - self.a_den), self.p - 1)
        return f"(-{self.p})^({e}) [Γ_{self.p}({x}) / Γ_{self.p}({y})]^{self.power}"


@dataclass
class GammaExpression:
    prefactor: FormalScalar
    ratios: list[GammaRatio]

    def exact(self) -> FormalScalar:
        out = self.prefactor
        for r in self.ratios:
            out = out * r.exact()
        return out

    def padic_ok(self, precision: int = 12) -> bool:
        return all(v >= precision for r in self.ratios for v in r.padic_defects(precision))

    def render(self) -> str:
        return " · ".join([self.prefactor.render()] + [r.render() for r in self.ratios])


def _teichmuller_exponent(lam: MultiplicativeCharacter) -> int | None:
    """a with lam|_{O^x} = w^{a} o N through the embedding e^{2 pi i/(p-1)} -> w(g), or None."""
    p = lam.p
    if lam.conductor() != 1:
        return None
    if lam.field.kind == "base":
        k = lam.at_level(1).unit_exponents[0]
    elif lam.field.kind == "unramified":
        down = descend_through_norm(lam.with_uniformizer(FormalScalar.one(p)))
        if not down:
            return None
        k = down[0].at_level(1).unit_exponents[0]
    else:
        return None
    return int(k * (p - 1)) % (p - 1)


def gamma_expression(q: EpsilonQuotient) -> GammaExpression | None:
    """Split the quotient into exact factors and tame Gauss-sum ratios over F_p.

    Numerator i is paired with denominator i; a pair of conductor-one characters
    descending to F_p becomes a Gross-Koblitz ratio, and all else stays exact."""
    if not q.denominators:
        return None
    p = q.numerators[0].p
    if p == 2:
        return None
    pre = q.extra
    ratios = []
    for i, num in enumerate(q.numerators):
        den = q.denominators[i] if i < len(q.denominators) else None
        an = _teichmuller_exponent(num)
        ad = _teichmuller_exponent(den) if den is not None else None
        if an is not None and ad is not None:
            # eps = q^{-1/2} tau with tau = G(lam^{-1}) over F_q; over F_{p^2} the ratio squares
            power = num.field.f
            ratios.append(GammaRatio(p, an, ad, power))
            continue
        pre = pre * local_epsilon(num)
        if den is not None:
            pre = pre / local_epsilon(den)
    for den in q.denominators[len(q.numerators):]:
        pre = pre / local_epsilon(den)
    if not ratios:
        return None
    return GammaExpression(pre, ratios)


@dataclass
class LiftedRatioCheck:
    """tau_2(lam chi) / tau_2(lam) for lam, chi on F_p^x lifted by the norm, against {tau_1(lam chi) / tau_1(lam)}^2,
    Gross-Koblitz defects of the F_p factors, and the unreduced form -p [Gamma_p(x + t) / Gamma_p(x)]^2."""

    p: int
    exponents: tuple[int, int]
    lifted: CyclotomicNumber
    squared: CyclotomicNumber
    padic_defects: list[int]
    precision: int
    unreduced_matches: bool

    @property
    def exact_ok(self) -> bool:
        return self.lifted == self.squared

    @property
    def padic_ok(self) -> bool:
        return all(v >= self.precision for v in self.padic_defects)


def lifted_ratio_check(p: int, base: Fraction, twist: Fraction = Fraction(1, 2), precision: int = 12) -> LiftedRatioCheck:
    """base and twist are angles on the fixed generator of F_p^x, i.e. Gamma_p arguments; base may exceed 1."""
    base, twist = Fraction(base), Fraction(twist)
    if (base * (p - 1)).denominator != 1 or (twist * (p - 1)).denominator != 1:
        raise ValueError("angles must be multiples of 1/(p-1)")
    a_den = int(base * (p - 1)) % (p - 1)
    a_num = int((base + twist) * (p - 1)) % (p - 1)
    if a_den == 0 or a_num == 0:
        raise ValueError("both characters must be nontrivial")
    # tau(w^a) = G(w^{-a})
    pairs = [FiniteFieldCharacterPair(finite_field_character(p, 1, Fraction(-a, p - 1))) for a in (a_num, a_den)]
    g1 = [gauss_sum(x) for x in pairs]
    g2 = [gauss_sum(lift_pair(x)) for x in pairs]
    ratio = GammaRatio(p, a_num, a_den)
    # (pi^{a_num - a_den})^2 = (-p)^e
    e = 2 * (a_num - a_den) // (p - 1)
    digits = 5
    g = lambda x: gamma_at(x, p, (p - 1) * (digits - 1))  # noqa: E731
    actual = g(Fraction(a_num, p - 1)) ** 2
    stated = -p * g(base + twist) ** 2 * g(Fraction(a_den, p - 1)) ** 2 / g(base) ** 2
    if e >= 0:
        actual = actual * (-p) ** e
    else:
        stated = stated * (-p) ** (-e)
    unreduced = (actual - stated).residue % p ** (digits - 2) == 0
    return LiftedRatioCheck(p, (a_num, a_den), g2[0] / g2[1], (g1[0] / g1[1]) ** 2, ratio.padic_defects(precision), precision, unreduced)


# closed forms


@dataclass
class ClosedForm:
    value: FormalScalar | None
    rule: str
    applicable: bool = True
    alternatives: dict[str, FormalScalar] = field(default_factory=dict)
    stated_gamma: str | None = None
    up_to_sign: bool = False
    notes: list[str] = field(default_factory=list)


def _sqrt2() -> CyclotomicNumber:
    return sqrt_prime(2)


def _i() -> CyclotomicNumber:
    return zeta(1, 4)


def _param(chi: MultiplicativeCharacter) -> tuple:
    return solve_additive_parameter(chi, AdditiveCharacter.standard(chi.field))


def _prod(K: LocalFieldSpec, xs):
    out = K.elt(1)
    for x in xs:
        out = K.mul(out, x)
    return out


def _principal_closed(lp: PrincipalSeries, chi: MultiplicativeCharacter) -> ClosedForm:
    p, k, N = lp.p, lp.weight, lp.level_exponent
    w = lp.omega
    m = w.unit_order()
    Qp = LocalFieldSpec(p)
    a3 = lambda e, half: FormalScalar.make(1, p, half, e)  # noqa: E731
    wp = w(Qp.elt(p))
    if p >= 5:
        if N > 1:
            c = _prod(Qp, [_param(w**i) for i in (1, 2, 3)])
            unit = 1 if p % 4 == 1 else _i()
            return ClosedForm(chi(c) * a3(3, Fraction(3 - 3 * k, 2)) * unit, "p >= 5, N_p > 1: chi_p(c) p^{(3-3k)/2} a_p^3 (times i if p = 3 mod 4)")
        if m == 2:
            return ClosedForm(a3(4, 2 - 2 * k) / wp**2, "N_p = 1, order 2: p^{2-2k} a_p^4 / omega(p)^2")
        if m == 4:
            return ClosedForm(a3(4, 3 - 2 * k) / (wp**2 * 4), "N_p = 1, order 4: p^{3-2k} a_p^4 / (4 omega(p)^2)")
        return ClosedForm(None, f"N_p = 1, order {m}: Gamma_p-valued", stated_gamma=f"order {m}")
    if p == 3:
        if N == 1:
            stmt = a3(4, 2 - 2 * k)
            return ClosedForm(stmt / wp**2, "N_3 = 1: 3^{2-2k} a_3^4 / omega(3)^2", alternatives={"without omega(3)^2": stmt})
        c1, c2 = _param(w), _param(w**2)
        c12 = Qp.mul(c1, c2)
        if m == 3:
            return ClosedForm(-chi(c12) * wp**3, "N_3 > 1, order 3: -chi_3(c_1 c_2) omega(3)^3")
        if m == 6:
            return ClosedForm(chi(c12) * a3(6, 3 - 3 * k) / wp**3, "N_3 > 1, order 6: 3^{3-3k} chi_3(c_1 c_2) a_3^6 / omega(3)^3")
        c = Qp.mul(c12, _param(w**3))
        return ClosedForm(chi(c) * a3(3, Fraction(3 - 3 * k, 2)) * _i(), "N_3 > 1, order > 6: i chi_3(c) 3^{(3-3k)/2} a_3^3")
    if N == 2:
        return ClosedForm(a3(8, 4 - 4 * k) / wp**4, "N_2 = 2: a_2^8 2^{4-4k} / omega(2)^4")
    if N == 3:
        return ClosedForm(-a3(4, -2 * k) * wp**4, "N_2 = 3: -a_2^4 omega(2)^4 / 2^{2k}")
    if N > 4:
        c = _prod(Qp, [_param(w**i) for i in (1, 2, 3)])
        return ClosedForm(chi(Qp.mul(Qp.elt(2), c)) * a3(6, 2 - 3 * k) * _i(), "N_2 > 4: i chi_{-1}(2c) 2^{2-3k} a_2^6")
    return ClosedForm(None, "N_2 = 4: no closed form", applicable=False)


def _special_closed(lp: Special) -> ClosedForm:
    p, k = lp.p, lp.weight
    if lp.twist is not None and not lp.twist.is_unramified():
        return ClosedForm(None, "ramified mu: no closed form", applicable=False)
    if p == 2:
        return ClosedForm(-FormalScalar.make(1, 2, Fraction(24 - 15 * k, 2), 15), "p = 2: -2^{(24-15k)/2} a_2^15")
    return ClosedForm(-FormalScalar.make(1, p, Fraction(8 - 3 * k, 2), 3), "-p^{(8-3k)/2} a_p^3")


def _sc_closed(lp: SupercuspidalDihedral, chi: MultiplicativeCharacter, tc: TypeClass) -> ClosedForm:
    K, p = lp.K, lp.p
    kappa = lp.kappa
    a = kappa.conductor()
    k3 = kappa**3
    ke = kappa * lp.epsilon_prime()
    chi_k = inflate_by_norm(chi, K)
    one = FormalScalar.one(p)
    problems = hypothesis_violations(lp) + list(p_minimality(lp).reasons)
    applicable = not problems

    def s1():
        return _param(k3)

    def s2():
        return _param(ke)

    def d():
        phi = tc.phis[0]
        w = norm_residue_character(K)
        Qp = LocalFieldSpec(p)
        return Qp.mul(_param(phi * w), _param(phi))

    def cf(value, rule, **kw):
        out = ClosedForm(value, rule, applicable, **kw)
        out.notes.extend(problems)
        return out

    if K.kind == "ramified":
        if p == 2:
            if a < K.delta + 1:
                return cf(None, "a(kappa) < delta + 1: no closed form")
            if K.delta == 2:
                return cf(one, "p = 2, delta = 2: 1")
            return cf(chi_k(K.mul(s1(), s2())), "p = 2, delta = 3: chi'(s)")
        if tc.name == "III":
            if p != 3:
                return cf(None, "Type III with ramified K at p >= 5 is excluded")
            if k3.conductor() > 1:
                sign = norm_residue_character(K)(LocalFieldSpec(3).elt(3))
                return cf(sign * chi(d()), "ramified Type III, a(kappa^3) > 1: (3, K/Q_3) chi_3(d)")
            return cf(one, "ramified Type III, a(kappa^3) <= 1: 1")
        Npi = K.uniformizer_norm
        value = chi(LocalFieldSpec(p).elt(Npi)) ** (k3.conductor() + ke.conductor())
        rule = "ramified Type I/II: chi_p(N(pi))^{a(kappa^3)+a(kappa eps')}"
        if p >= 5 or a % 2 == k3.conductor() % 2:
            stated = one
        else:
            stated = one * norm_residue_character(K)(LocalFieldSpec(p).elt(p))
        return cf(value, rule, alternatives={"stated value": stated})

    # unramified K
    if p == 2:
        if a > 3:
            if tc.name == "III":
                return cf(chi(d()) * chi_k(s2()), "p = 2, a(kappa) > 3, Type III: chi_{-1}(d) chi'(s_2)")
            return cf(chi_k(K.mul(s1(), s2())), "p = 2, a(kappa) > 3, Type I/II: chi'(s)")
        if a == 1:
            return cf(_dyadic_tame(lp, tc), "p = 2, a(kappa) = 1: d_1 (Type I/II) or d_2 (Type III)")
        return cf(None, f"p = 2, a(kappa) = {a}: no closed form")
    if a > 1:
        a3 = k3.conductor()
        if p >= 5 or a3 > 1:
            if tc.name == "III":
                return cf(chi(d()) * chi_k(s2()), "unramified, Type III: chi_p(d) chi'(s_2)")
            return cf(chi_k(K.mul(s1(), s2())), "unramified, Type I/II: chi'(s)")
        k3p = k3(K.uniformizer)
        if a3 == 0:
            return cf(k3p * chi_k(s2()), "p = 3, a(kappa^3) = 0: kappa^3(3) chi'(s_2)")
        if tc.name == "III":
            return cf(chi_k(s2()) / k3p, "p = 3, a(kappa^3) = 1, Type III: chi'(s_2) / kappa^3(3)")
        m = k3.unit_order()
        if m == 2:
            return cf(chi_k(s2()) / k3p, "p = 3, a(kappa^3) = 1, order 2: chi'(s_2) / kappa^3(3)")
        if m == 4:
            return cf(chi_k(s2()), "p = 3, a(kappa^3) = 1, order 4: chi'(s_2)")
        return cf(None, f"p = 3, a(kappa^3) = 1, order {m}: definitional only")
    return _tame_unramified(lp, tc, cf)


def _tame_unramified(lp: SupercuspidalDihedral, tc: TypeClass, cf) -> ClosedForm:
    p = lp.p
    m = lp.kappa.unit_order()
    one = FormalScalar.one(p)
    K = lp.K
    w_p = FormalScalar.make(-1, p)  # omega_{K/Q_p}(p) for unramified K
    if tc.name != "III":
        if (p - 1) % m == 0:
            m2 = lp.epsilon_prime().unit_order()
            return cf(None, "N_p = 2, m | p-1: Gamma_p-valued", stated_gamma=f"p^2 [Γ(1/{m}+1/{m2}+1/2) Γ(3/{m}+1/2) / (Γ(1/{m}+1/{m2}) Γ(3/{m}))]^2")
        if (p + 1) % m == 0:
            if (m % 2 == 1 and p % 4 == 1) or (m % 2 == 0 and ((p + 1) // m) % 2 == 1):
                return cf(one, "N_p = 2, m | p+1: 1")
        return cf(None, f"N_p = 2, m = {m}: no closed form")
    phi = tc.phis[0]
    phi2 = phi(LocalFieldSpec(p).elt(p)) ** 2
    base = phi2 * w_p
    k3_unram = (lp.kappa**3).is_unramified()
    if (p + 1) % m == 0:
        if k3_unram:
            if m % 2 == 1 and p % 4 == 1:
                return cf(-base, "N_p = 2, Type III, kappa^3 unramified, m odd, p = 1 mod 4")
            if m % 2 == 0 and p % 4 == 1:
                return cf(base, "N_p = 2, Type III, kappa^3 unramified, m even, p = 1 mod 4")
            if m % 2 == 0 and ((p + 1) // m) % 2 == 1:
                return cf(-base, "N_p = 2, Type III, kappa^3 unramified, m even, p = 3 mod 4")
        else:
            trivial_sq = (phi**2).is_unramified()
            if m % 2 == 1 and p % 4 == 1 and trivial_sq:
                return cf(-one / base, "N_p = 2, Type III, kappa^3 tame, m odd, p = 1 mod 4")
            if m % 2 == 0 and ((p + 1) // m) % 2 == 1 and trivial_sq:
                return cf((one if p % 4 == 1 else -one) / base, "N_p = 2, Type III, kappa^3 tame, m even")
    return cf(None, "N_p = 2, Type III: Gamma_p-valued", stated_gamma="b_p form")


def _dyadic_tame(lp: SupercuspidalDihedral, tc: TypeClass) -> FormalScalar:
    K = lp.K
    kappa = lp.kappa
    two = K.elt(2)
    n = int(kappa.unit_angle(K.elt(0, 1)) * 3) % 3
    r2 = _sqrt2()
    i = _i()
    A = -2 * r2 + (2 * r2 - 2) * i
    B = -2 * i + zeta(n, 3) * (-2 * r2 + 2 * r2 * i)
    ep = lp.epsilon_prime()
    core = (kappa**11 * ep**2)(two)
    if tc.name == "III":
        return core * FormalScalar.make(-B / 32, 2)
    return core * FormalScalar.make(A * B / 128, 2)


# report


@dataclass
class VarianceReport:
    definitional: FormalScalar
    compared: FormalScalar
    convention: str
    closed: ClosedForm
    type_name: str
    gamma: GammaExpression | None = None
    induced_route: FormalScalar | None = None

    @property
    def matches(self) -> bool | None:
        v = self.closed.value
        if v is None or not self.closed.applicable:
            return None
        if self.closed.up_to_sign:
            return self.compared == v or self.compared == -v
        return self.compared == v

    def alternative_matches(self) -> dict[str, bool]:
        return {k: self.compared == v for k, v in self.closed.alternatives.items()}


def variance_epsilon(lp: LocalParameter, chi: MultiplicativeCharacter | None = None, convention: str | None = None) -> VarianceReport:
    p = lp.p
    sc = isinstance(lp, SupercuspidalDihedral)
    if chi is None:
        chi = twist_for_prime(p, lp.level_exponent, supercuspidal=sc)
    tc = classify_type(lp)
    q = variance_quotient(lp, chi, tc)
    definitional = q.value(UNITARY)
    if convention is None:
        convention = DYADIC_HALVED if p == 2 else UNITARY
    compared = definitional if convention == UNITARY else q.value(convention)
    if isinstance(lp, PrincipalSeries):
        closed = _principal_closed(lp, chi)
    elif isinstance(lp, Special):
        closed = _special_closed(lp)
    else:
        closed = _sc_closed(lp, chi, tc)
    report = VarianceReport(definitional, compared, convention, closed, tc.name)
    if closed.stated_gamma is not None:
        report.gamma = gamma_expression(q)
    if sc and tc.name == "III":
        report.induced_route = induced_route(lp, chi)
    return report
