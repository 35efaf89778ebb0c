"""Local Langlands parameters of GL2 newforms at p, their symmetric cubes, the
dihedral type of a supercuspidal cube, and the conductor of the cube."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .characters import (
    MultiplicativeCharacter,
    all_characters,
    inflate_by_norm,
    norm_residue_character,
    restrict_to_base,
    root_scalar,
    sigma_conjugate,
)
from .conductors import e_kappa
from .cyclotomic import FormalScalar, legendre
from .local import LocalFieldSpec, ResidueRing, build_unit_group


class DomainError(ValueError):
    """Input outside the range where a construction or formula is defined."""


def _base(p: int) -> LocalFieldSpec:
    return LocalFieldSpec(p)


def unramified_value(p: int, weight_shift: Fraction, ap_exp: int = 1) -> FormalScalar:
    """a_p^ap_exp * p^weight_shift as a formal scalar."""
    return FormalScalar.make(1, p, weight_shift, ap_exp)


def abs_power(p: int, x: Fraction) -> MultiplicativeCharacter:
    """|.|^x on Q_p^x."""
    return MultiplicativeCharacter.unramified(_base(p), FormalScalar.make(1, p, -Fraction(x)))


# local parameters


@dataclass(frozen=True, eq=False)
class PrincipalSeries:
    """mu_1 + mu_2 with mu_1 unramified, mu_1(p) = a_p p^{-(k-1)/2}, mu_1 mu_2 = omega."""

    omega: MultiplicativeCharacter
    weight: int = 2
    kind = "principal"

    def __post_init__(self):
        if self.omega.field.kind != "base":
            raise DomainError("omega is a character of Q_p")
        if self.omega.is_unramified():
            raise DomainError("a ramified principal series needs a ramified omega")

    @property
    def p(self) -> int:
        return self.omega.p

    @property
    def level_exponent(self) -> int:
        return self.omega.conductor()

    @property
    def nebentypus_exponent(self) -> int:
        return self.omega.conductor()

    def mu1(self) -> MultiplicativeCharacter:
        return MultiplicativeCharacter.unramified(_base(self.p), unramified_value(self.p, Fraction(1 - self.weight, 2)))

    def mu2(self) -> MultiplicativeCharacter:
        return self.omega / self.mu1()

    def determinant(self) -> MultiplicativeCharacter:
        return self.mu1() * self.mu2()


@dataclass(frozen=True, eq=False)
class Special:
    """mu tensor the two-dimensional special representation."""

    p: int
    weight: int = 2
    twist: MultiplicativeCharacter | None = None
    kind = "special"

    def mu(self) -> MultiplicativeCharacter:
        if self.twist is not None:
            return self.twist
        return MultiplicativeCharacter.unramified(_base(self.p), unramified_value(self.p, Fraction(2 - self.weight, 2)))

    @property
    def level_exponent(self) -> int:
        a = self.mu().conductor()
        return 1 if a == 0 else 2 * a

    @property
    def nebentypus_exponent(self) -> int:
        return (self.mu() ** 2).conductor()

    def determinant(self) -> MultiplicativeCharacter:
        return self.mu() ** 2


@dataclass(frozen=True, eq=False)
class SupercuspidalDihedral:
    """Ind from K of a character kappa with kappa != kappa^sigma."""

    kappa: MultiplicativeCharacter
    weight: int = 2
    kind = "supercuspidal"

    def __post_init__(self):
        K = self.kappa.field
        if K.kind == "base":
            raise DomainError("kappa lives on a quadratic extension")
        if self.kappa == sigma_conjugate(self.kappa):
            raise DomainError("kappa is sigma-invariant, so the induced representation is reducible")

    @property
    def K(self) -> LocalFieldSpec:
        return self.kappa.field

    @property
    def p(self) -> int:
        return self.K.p

    @property
    def level_exponent(self) -> int:
        return self.K.f * self.kappa.conductor() + self.K.delta

    def kappa_sigma(self) -> MultiplicativeCharacter:
        return sigma_conjugate(self.kappa)

    def epsilon_prime(self) -> MultiplicativeCharacter:
        """kappa * kappa^sigma, which is the restriction to Q_p^x composed with the norm."""
        return self.kappa * self.kappa_sigma()

    def determinant(self) -> MultiplicativeCharacter:
        return restrict_to_base(self.kappa) * norm_residue_character(self.K)

    @property
    def nebentypus_exponent(self) -> int:
        return self.determinant().conductor()

    def unit_order(self) -> int:
        return self.kappa.unit_order()


LocalParameter = PrincipalSeries | Special | SupercuspidalDihedral


# the symmetric cube


@dataclass(frozen=True, eq=False)
class Sym3Summand:
    character: MultiplicativeCharacter
    induced: bool = False

    @property
    def dimension(self) -> int:
        return 2 if self.induced else 1

    def conductor(self) -> int:
        chi = self.character
        if not self.induced:
            return chi.conductor()
        K = chi.field
        return K.f * chi.conductor() + K.delta

    def determinant(self) -> MultiplicativeCharacter:
        if not self.induced:
            return self.character
        return restrict_to_base(self.character) * norm_residue_character(self.character.field)


@dataclass(frozen=True, eq=False)
class Sym3Parameter:
    summands: tuple[Sym3Summand, ...]
    nilpotent_rank: int = 0
    kernel_index: int | None = None

    @property
    def dimension(self) -> int:
        return sum(s.dimension for s in self.summands)

    def determinant(self) -> MultiplicativeCharacter:
        out = self.summands[0].determinant()
        for s in self.summands[1:]:
            out = out * s.determinant()
        return out

    def inertia_invariants(self) -> int:
        return sum(1 for s in self.summands if not s.induced and s.character.is_unramified())

    def inertia_kernel_invariants(self) -> int:
        """dim of (ker N')^I."""
        if self.nilpotent_rank == 0:
            return self.inertia_invariants()
        s = self.summands[self.kernel_index]
        return 1 if s.character.is_unramified() else 0


# exponents x of |.|^x on e_0..e_3; N' kills the line with exponent 1/2
SPECIAL_SHIFTS = (Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2))
SPECIAL_KERNEL_INDEX = 1


def sym3_parameter(lp: LocalParameter) -> Sym3Parameter:
    if isinstance(lp, PrincipalSeries):
        m1, w = lp.mu1(), lp.omega
        chars = (m1**3, m1 * w, m1.inverse() * w**2, m1 ** (-3) * w**3)
        return Sym3Parameter(tuple(Sym3Summand(c) for c in chars))
    if isinstance(lp, Special):
        m3 = lp.mu() ** 3
        chars = tuple(m3 * abs_power(lp.p, x) for x in SPECIAL_SHIFTS)
        return Sym3Parameter(tuple(Sym3Summand(c) for c in chars), nilpotent_rank=3, kernel_index=SPECIAL_KERNEL_INDEX)
    if isinstance(lp, SupercuspidalDihedral):
        k = lp.kappa
        return Sym3Parameter((Sym3Summand(k**3, True), Sym3Summand(k * lp.epsilon_prime(), True)))
    raise TypeError(f"not a local parameter: {lp!r}")


# dihedral type of sym^3 of a supercuspidal


@dataclass(frozen=True, eq=False)
class TypeClass:
    name: str  # principal | special | I | II | III
    phis: tuple[MultiplicativeCharacter, ...] = ()

    @property
    def phi(self) -> MultiplicativeCharacter | None:
        return self.phis[0] if self.phis else None


def _square_roots(x: FormalScalar) -> list[FormalScalar]:
    a = x.coefficient.root_of_unity_exponent()
    if a is None or x.half_p_exp.denominator != 1 or x.ap_exp % 2:
        raise DomainError(f"cannot take a square root of {x}")
    r = FormalScalar.make(root_scalar(a / 2, x.p).coefficient, x.p, x.half_p_exp / 2, x.ap_exp // 2)
    return [r, -r]


def descend_through_norm(psi: MultiplicativeCharacter) -> list[MultiplicativeCharacter]:
    """All characters phi of Q_p^x with phi o N = psi, found by enumeration."""
    K = psi.field
    p = K.p
    base = _base(p)
    a = psi.conductor()
    # the norm maps U_K^j onto U^j for unramified K, so a(phi) = a(psi) there
    L = max(1, a) if K.kind == "unramified" else a + 1
    if p == 2:
        L = max(L, 3)
    psi_k = psi.at_level(max(1, a))
    g = psi_k.group
    gens = [K.elt(*g.ring.decode(x)) for x in g.generators]
    targets = [psi_k.unit_angle(x) for x in gens]
    norms = [K.elt(K.norm(x)) for x in gens]
    out = []
    pi_value = psi(K.uniformizer)
    Npi = K.uniformizer_norm
    for phi in all_characters(base, L):
        if any(phi.unit_angle(n) != t for n, t in zip(norms, targets)):
            continue
        if not inflate_by_norm(phi, K).same_on_units(psi_k):
            continue
        if K.kind == "unramified":
            choices = _square_roots(pi_value)
        else:
            u0 = Npi / p
            choices = [pi_value / root_scalar(phi.unit_angle(base.elt(u0)), p)]
        for c in choices:
            cand = phi.with_uniformizer(c).minimal()
            if cand(base.elt(Npi)) == pi_value:
                out.append(cand)
    return out


def classify_type(lp: LocalParameter) -> TypeClass:
    if isinstance(lp, PrincipalSeries):
        return TypeClass("principal")
    if isinstance(lp, Special):
        return TypeClass("special")
    k3 = lp.kappa**3
    if k3 == sigma_conjugate(k3):
        phis = descend_through_norm(k3)
        if not phis:
            raise DomainError("kappa^3 is sigma-invariant but no character of Q_p^x descends it")
        if len(phis) != 2:
            raise AssertionError(f"expected two descents of kappa^3, found {len(phis)}")
        phis.sort(key=lambda c: (c.unit_exponents, c.at_uniformizer.coefficient.root_of_unity_exponent() or 0))
        return TypeClass("III", tuple(phis))
    ke = lp.kappa * lp.epsilon_prime()
    if k3 == ke or k3 == sigma_conjugate(ke):
        return TypeClass("I")
    return TypeClass("II")


# minimality and hypotheses


@lru_cache(maxsize=64)
def _norm_one_indices(K: LocalFieldSpec, a: int) -> np.ndarray:
    """Ring indices (level a) of the norm-one elements lying in U_K^{a-1}."""
    ring = build_unit_group(K, a).ring
    units = np.nonzero(ring.unit_mask())[0]
    # y / sigma(y) = y^2 / N(y); include y = pi * unit through pi / sigma(pi)
    A, B = K.theta_relation
    ma, mb = ring.moduli
    ya, yb = ring.coords[0][units], ring.coords[1][units]
    sq_a = (ya * ya + B * yb * yb) % ma
    sq_b = (2 * ya * yb + A * yb * yb) % mb if mb > 1 else np.zeros_like(ya)
    nm = (ya * ya + A * ya * yb - B * yb * yb) % ma
    inv = np.array([pow(int(x), -1, ma) for x in nm], dtype=object)
    za = np.array([int(s) * int(i) % ma for s, i in zip(sq_a, inv)], dtype=np.int64)
    zb = np.array([int(s) * int(i) % mb for s, i in zip(sq_b, inv)], dtype=np.int64) if mb > 1 else np.zeros_like(za)
    zi = za * mb + zb
    if K.kind == "ramified":
        pi = K.uniformizer
        r = K.mul(pi, K.inverse(K.sigma(pi)))
        zi = np.concatenate([zi, ring.mul_arrays(zi, np.full_like(zi, ring.encode_elt(r)))])
    zi = np.unique(zi)
    if a == 1:
        return zi
    coarse = ResidueRing(K, a - 1)
    one = coarse.encode(1)
    keep = [z for z in zi if coarse.encode(*ring.decode(int(z))) == one]
    return np.array(keep, dtype=np.int64)


def norm_one_kernel_is_detected(kappa: MultiplicativeCharacter) -> bool:
    """True when kappa is nontrivial on the norm-one elements of U_K^{a-1} (a = a(kappa)),
    i.e. when no twist by chi o N lowers the conductor of kappa."""
    a = kappa.conductor()
    if a == 0:
        return False
    n, table = kappa.at_level(a).value_table()
    return bool(np.any(table[_norm_one_indices(kappa.field, a)] % n))


@dataclass(frozen=True)
class MinimalityReport:
    twist_minimal: bool
    parity_ok: bool
    reasons: tuple[str, ...] = ()

    @property
    def minimal(self) -> bool:
        return self.twist_minimal and self.parity_ok


def p_minimality(sc: SupercuspidalDihedral) -> MinimalityReport:
    K = sc.K
    a = sc.kappa.conductor()
    reasons = []
    tm = norm_one_kernel_is_detected(sc.kappa)
    if not tm:
        reasons.append("a twist by a character of Q_p^x through the norm lowers the conductor")
    parity = True
    if K.kind == "ramified" and K.p != 2 and (a < 2 or a % 2):
        parity = False
        reasons.append("ramified K at odd p needs a(kappa) even and at least 2")
    return MinimalityReport(tm, parity, tuple(reasons))


def hypothesis_violations(sc: SupercuspidalDihedral) -> list[str]:
    """Conditions under which the closed conductor and variance formulas are stated."""
    K, p = sc.K, sc.p
    N, C = sc.level_exponent, sc.nebentypus_exponent
    out = []
    if K.kind == "unramified" and 2 * C == N:
        out.append(f"C_{p} = N_{p}/2 for an unramified dihedral supercuspidal")
    if p == 2 and K.kind == "ramified" and N < 2 * K.delta + 1:
        out.append(f"N_2 = {N} < 2 delta + 1 = {2 * K.delta + 1}")
    return out


# conductors


@dataclass
class ConductorReport:
    machinery: int
    closed_form: int | None
    rule: str
    applicable: bool
    other_forms: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool | None:
        if not self.applicable or self.closed_form is None:
            return None
        return self.machinery == self.closed_form and all(v == self.machinery for v in self.other_forms.values())


def machinery_conductor(param: Sym3Parameter) -> int:
    """a(rho) + dim V^I - dim (ker N')^I."""
    a = sum(s.conductor() for s in param.summands)
    if param.nilpotent_rank == 0:
        return a
    return a + param.inertia_invariants() - param.inertia_kernel_invariants()


def principal_closed_conductor(p: int, N: int, unit_order: int) -> tuple[int, str]:
    if p >= 5:
        if N > 1 or unit_order > 3:
            return 3 * N, "3N_p"
        return 3 * N - 1, "3N_p - 1"
    if p == 3:
        if N == 2 and unit_order == 3:
            return 2 * N, "2N_3"
        return 3 * N - 1, "3N_3 - 1"
    if N > 3:
        return 3 * N - 1, "3N_2 - 1"
    return 2 * N, "2N_2"


def local_sym3_conductor(lp: LocalParameter) -> ConductorReport:
    param = sym3_parameter(lp)
    if isinstance(lp, Special):
        mech = machinery_conductor(param)
        if lp.twist is None or lp.twist.is_unramified():
            return ConductorReport(mech, 3, "special: 3", True)
        return ConductorReport(mech, 4 * (lp.mu() ** 3).conductor(), "special, ramified mu: 4a(mu^3)", True)
    if isinstance(lp, PrincipalSeries):
        mech = machinery_conductor(param)
        value, rule = principal_closed_conductor(lp.p, lp.level_exponent, lp.omega.unit_order())
        return ConductorReport(mech, value, rule, True)

    tc = classify_type(lp)
    K, p = lp.K, lp.p
    k3 = lp.kappa**3
    ke = lp.kappa * lp.epsilon_prime()
    ind_ke = Sym3Summand(ke, True).conductor()
    if tc.name == "III":
        phi = tc.phis[0]
        mech = phi.conductor() + (phi * norm_residue_character(K)).conductor() + ind_ke
    else:
        mech = machinery_conductor(param)
    if K.kind == "unramified":
        two = 2 * k3.conductor() + 2 * ke.conductor()
    else:
        two = k3.conductor() + ke.conductor() + 2 * K.delta
    report = ConductorReport(mech, None, "", True, {"two induced summands": two})
    N = lp.level_exponent
    problems = hypothesis_violations(lp)
    mr = p_minimality(lp)
    report.notes.extend(mr.reasons)
    report.notes.extend(problems)
    if p >= 5:
        if K.kind == "unramified":
            if N == 2 and lp.unit_order() == 3:
                report.closed_form, report.rule = N, "N_p"
            else:
                report.closed_form, report.rule = 2 * N, "2N_p"
        else:
            report.closed_form, report.rule = 2 * N, "2N_p"
    elif p == 3:
        report.rule = "N_3 + e_kappa"
        try:
            report.closed_form = N + e_kappa(lp.kappa, N)
        except ValueError as exc:
            problems.append(str(exc))
    else:
        report.closed_form, report.rule = 2 * N, "2N_2"
        if K.kind == "ramified" and lp.kappa.conductor() < K.delta + 1:
            problems.append("a(kappa) < delta + 1")
    report.applicable = mr.minimal and not problems
    return report


# which types occur for given (N_p, C_p)


@dataclass(frozen=True)
class TypeCell:
    type_name: str
    kind: str
    c_range: tuple[int, int | None]
    n_range: tuple[int, int | None]
    condition: str
    possible: bool

    @property
    def key(self) -> str:
        def rng(r):
            lo, hi = r
            if hi is None:
                return f">={lo}"
            return str(lo) if lo == hi else f"{lo}..{hi}"

        cond = f", {self.condition}" if self.condition else ""
        return f"{self.type_name}/{self.kind}: C {rng(self.c_range)}, N {rng(self.n_range)}{cond}"


def _within(x: int, r: tuple[int, int | None]) -> bool:
    lo, hi = r
    return x >= lo and (hi is None or x <= hi)


TYPE_CELLS: tuple[TypeCell, ...] = (
    TypeCell("I", "unramified", (0, 1), (2, 2), "", True),
    TypeCell("I", "unramified", (0, 1), (4, None), "", False),
    TypeCell("I", "unramified", (2, None), (4, None), "", True),
    TypeCell("I", "ramified", (0, 1), (3, None), "", False),
    TypeCell("I", "ramified", (2, 2), (3, 3), "", False),
    TypeCell("I", "ramified", (2, None), (5, None), "", True),
    TypeCell("II", "any", (0, None), (2, None), "", True),
    TypeCell("III", "unramified", (0, 1), (2, 2), "p>=5", True),
    TypeCell("III", "unramified", (0, 1), (4, None), "p>=5", False),
    TypeCell("III", "unramified", (2, None), (4, None), "p>=5", True),
    TypeCell("III", "unramified", (0, 1), (2, 2), "p=3, kappa^2 trivial on units", True),
    TypeCell("III", "unramified", (0, 1), (2, 2), "p=3, kappa^2 nontrivial on units", False),
    TypeCell("III", "unramified", (0, None), (4, None), "p=3", True),
    TypeCell("III", "ramified", (0, None), (3, None), "p>=5", False),
    TypeCell("III", "ramified", (0, None), (3, None), "p=3", True),
)


def type_possibility(p: int, kind: str, C: int, N: int, type_name: str, kappa_sq_trivial: bool | None = None) -> TypeCell:
    """The cell of the type table governing (p, kind, C_p, N_p, type) for a p-minimal dihedral supercuspidal at odd p."""
    if p == 2:
        raise DomainError("the type table covers odd p")
    if not (N >= 2 and 0 <= C < N):
        raise DomainError("need C_p < N_p and N_p >= 2")
    if (kind == "unramified") != (N % 2 == 0):
        raise DomainError("N_p is even exactly when K is unramified")
    for cell in TYPE_CELLS:
        if cell.type_name != type_name or cell.kind not in (kind, "any"):
            continue
        if not (_within(C, cell.c_range) and _within(N, cell.n_range)):
            continue
        cond = cell.condition
        if cond.startswith("p>=5") and p < 5:
            continue
        if cond.startswith("p=3"):
            if p != 3:
                continue
            if "trivial on units" in cond:
                if kappa_sq_trivial is None:
                    raise DomainError("p = 3, N_3 = 2 needs whether kappa^2 is trivial on units")
                if ("nontrivial" in cond) == kappa_sq_trivial:
                    continue
        return cell
    raise DomainError(f"no table cell for type {type_name}, {kind}, C={C}, N={N}, p={p}")


# twist characters and their values at primes away from p


DYADIC_DISCRIMINANTS = {-1: -4, 2: 8, -2: -8}


def unramified_twist_epsilon_q(q: int, p: int, v: int, which: int = -1) -> int:
    """Variance contribution chi_p(q)^v at a prime q != p where the twist by chi_p is unramified.

    At p = 2 the twist chi_which is the character of Q(sqrt which), so chi(q) = (D/q).
    """
    if p == 2:
        return legendre(DYADIC_DISCRIMINANTS[which], q) ** v
    return legendre(q, p) ** v


def twist_for_prime(p: int, level_exponent: int | None = None, supercuspidal: bool = False) -> MultiplicativeCharacter:
    """chi_p at odd p; at p = 2, chi_2 for a supercuspidal with N_2 = 2 and chi_{-1} otherwise."""
    from .characters import twisting_character

    if p != 2:
        return twisting_character(p)
    if supercuspidal and level_exponent == 2:
        return twisting_character(2, 2)
    return twisting_character(2, -1)
