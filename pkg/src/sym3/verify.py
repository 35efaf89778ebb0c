"""Seeded verification suites: each runs a brute-force sweep and returns a structured pass/fail report."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .characters import AdditiveCharacter, MultiplicativeCharacter, all_characters
from .conductors import sweep_cube_qp, sweep_cube_quadratic, sweep_square_q2
from .cyclotomic import CyclotomicNumber, FormalScalar, sqrt_prime, zeta
from .epsilon import DeligneTwister, EpsilonInput, epsilon, epsilon_factor, local_tau
from .gauss import (
    FiniteFieldCharacterPair,
    characters_of_order,
    davenport_hasse_defect,
    finite_field_character,
    gauss_sum,
    stickelberger_value,
)
from .global_report import global_agreement_sweep
from .local import LocalFieldSpec
from .padic import PAdicInt, gamma_p, gross_koblitz_defect
from .sweeps import SweepConfig, conductor_sweep, type_table_sweep, variance_sweep
from .variance import lifted_ratio_check

ODD_PRIMES = (3, 5, 7, 11, 13)


@dataclass
class Check:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["failures"] = [_jsonable(x) for x in self.failures[:10]]
        out["failure_count"] = len(self.failures)
        out["info"] = _jsonable(self.info)
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    bounds: dict
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "bounds": self.bounds,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def table(self) -> str:
        lines = [f"suite {self.suite}  seed {self.seed}  bounds {self.bounds}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  {mark}  {c.name}  checked={c.checked}  failures={len(c.failures)}")
            for k, v in c.info.items():
                lines.append(f"        {k}: {_jsonable(v)}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, (CyclotomicNumber, FormalScalar)):
        return str(x) if isinstance(x, CyclotomicNumber) else x.render()
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)


@dataclass(frozen=True)
class VerifyConfig:
    max_p: int | None = None
    max_level: int | None = None
    seed: int = 0


def _odd_primes(limit: int, pool=ODD_PRIMES) -> tuple[int, ...]:
    return tuple(p for p in pool if p <= limit)


# suites


def suite_conductor_powers(cfg: VerifyConfig) -> list[Check]:
    max_p = cfg.max_p or 7
    t = cfg.max_level or 5
    primes = _odd_primes(max_p, (3, 5, 7, 11, 13))
    checks = []
    qp = sweep_cube_qp(primes, t)
    checks.append(Check(f"cube conductors over Q_p, p in {list(primes)}, level <= {t}", qp.ok, qp.checked, qp.mismatches))
    q2 = sweep_square_q2(t + 1)
    checks.append(Check(f"square conductors over Q_2, level <= {t + 1}", q2.ok, q2.checked, q2.mismatches))
    quad = sweep_cube_quadratic(3, min(t, 3))
    checks.append(
        Check(
            f"cube conductors over quadratic extensions of Q_3, level <= {min(t, 3)}",
            quad.ok,
            quad.checked,
            quad.mismatches,
            {"representative sensitivity": quad.notes},
        )
    )
    return checks


def suite_gauss(cfg: VerifyConfig) -> list[Check]:
    max_p = cfg.max_p or 13
    primes = [p for p in (2, 3, 5, 7, 11, 13, 17, 19) if p <= max_p]
    norm_fail, norm_n = [], 0
    for p in primes:
        for r in (1, 2):
            q = p**r
            for k in range(1, q - 1):
                G = gauss_sum(FiniteFieldCharacterPair(finite_field_character(p, r, Fraction(k, q - 1))))
                norm_n += 1
                if G.abs_square() != CyclotomicNumber.rational(q):
                    norm_fail.append((p, r, k))
    quad_fail, quad_n = [], 0
    for p in primes:
        if p == 2:
            continue
        G = gauss_sum(FiniteFieldCharacterPair(finite_field_character(p, 1, Fraction(1, 2)))).embed_complex()
        want = p**0.5 if p % 4 == 1 else 1j * p**0.5
        quad_n += 1
        if abs(G - want) > 1e-9:
            quad_fail.append((p, G))
    dh_fail, dh_n = [], 0
    for p in primes:
        for k in range(1, p - 1):
            dh_n += 1
            if not davenport_hasse_defect(FiniteFieldCharacterPair(finite_field_character(p, 1, Fraction(k, p - 1)))).is_zero():
                dh_fail.append((p, k))
    st_fail, st_n, applicable = [], 0, []
    for p in primes:
        for m in range(2, p + 2):
            pred = stickelberger_value(p, m)
            if not pred.applicable:
                continue
            applicable.append((p, m))
            for chi in characters_of_order(p, 2, m):
                st_n += 1
                if gauss_sum(FiniteFieldCharacterPair(chi)) != CyclotomicNumber.rational(pred.value):
                    st_fail.append((p, m, chi.unit_exponents))
    return [
        Check(f"|G|^2 = q, p <= {max_p}, r <= 2", not norm_fail, norm_n, norm_fail),
        Check("quadratic G over F_p is sqrt(p) or i sqrt(p)", not quad_fail, quad_n, quad_fail),
        Check("Davenport-Hasse defect vanishes", not dh_fail, dh_n, dh_fail),
        Check("Stickelberger values equal direct sums", not st_fail, st_n, st_fail, {"applicable (p, m)": applicable}),
    ]


def suite_gross_koblitz(cfg: VerifyConfig) -> list[Check]:
    max_p = cfg.max_p or 7
    M = 20
    gk_fail, gk_n, signs = [], 0, {}
    for p in _odd_primes(max_p, (5, 7)):
        seen = set()
        for a in range(1, p - 1):
            d = gross_koblitz_defect(p, a, M)
            gk_n += 1
            seen.add(d.sign)
            if d.valuation < 0.6 * M:
                gk_fail.append((p, a, d.valuation))
        signs[p] = sorted(seen)
        if len(seen) != 1:
            gk_fail.append((p, "sign varies", sorted(seen)))
    ratio_fail, ratio_n = [], 0
    for p in _odd_primes(max_p, (3, 5, 7)):
        m = p**3
        for x in range(1, m):
            if x % p == 0:
                continue
            ratio_n += 1
            X = PAdicInt(p, 3, x)
            if gamma_p(X + 1) / gamma_p(X) != -X:
                ratio_fail.append((p, x))
    return [
        Check(f"Gauss sum against pi^a Gamma_p(a/(p-1)) to {M} pi-digits", not gk_fail, gk_n, gk_fail, {"sign per p": signs}),
        Check("Gamma_p(x+1) / Gamma_p(x) = -x on units mod p^3", not ratio_fail, ratio_n, ratio_fail),
    ]


def _random_root(rng: random.Random, p: int) -> FormalScalar:
    d = rng.choice((1, 2, 3, 4, 6, 12))
    return FormalScalar.root(Fraction(rng.randrange(d), d), p)


def _random_unit(rng: random.Random, p: int) -> int:
    while True:
        u = rng.randrange(1, p**6)
        if u % p:
            return u


def suite_epsilon_props(cfg: VerifyConfig) -> list[Check]:
    rng = random.Random(cfg.seed)
    max_p = cfg.max_p or 7
    primes = _odd_primes(max_p, (3, 5, 7))
    checks = []

    unit_fail, unit_n = [], 0
    e1_fail, e1_n, e1_unit_fail, e1_no_abs = [], 0, 0, 0
    e2_fail, e2_n = [], 0
    for p in primes:
        K = LocalFieldSpec(p)
        phi = AdditiveCharacter.standard(K)
        for chi in all_characters(K, 2):
            chi = chi.with_uniformizer(_random_root(rng, p))
            base = epsilon(chi, phi)
            e = chi.conductor() + phi.conductor()
            for _ in range(3):
                u = _random_unit(rng, p)
                unit_n += 1
                c = K.mul(K.power(K.uniformizer, e), K.elt(u))
                if epsilon(chi, phi, c) != base:
                    unit_fail.append((p, chi.unit_exponents, u))
            if chi.conductor() > 1:
                continue
            for _ in range(2):
                k = rng.randrange(-1, 2)
                a = Fraction(p) ** k * Fraction(_random_unit(rng, p), _random_unit(rng, p))
                lhs = epsilon(chi, phi.scaled(a))
                rhs = chi(K.elt(a)) * FormalScalar.make(1, p, k) * base
                e1_n += 1
                if lhs != rhs:
                    e1_fail.append((p, chi.unit_exponents, a))
                    e1_unit_fail += k == 0
                e1_no_abs += lhs == chi(K.elt(a)) * base
            theta = MultiplicativeCharacter.unramified(K, _random_root(rng, p))
            e2_n += 1
            if epsilon(chi * theta, phi) != theta.at_uniformizer**e * base:
                e2_fail.append((p, chi.unit_exponents))
    checks.append(Check("unit independence of the test element", not unit_fail, unit_n, unit_fail))
    checks.append(
        Check(
            "eps(chi, phi_a) = chi(a) |a|^-1 eps(chi, phi) for tame chi",
            not e1_fail,
            e1_n,
            e1_fail,
            {"failures with |a| = 1": e1_unit_fail, "eps(chi, phi_a) = chi(a) eps(chi, phi) holds": f"{e1_no_abs}/{e1_n}"},
        )
    )
    checks.append(Check("eps(chi theta) = theta(pi)^(a+n) eps(chi) for unramified theta", not e2_fail, e2_n, e2_fail))

    alpha_fail, alpha_n = [], 0
    ab_fail, ab_n = [], 0
    signs = (FormalScalar.one, lambda p: FormalScalar.make(-1, p))
    for p in _odd_primes(max(max_p, 7), (3, 5, 7, 11, 13)):
        K = LocalFieldSpec(p)
        phi = AdditiveCharacter.standard(K)
        want = FormalScalar.one(p) if p % 4 == 1 else FormalScalar.make(zeta(1, 4), p)
        quad = [MultiplicativeCharacter.from_exponents(K, 1, [Fraction(1, 2)], s(p)) for s in signs]
        for alpha in quad:
            alpha_n += 1
            if epsilon(alpha, phi) != want:
                alpha_fail.append((p, alpha.at_uniformizer.render()))
        for alpha in quad:
            for beta in quad:
                ab = alpha * beta
                ab_n += 1
                if epsilon(ab, phi) != ab(K.elt(p)).inverse():
                    ab_fail.append((p, alpha.at_uniformizer.render(), beta.at_uniformizer.render()))
    checks.append(Check("tame quadratic eps is 1 or i", not alpha_fail, alpha_n, alpha_fail))
    checks.append(Check("eps(alpha beta) = 1/(alpha beta)(p)", not ab_fail, ab_n, ab_fail))

    checks.extend(_dyadic_tau_vectors())
    return checks


def _dyadic_tau_vectors() -> list[Check]:
    Q2 = LocalFieldSpec(2)
    phi2 = AdditiveCharacter(Q2, 1)
    out = []
    cond2 = [c for c in all_characters(Q2, 2) if c.conductor() == 2]
    two_i = CyclotomicNumber.rational(2) * zeta(1, 4)
    fails = [c.unit_exponents for c in cond2 if local_tau(EpsilonInput(c, phi2)) != two_i]
    out.append(Check("tau(alpha, phi_2) = 2i, a(alpha) = 2", not fails and bool(cond2), len(cond2), fails))

    two_root2 = CyclotomicNumber.rational(2) * sqrt_prime(2)
    cond3 = [c for c in all_characters(Q2, 3) if c.conductor() == 3]
    values, fails = {}, []
    for c in cond3:
        name = "chi_2" if c(Q2.elt(7)) == FormalScalar.one(2) else "chi_-2"
        t = local_tau(EpsilonInput(c, phi2))
        values[name] = str(t)
        if t != two_root2:
            fails.append((name, str(t)))
    out.append(Check("tau(alpha, phi_2) = 2 sqrt 2, a(alpha) = 3", not fails and bool(cond3), len(cond3), fails, {"values": values}))

    K = LocalFieldSpec(2, "unramified")
    phiK = AdditiveCharacter(K, 1)
    kappas = [k for k in all_characters(K, 1) if k.conductor() == 1]
    fails = [k.unit_exponents for k in kappas if local_tau(EpsilonInput(k, phiK)) != CyclotomicNumber.rational(2)]
    out.append(Check("tau(kappa, phi_2 o Tr) = 2 on the unramified quadratic extension", not fails and bool(kappas), len(kappas), fails))
    return out


def suite_deligne_twist(cfg: VerifyConfig) -> list[Check]:
    rng = random.Random(cfg.seed)
    max_p = cfg.max_p or 7
    max_level = cfg.max_level or 4
    checks = []
    for p in _odd_primes(max_p, (3, 5, 7, 11, 13)):
        K = LocalFieldSpec(p)
        phi = AdditiveCharacter.standard(K)
        chars = list(all_characters(K, max_level))
        by_cond: dict[int, list] = {}
        for chi in chars:
            by_cond.setdefault(chi.conductor(), []).append(chi)
        fails, n = [], 0
        for alpha in chars:
            alpha = alpha.with_uniformizer(_random_root(rng, p))
            a = alpha.conductor()
            twist = DeligneTwister(alpha, phi)
            for b in range(a // 2 + 1):
                for beta in by_cond.get(b, ()):
                    beta = beta.with_uniformizer(_random_root(rng, p))
                    n += 1
                    if twist(beta) != epsilon_factor(EpsilonInput(alpha * beta, phi)):
                        fails.append((alpha.unit_exponents, beta.unit_exponents))
        checks.append(Check(f"Deligne twist equals the definition, p = {p}, a(alpha) <= {max_level}", not fails, n, fails))
    return checks


def suite_sym3_conductors(cfg: VerifyConfig) -> list[Check]:
    primes = _odd_primes(cfg.max_p or 7, (3, 5, 7, 11))
    level = cfg.max_level or 3
    r = conductor_sweep(SweepConfig(primes=primes, max_level=level))
    return [
        Check(
            "machinery sym3 conductor equals the closed forms",
            not r.mismatches,
            r.checked,
            r.mismatches,
            {"characters": r.characters, "out of hypothesis": r.out_of_hypothesis},
        ),
        Check("special type gives 3", r.special_values <= {3}, len(r.special_values), sorted(r.special_values - {3})),
    ]


def suite_table6(cfg: VerifyConfig) -> list[Check]:
    primes = _odd_primes(cfg.max_p or 7, (3, 5, 7, 11))
    level = cfg.max_level or 3
    r = type_table_sweep(primes, level, level + 1)
    return [
        Check(
            "no datum lands in a forbidden cell",
            r.ok,
            r.data,
            r.forbidden_hits,
            {"counts": dict(sorted(r.counts.items())), "unreachable at sweep bounds": r.unwitnessed},
        )
    ]


def suite_variance(cfg: VerifyConfig) -> list[Check]:
    primes = tuple(p for p in (2, 3, 5, 7) if p <= (cfg.max_p or 7))
    r = variance_sweep(primes)
    by_rule = {f"{rule} [{status}]": n for (rule, status), n in sorted(r.by_rule.items())}
    checks = [
        Check("definitional variance equals the closed forms", not r.mismatches, sum(r.by_rule.values()), r.mismatches, {"by rule": by_rule}),
        Check("induced route agrees with the summand route", not r.induced_disagreements, sum(r.by_rule.values()), r.induced_disagreements),
        Check("Gamma_p ratios match exactly and p-adically", not r.gamma_failures, sum(r.by_rule.values()), r.gamma_failures),
    ]
    fails, n, unreduced = [], 0, {}
    for p in (5, 7, 11, 13):
        for b in range(1, p - 1):
            if (b + (p - 1) // 2) % (p - 1) == 0:
                continue
            res = lifted_ratio_check(p, Fraction(b, p - 1))
            n += 1
            if not (res.exact_ok and res.padic_ok):
                fails.append((p, b))
            unreduced[f"{p}:{b}"] = res.unreduced_matches
    checks.append(
        Check(
            "lifted Gauss-sum ratios equal squared base ratios and their Gamma_p forms",
            not fails,
            n,
            fails,
            {"unreduced -p[Gamma ratio]^2 form holds": unreduced},
        )
    )
    return checks


def suite_global(cfg: VerifyConfig) -> list[Check]:
    r = global_agreement_sweep(cfg.seed)
    return [
        Check("closed product equals per-prime product", not r["disagreements"], r["checked"], r["disagreements"]),
        Check("squarefree trivial-character levels give N^3", not r["squarefree_failures"], 30, r["squarefree_failures"]),
        Check("prod of eps_q over q != p equals chi_p(M')", not r["twist_failures"], 50, r["twist_failures"]),
    ]


SUITES: dict[str, Callable[[VerifyConfig], list[Check]]] = {
    "conductor-powers": suite_conductor_powers,
    "gauss": suite_gauss,
    "gross-koblitz": suite_gross_koblitz,
    "epsilon-props": suite_epsilon_props,
    "deligne-twist": suite_deligne_twist,
    "sym3-conductors": suite_sym3_conductors,
    "table6": suite_table6,
    "variance-closed-forms": suite_variance,
    "global-agreement": suite_global,
}


class UnknownSuite(KeyError):
    pass


def run_verify(suite: str, cfg: VerifyConfig = VerifyConfig()) -> SuiteReport:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    bounds = {k: v for k, v in (("max_p", cfg.max_p), ("max_level", cfg.max_level)) if v is not None}
    return SuiteReport(suite, cfg.seed, bounds, SUITES[suite](cfg))


__all__ = ["Check", "SUITES", "SuiteReport", "UnknownSuite", "VerifyConfig", "run_verify"]
