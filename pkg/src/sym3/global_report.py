"""Newform descriptors, the prime-set partition, the global conductor of sym^3, and the
global twisted-epsilon relation assembled from local variance numbers."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .arith import is_prime, jacobi
from .characters import (
    LiteralError,
    MultiplicativeCharacter,
    all_characters,
    character_from_literal,
    character_to_literal,
    field_from_literal,
    field_to_literal,
    inflate_by_norm,
    norm_residue_character,
    sigma_conjugate,
)
from .conductors import e_kappa
from .cyclotomic import legendre
from .epsilon import AdditiveCharacter, solve_additive_parameter
from .local import LocalFieldSpec
from .variance import variance_epsilon
from .wd import (
    DYADIC_DISCRIMINANTS,
    DomainError,
    LocalParameter,
    PrincipalSeries,
    Special,
    SupercuspidalDihedral,
    classify_type,
    local_sym3_conductor,
    p_minimality,
    twist_for_prime,
    unramified_twist_epsilon_q,
)

TYPES = ("special", "principal", "supercuspidal")


@dataclass(frozen=True)
class Violation:
    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


class DescriptorError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(map(str, self.violations)))


@dataclass(frozen=True)
class LocalEntry:
    p: int
    type: str
    omega: MultiplicativeCharacter | None = None
    kappa: MultiplicativeCharacter | None = None

    def parameter(self, weight: int) -> LocalParameter:
        if self.type == "special":
            return Special(self.p, weight)
        if self.type == "principal":
            return PrincipalSeries(self.omega, weight)
        return SupercuspidalDihedral(self.kappa, weight)

    def to_json(self) -> dict:
        out: dict = {"p": self.p, "type": self.type}
        if self.omega is not None:
            out["omega"] = character_to_literal(self.omega)
        if self.kappa is not None:
            K = field_to_literal(self.kappa.field)
            del K["p"]
            out["K"] = K
            out["kappa"] = character_to_literal(self.kappa)
        return out


@dataclass(frozen=True)
class NewformDescriptor:
    weight: int
    level: tuple[tuple[int, int], ...]
    nebentypus: tuple[tuple[int, int], ...]
    minimal: bool
    local: tuple[LocalEntry, ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.level]

    @property
    def N(self) -> int:
        out = 1
        for p, e in self.level:
            out *= p**e
        return out

    def level_exponent(self, p: int) -> int:
        return dict(self.level).get(p, 0)

    def nebentypus_exponent(self, p: int) -> int:
        return dict(self.nebentypus).get(p, 0)

    def entry(self, p: int) -> LocalEntry:
        for e in self.local:
            if e.p == p:
                return e
        raise KeyError(p)

    def parameter(self, p: int) -> LocalParameter:
        return self.entry(p).parameter(self.weight)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "level": [{"p": p, "exp": e} for p, e in self.level],
            "nebentypus": [{"p": p, "exp": e} for p, e in self.nebentypus if e],
            "minimal": self.minimal,
            "local": [e.to_json() for e in self.local],
        }


# parsing


def _int(obj, key, path, errs, minimum=None):
    v = obj.get(key) if isinstance(obj, dict) else None
    if not isinstance(v, int) or isinstance(v, bool):
        errs.append(Violation(f"{path}.{key}", "expected an integer"))
        return None
    if minimum is not None and v < minimum:
        errs.append(Violation(f"{path}.{key}", f"must be at least {minimum}"))
        return None
    return v


def _prime_exponents(obj, key, errs, minimum) -> list[tuple[int, int]]:
    items = obj.get(key, [] if key == "nebentypus" else None)
    if not isinstance(items, list):
        errs.append(Violation(f"$.{key}", "expected a list of {p, exp} objects"))
        return []
    out, seen = [], set()
    for i, it in enumerate(items):
        path = f"$.{key}[{i}]"
        if not isinstance(it, dict):
            errs.append(Violation(path, "expected an object"))
            continue
        p = _int(it, "p", path, errs, 2)
        e = _int(it, "exp", path, errs, minimum)
        if p is None or e is None:
            continue
        if not is_prime(p):
            errs.append(Violation(f"{path}.p", f"{p} is not prime"))
        elif p in seen:
            errs.append(Violation(f"{path}.p", f"prime {p} listed twice"))
        else:
            seen.add(p)
            out.append((p, e))
    return sorted(out)


def _local_entry(it, path, errs) -> LocalEntry | None:
    if not isinstance(it, dict):
        errs.append(Violation(path, "expected an object"))
        return None
    p = _int(it, "p", path, errs, 2)
    t = it.get("type")
    if t not in TYPES:
        errs.append(Violation(f"{path}.type", f"expected one of {', '.join(TYPES)}"))
        return None
    if p is None or not is_prime(p):
        if p is not None:
            errs.append(Violation(f"{path}.p", f"{p} is not prime"))
        return None
    try:
        if t == "special":
            return LocalEntry(p, t)
        if t == "principal":
            if "omega" not in it:
                errs.append(Violation(f"{path}.omega", "principal series entries need omega"))
                return None
            omega = character_from_literal(it["omega"], f"{path}.omega", p)
            if omega.field.kind != "base":
                errs.append(Violation(f"{path}.omega.field", "omega is a character of Q_p"))
                return None
            return LocalEntry(p, t, omega=omega)
        K_obj = it.get("K")
        if not isinstance(K_obj, dict):
            errs.append(Violation(f"{path}.K", "supercuspidal entries need K"))
            return None
        kobj = it.get("kappa")
        if not isinstance(kobj, dict):
            errs.append(Violation(f"{path}.kappa", "supercuspidal entries need kappa"))
            return None
        K_lit = {"p": p, **K_obj}
        if K_lit.get("kind") not in ("unramified", "ramified"):
            errs.append(Violation(f"{path}.K.kind", "expected unramified or ramified"))
            return None
        kobj = {**kobj, "field": kobj.get("field", K_lit)}
        kappa = character_from_literal(kobj, f"{path}.kappa", p)
        if kappa.field != field_from_literal(K_lit, f"{path}.K"):
            errs.append(Violation(f"{path}.kappa.field", "kappa does not live on K"))
            return None
        return LocalEntry(p, t, kappa=kappa)
    except LiteralError as exc:
        errs.append(Violation(exc.path, str(exc).split(": ", 1)[-1]))
        return None


def descriptor_from_json(obj) -> NewformDescriptor:
    """Parse and validate; raises DescriptorError listing every violation with its JSON path."""
    if not isinstance(obj, dict):
        raise DescriptorError([Violation("$", "expected an object")])
    errs: list[Violation] = []
    weight = _int(obj, "weight", "$", errs, 2)
    level = _prime_exponents(obj, "level", errs, 1)
    neb = _prime_exponents(obj, "nebentypus", errs, 0)
    minimal = obj.get("minimal", True)
    if not isinstance(minimal, bool):
        errs.append(Violation("$.minimal", "expected true or false"))
    items = obj.get("local")
    entries: list[LocalEntry] = []
    if not isinstance(items, list):
        errs.append(Violation("$.local", "expected a list"))
    else:
        for i, it in enumerate(items):
            e = _local_entry(it, f"$.local[{i}]", errs)
            if e is not None:
                entries.append(e)
    if errs:
        raise DescriptorError(errs)
    d = NewformDescriptor(weight, tuple(level), tuple((p, e) for p, e in neb if e), minimal, tuple(sorted(entries, key=lambda e: e.p)))
    errs = descriptor_violations(d, items)
    if errs:
        raise DescriptorError(errs)
    return d


def _entry_path(d: NewformDescriptor, raw, p: int) -> str:
    if isinstance(raw, list):
        for i, it in enumerate(raw):
            if isinstance(it, dict) and it.get("p") == p:
                return f"$.local[{i}]"
    return f"$.local[p={p}]"


def descriptor_violations(d: NewformDescriptor, raw_local=None) -> list[Violation]:
    """Invariants linking level, nebentypus and local data."""
    errs = []
    N = dict(d.level)
    for i, (p, c) in enumerate(d.nebentypus):
        if p not in N:
            errs.append(Violation(f"$.nebentypus[{i}]", f"prime {p} does not divide the level"))
        elif c > N[p]:
            errs.append(Violation(f"$.nebentypus[{i}].exp", f"C_{p} = {c} exceeds N_{p} = {N[p]}"))
    seen = {}
    for e in d.local:
        if e.p in seen:
            errs.append(Violation(_entry_path(d, raw_local, e.p), f"prime {e.p} has two local entries"))
        seen[e.p] = e
    for p in N:
        if p not in seen:
            errs.append(Violation("$.local", f"no local data for the level prime {p}"))
    for p, e in seen.items():
        path = _entry_path(d, raw_local, p)
        if p not in N:
            errs.append(Violation(path, f"prime {p} does not divide the level"))
            continue
        errs.extend(_gate(e, N[p], d.nebentypus_exponent(p), path, d.weight))
    return errs


def _gate(e: LocalEntry, n: int, c: int, path: str, weight: int) -> list[Violation]:
    p = e.p
    if e.type == "special":
        if n != 1 or c != 0:
            return [Violation(path, f"special at {p} needs N_{p} = 1 and C_{p} = 0, got N = {n}, C = {c}")]
        return []
    if e.type == "principal":
        if not n == c >= 1:
            return [Violation(path, f"principal series at {p} needs N_{p} = C_{p} >= 1, got N = {n}, C = {c}")]
        a = e.omega.conductor()
        if a != n:
            return [Violation(f"{path}.omega", f"omega has conductor {a}, but N_{p} = {n}")]
        return []
    out = []
    if not (n >= 2 and c < n):
        out.append(Violation(path, f"supercuspidal at {p} needs N_{p} >= 2 and C_{p} < N_{p}, got N = {n}, C = {c}"))
    kind = e.kappa.field.kind
    if (kind == "unramified") != (n % 2 == 0):
        rule = "even N_p means K unramified" if n % 2 == 0 else f"ramified K gives N_p = {e.kappa.field.delta} + a(kappa), odd"
        out.append(Violation(f"{path}.K", f"parity: N_{p} = {n} with {kind} K ({rule})"))
    if out:
        return out
    if e.kappa == sigma_conjugate(e.kappa):
        return [Violation(f"{path}.kappa", "kappa is sigma-invariant, so the induced representation is reducible")]
    sc = SupercuspidalDihedral(e.kappa, weight)
    if sc.level_exponent != n:
        out.append(Violation(f"{path}.kappa", f"kappa gives N_{p} = {sc.level_exponent}, descriptor says {n}"))
    if sc.nebentypus_exponent != c:
        out.append(Violation(f"{path}.kappa", f"kappa gives C_{p} = {sc.nebentypus_exponent}, descriptor says {c}"))
    return out


def minimality_violations(d: NewformDescriptor) -> list[Violation]:
    out = []
    if not d.minimal:
        out.append(Violation("$.minimal", "descriptor is not flagged minimal"))
        return out
    for i, e in enumerate(d.local):
        if e.type == "supercuspidal":
            r = p_minimality(SupercuspidalDihedral(e.kappa, d.weight))
            if not r.minimal:
                out.append(Violation(f"$.local[{i}]", f"descriptor not {e.p}-minimal: {'; '.join(r.reasons)}"))
    return out


def parse_descriptor(path) -> NewformDescriptor:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError([Violation("$", f"malformed JSON: {exc}")]) from None
    return descriptor_from_json(obj)


# Hypothesis (H)


def check_hypothesis_h(d: NewformDescriptor) -> list[str]:
    out = []
    for e in d.local:
        if e.type != "supercuspidal":
            continue
        p, K = e.p, e.kappa.field
        n, c = d.level_exponent(p), d.nebentypus_exponent(p)
        if p == 2 and K.kind == "ramified" and n < 2 * K.delta + 1:
            out.append(f"H2: N_2 = {n} < 2 delta + 1 = {2 * K.delta + 1} for ramified K with delta = {K.delta}")
        if K.kind == "unramified" and 2 * c == n:
            out.append(f"H3: C_{p} = N_{p}/2 = {c} at an unramified dihedral supercuspidal prime")
    # H1 (p = 2 supercuspidal is dihedral) holds for every representable descriptor
    return out


# prime sets


@dataclass(frozen=True)
class PrimePartition:
    P1: tuple[int, ...] = ()
    P2: tuple[int, ...] = ()
    P3: tuple[int, ...] = ()
    SP: tuple[int, ...] = ()
    SC: tuple[int, ...] = ()
    S1: tuple[int, ...] = ()
    S2: tuple[int, ...] = ()

    def sets_of(self, p: int) -> list[str]:
        return [name for name in ("SP", "P1", "P2", "P3", "SC", "S1", "S2") if p in getattr(self, name)]

    @property
    def P(self) -> tuple[int, ...]:
        return tuple(sorted(self.P1 + self.P2 + self.P3))


def partition_primes(d: NewformDescriptor) -> PrimePartition:
    sets: dict[str, list[int]] = {k: [] for k in ("P1", "P2", "P3", "SP", "SC", "S1", "S2")}
    for e in d.local:
        p, n = e.p, d.level_exponent(e.p)
        if e.type == "special":
            sets["SP"].append(p)
        elif e.type == "principal":
            if e.omega is None:
                raise DomainError(f"principal prime {p} has no omega")
            m = e.omega.unit_order()
            if p >= 5 and (n > 1 or m > 3):
                sets["P1"].append(p)
            elif (p == 3 and n == 2 and m == 3) or (p == 2 and n <= 3):
                sets["P3"].append(p)
            else:
                sets["P2"].append(p)
        else:
            sets["SC"].append(p)
            if p >= 5:
                sets["S1" if n == 2 and e.kappa.unit_order() == 3 else "S2"].append(p)
    return PrimePartition(**{k: tuple(sorted(v)) for k, v in sets.items()})


def closed_exponents(d: NewformDescriptor, part: PrimePartition | None = None) -> dict[int, int]:
    """Exponent of each level prime in N prod_{SP,P1} p^{2N} prod_{P2} p^{2N-1} prod_{P3,S2} p^N 2^{N_2} 3^{e_kappa}."""
    part = part or partition_primes(d)
    out = {}
    for p, n in d.level:
        extra = 0
        if p in part.SP or p in part.P1:
            extra = 2 * n
        elif p in part.P2:
            extra = 2 * n - 1
        elif p in part.P3 or p in part.S2:
            extra = n
        elif p in part.SC and p == 2:
            extra = n
        elif p in part.SC and p == 3:
            extra = e_kappa(d.entry(3).kappa, n)
        out[p] = n + extra
    return out


@dataclass
class GlobalConductor:
    closed: dict[int, int]
    per_prime: dict[int, int]
    partition: PrimePartition

    @property
    def agrees(self) -> bool:
        return self.closed == self.per_prime

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.per_prime.items():
            out *= p**e
        return out

    @property
    def closed_value(self) -> int:
        out = 1
        for p, e in self.closed.items():
            out *= p**e
        return out


def _require(d: NewformDescriptor) -> None:
    problems = [str(v) for v in minimality_violations(d)] + check_hypothesis_h(d)
    if problems:
        raise DomainError("; ".join(problems))


def per_prime_exponents(d: NewformDescriptor) -> dict[int, int]:
    return {p: local_sym3_conductor(d.parameter(p)).machinery for p in d.primes}


def global_sym3_conductor(d: NewformDescriptor) -> GlobalConductor:
    _require(d)
    part = partition_primes(d)
    return GlobalConductor(closed_exponents(d, part), per_prime_exponents(d), part)


# twist relation


def twist_which(d: NewformDescriptor, p: int) -> int | None:
    """Which quadratic twist is used at p = 2 (chi_{-1} or chi_2); None at odd p."""
    if p != 2:
        return None
    return 2 if d.entry(2).type == "supercuspidal" and d.level_exponent(2) == 2 else -1


@dataclass(frozen=True)
class TwistProduct:
    p: int
    M_prime: int
    by_symbols: int
    by_character: int
    factors: tuple[tuple[int, int, int], ...]  # (q, val_q, eps_q)

    @property
    def product(self) -> int:
        out = 1
        for _, _, e in self.factors:
            out *= e
        return out

    @property
    def holds(self) -> bool:
        return self.product == self.by_symbols == self.by_character


def twist_product(d: NewformDescriptor, p: int, exponents: dict[int, int] | None = None) -> TwistProduct:
    """prod_{q != p} eps_q against chi_p(M'), with chi_p(M') read off twice."""
    if p not in d.primes:
        raise DomainError(f"{p} does not divide the level")
    exponents = exponents or per_prime_exponents(d)
    which = twist_which(d, p)
    M = 1
    factors = []
    for q, v in sorted(exponents.items()):
        if q == p:
            continue
        M *= q**v
        factors.append((q, v, unramified_twist_epsilon_q(q, p, v, which or -1)))
    if p == 2:
        symbols = jacobi(DYADIC_DISCRIMINANTS[which], M)
    else:
        symbols = legendre(M, p)
    chi = twist_for_prime(p, d.level_exponent(p), d.entry(p).type == "supercuspidal")
    val = chi(LocalFieldSpec(p).elt(M))
    if val == val.one(p):
        by_char = 1
    elif val == -val.one(p):
        by_char = -1
    else:
        raise AssertionError(f"quadratic character took the value {val.render()}")
    return TwistProduct(p, M, symbols, by_char, tuple(factors))


@dataclass
class TwistRelation:
    p: int
    twist: str
    product: TwistProduct
    variance: str
    variance_convention: str
    closed_rule: str
    closed_match: bool | None
    type_name: str
    verdict: str | None
    verdict_consistent: bool | None
    discriminant_class: str | None = None

    def render(self) -> str:
        c = self.twist
        return f"eps(sym3(pi) x {c}) = {self.product.by_symbols:+d} * ({self.variance}) * eps(sym3(pi))"

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "twist": self.twist,
            "M_prime": self.product.M_prime,
            "chi_M_prime": self.product.by_symbols,
            "chi_M_prime_by_character": self.product.by_character,
            "product_over_q": self.product.product,
            "product_holds": self.product.holds,
            "eps_p": self.variance,
            "convention": self.variance_convention,
            "closed_rule": self.closed_rule,
            "closed_match": self.closed_match,
            "type": self.type_name,
            "relation": self.render(),
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict
            out["verdict_consistent"] = self.verdict_consistent
        if self.discriminant_class is not None:
            out["discriminant_class"] = self.discriminant_class
        return out


def _twist_name(p: int, which: int | None) -> str:
    if p != 2:
        return f"chi_{p}"
    return {-1: "chi_-1", 2: "chi_2", -2: "chi_-2"}[which]


def _sign(x) -> int | None:
    one = x.one(x.p)
    if x == one:
        return 1
    if x == -one:
        return -1
    return None


def _param(chi: MultiplicativeCharacter):
    return solve_additive_parameter(chi, AdditiveCharacter.standard(chi.field))


def _verdict(sc: SupercuspidalDihedral, eps, type_name: str, tc, chi) -> tuple[str | None, str | None]:
    """The type (and discriminant class) that the observed eps_p selects."""
    K, p = sc.K, sc.p
    n, c = sc.level_exponent, sc.nebentypus_exponent
    kappa = sc.kappa
    k3 = kappa**3
    a3 = k3.conductor()
    chi_k = inflate_by_norm(chi, K)
    if K.kind == "unramified":
        if 2 * c == n:
            return None, None
        if (p >= 5) or (p == 3 and a3 > 1) or (p == 2 and n > 6):
            s = K.mul(_param(k3), _param(kappa * sc.epsilon_prime()))
            cands = {"I or II": chi_k(s)}
            if tc.name == "III":
                Qp = LocalFieldSpec(p)
                phi = tc.phis[0]
                d = Qp.mul(_param(phi * norm_residue_character(K)), _param(phi))
                cands["III"] = chi(d) * chi_k(_param(kappa * sc.epsilon_prime()))
            hits = [k for k, v in cands.items() if eps == v]
            if not hits:
                return "no relation matches", None
            return " | ".join(hits), None
        if p == 3 and a3 == 1:
            s2 = _param(kappa * sc.epsilon_prime())
            if eps != chi_k(s2):
                return "no relation matches", None
            if k3(K.uniformizer) == k3(K.uniformizer).one(3):
                return "inconclusive (kappa^3(3) = 1)", None
            return "I or II", None
        return None, None
    if p == 2:
        if kappa.conductor() < K.delta + 1:
            return None, None
        s = K.mul(_param(k3), _param(kappa * sc.epsilon_prime()))
        if _sign(chi_k(s)) == -1:
            sg = _sign(eps)
            cls = {1: "delta = 2", -1: "delta = 3"}.get(sg)
            return "I or II", cls
        return "I or II", None
    if p >= 5:
        return ("II" if c <= 1 else "I or II"), None
    if a3 == 0:
        return "III", None
    if a3 == 1 or a3 % 2 == 0:
        return "I or II", None
    base = eps.one(3)
    if tc.name == "III":
        Qp = LocalFieldSpec(3)
        phi = tc.phis[0]
        base = chi(Qp.mul(_param(phi * norm_residue_character(K)), _param(phi)))
    cls = "Q_3(sqrt 3)" if eps == base else "Q_3(sqrt -3)" if eps == -base else None
    return ("III" if tc.name == "III" else "I or II"), cls


def global_twist_relation(d: NewformDescriptor, p: int, exponents: dict[int, int] | None = None) -> TwistRelation:
    if p not in d.primes:
        raise DomainError(f"{p} does not divide the level")
    prod = twist_product(d, p, exponents)
    lp = d.parameter(p)
    sc = isinstance(lp, SupercuspidalDihedral)
    chi = twist_for_prime(p, lp.level_exponent, supercuspidal=sc)
    r = variance_epsilon(lp, chi)
    verdict = cls = consistent = None
    if sc:
        tc = classify_type(lp)
        verdict, cls = _verdict(lp, r.compared, r.type_name, tc, chi)
        if verdict is not None:
            named = verdict.replace(" or ", " ").replace("|", " ").split()
            consistent = None if verdict.startswith(("no ", "inconclusive")) else r.type_name in named
    return TwistRelation(
        p,
        _twist_name(p, twist_which(d, p)),
        prod,
        r.compared.simplified().render(),
        r.convention,
        r.closed.rule,
        r.matches,
        r.type_name,
        verdict,
        consistent,
        cls,
    )


# report


@dataclass
class Sym3Report:
    descriptor: NewformDescriptor
    conductor: GlobalConductor
    per_prime: list[dict]
    twist_relations: list[TwistRelation] = field(default_factory=list)

    def to_json(self) -> dict:
        c = self.conductor
        return {
            "global_conductor": {
                "factors": [[p, e] for p, e in sorted(c.per_prime.items())],
                "value": c.value,
                "closed_factors": [[p, e] for p, e in sorted(c.closed.items())],
                "closed_value": c.closed_value,
                "agree": c.agrees,
            },
            "per_prime": self.per_prime,
            "twist_relations": [t.to_json() for t in self.twist_relations],
        }


def per_prime_record(d: NewformDescriptor, p: int, conductor: GlobalConductor) -> dict:
    lp = d.parameter(p)
    rep = local_sym3_conductor(lp)
    tc = classify_type(lp)
    out = {
        "p": p,
        "type": d.entry(p).type,
        "N": d.level_exponent(p),
        "C": d.nebentypus_exponent(p),
        "sets": conductor.partition.sets_of(p),
        "sym3_conductor": rep.machinery,
        "closed_exponent": conductor.closed[p],
        "local_rule": rep.rule,
        "sym3_type": tc.name,
    }
    if isinstance(lp, SupercuspidalDihedral):
        out["K"] = lp.K.label()
        out["kappa_unit_order"] = lp.unit_order()
    return out


def sym3_report(d: NewformDescriptor, relations: bool = True) -> Sym3Report:
    gc = global_sym3_conductor(d)
    recs = [per_prime_record(d, p, gc) for p in d.primes]
    rels = [global_twist_relation(d, p, gc.per_prime) for p in d.primes] if relations else []
    return Sym3Report(d, gc, recs, rels)


def dumps(obj) -> str:
    """Byte-stable JSON."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# random descriptors


@dataclass(frozen=True)
class GeneratorConfig:
    primes: tuple[int, ...] = (2, 3, 5, 7, 11)
    max_primes: int = 3
    principal_levels: tuple[tuple[int, int], ...] = ((2, 5), (3, 3), (5, 2), (7, 2), (11, 1))
    sc_levels: tuple[tuple[int, int, int], ...] = ((2, 1, 4), (3, 2, 4), (5, 2, 2), (7, 1, 2), (11, 1, 2))


def _sc_pool(p: int, unram_level: int, ram_level: int) -> list[MultiplicativeCharacter]:
    from .sweeps import dihedral_data, quadratic_extensions

    out = []
    for K in quadratic_extensions(p):
        lv = unram_level if K.kind == "unramified" else ram_level
        for sc, _ in dihedral_data(K, lv):
            if p_minimality(sc).minimal and not _h_problems(sc):
                out.append(sc.kappa)
    return out


def _h_problems(sc: SupercuspidalDihedral) -> bool:
    K, n, c = sc.K, sc.level_exponent, sc.nebentypus_exponent
    return (K.kind == "unramified" and 2 * c == n) or (sc.p == 2 and K.kind == "ramified" and n < 2 * K.delta + 1)


class DescriptorGenerator:
    """Seeded random minimal descriptors satisfying Hypothesis (H)."""

    def __init__(self, seed: int, cfg: GeneratorConfig = GeneratorConfig()):
        self.rng = random.Random(seed)
        self.cfg = cfg
        self._pools: dict[tuple[int, str], list] = {}

    def pool(self, p: int, kind: str) -> list:
        key = (p, kind)
        if key not in self._pools:
            if kind == "principal":
                lv = dict(self.cfg.principal_levels)[p]
                self._pools[key] = [w for w in all_characters(LocalFieldSpec(p), lv) if not w.is_unramified()]
            else:
                _, u, r = next(t for t in self.cfg.sc_levels if t[0] == p)
                self._pools[key] = _sc_pool(p, u, r)
        return self._pools[key]

    def entry(self, p: int, kind: str) -> LocalEntry:
        if kind == "special":
            return LocalEntry(p, "special")
        x = self.rng.choice(self.pool(p, kind))
        return LocalEntry(p, "principal", omega=x) if kind == "principal" else LocalEntry(p, "supercuspidal", kappa=x)

    def descriptor(self, kinds=TYPES) -> NewformDescriptor:
        n = self.rng.randint(1, self.cfg.max_primes)
        primes = sorted(self.rng.sample(self.cfg.primes, n))
        entries = [self.entry(p, self.rng.choice(kinds)) for p in primes]
        sign = 1
        for e in entries:
            if e.type != "special":
                det = e.parameter(2).determinant()
                v = det(LocalFieldSpec(e.p).elt(-1))
                sign *= 1 if v == v.one(e.p) else -1
        weight = self.rng.choice((2, 4)) if sign == 1 else 3
        level, neb = [], []
        for e in entries:
            lp = e.parameter(weight)
            level.append((e.p, lp.level_exponent))
            if lp.nebentypus_exponent:
                neb.append((e.p, lp.nebentypus_exponent))
        return NewformDescriptor(weight, tuple(level), tuple(neb), True, tuple(entries))

    def squarefree_special(self) -> NewformDescriptor:
        n = self.rng.randint(1, len(self.cfg.primes))
        primes = sorted(self.rng.sample(self.cfg.primes, n))
        weight = self.rng.choice((2, 4, 6))
        return NewformDescriptor(weight, tuple((p, 1) for p in primes), (), True, tuple(LocalEntry(p, "special") for p in primes))


def global_agreement_sweep(seed: int, count: int = 200, squarefree: int = 30, twist: int = 50) -> dict:
    gen = DescriptorGenerator(seed)
    disagreements, twist_failures = [], []
    checked = 0
    for _ in range(count):
        d = gen.descriptor()
        gc = global_sym3_conductor(d)
        checked += 1
        if not gc.agrees:
            disagreements.append((d.to_json(), sorted(gc.closed.items()), sorted(gc.per_prime.items())))
    sq_bad = []
    for _ in range(squarefree):
        d = gen.squarefree_special()
        gc = global_sym3_conductor(d)
        if not (gc.value == gc.closed_value == d.N**3):
            sq_bad.append(d.to_json())
    for _ in range(twist):
        d = gen.descriptor()
        p = gen.rng.choice(d.primes)
        tp = twist_product(d, p)
        if not tp.holds:
            twist_failures.append((d.to_json(), p, tp))
    return {
        "seed": seed,
        "checked": checked,
        "disagreements": disagreements,
        "squarefree_failures": sq_bad,
        "twist_failures": twist_failures,
    }


__all__ = [
    "DescriptorError",
    "DescriptorGenerator",
    "GeneratorConfig",
    "GlobalConductor",
    "LocalEntry",
    "NewformDescriptor",
    "PrimePartition",
    "Sym3Report",
    "TwistProduct",
    "TwistRelation",
    "Violation",
    "check_hypothesis_h",
    "closed_exponents",
    "descriptor_from_json",
    "descriptor_violations",
    "dumps",
    "global_agreement_sweep",
    "global_sym3_conductor",
    "global_twist_relation",
    "minimality_violations",
    "parse_descriptor",
    "partition_primes",
    "sym3_report",
    "twist_product",
]
