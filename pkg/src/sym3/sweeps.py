"""Exhaustive sweeps over local data: sym^3 conductors, the type table, and variance closed forms.

Supercuspidal data are enumerated one Galois orbit at a time (chi -> chi^j), with the
uniformizer sent to 1; conductors, types and minimality are constant on orbits and do
not see the uniformizer value, so each representative is weighted by its orbit size.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .arith import smallest_nonresidue
from .characters import all_characters, galois_orbit_representatives, sigma_conjugate
from .local import LocalFieldSpec
from .variance import variance_epsilon
from .wd import (
    TYPE_CELLS,
    DomainError,
    PrincipalSeries,
    Special,
    SupercuspidalDihedral,
    classify_type,
    hypothesis_violations,
    local_sym3_conductor,
    p_minimality,
    type_possibility,
)


@dataclass(frozen=True)
class SweepConfig:
    primes: tuple[int, ...] = (3, 5, 7)
    max_level: int = 3
    dyadic_max_level: int = 4
    principal_max_level: int = 4
    max_weight: int = 12


def quadratic_extensions(p: int) -> list[LocalFieldSpec]:
    if p == 2:
        return [LocalFieldSpec(2, "unramified")] + [LocalFieldSpec(2, "ramified", d) for d in (-1, 3, 2, -2, 6, -6)]
    return [
        LocalFieldSpec(p, "unramified"),
        LocalFieldSpec(p, "ramified", -p),
        LocalFieldSpec(p, "ramified", -p * smallest_nonresidue(p)),
    ]


def dihedral_data(K: LocalFieldSpec, max_level: int) -> Iterator[tuple[SupercuspidalDihedral, int]]:
    """(datum, orbit size) for kappa up to conductor max_level with kappa != kappa^sigma."""
    for kappa, size in galois_orbit_representatives(K, max_level):
        if kappa == sigma_conjugate(kappa):
            continue
        yield SupercuspidalDihedral(kappa), size


@dataclass
class ConductorSweep:
    checked: int = 0
    agreed: int = 0
    out_of_hypothesis: int = 0
    characters: int = 0
    mismatches: list = field(default_factory=list)
    special_values: set = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.special_values <= {3}


def conductor_sweep(cfg: SweepConfig = SweepConfig()) -> ConductorSweep:
    out = ConductorSweep()

    def record(label, rep, weight=1):
        out.characters += weight
        if not rep.applicable:
            out.out_of_hypothesis += 1
            return
        out.checked += 1
        if rep.agrees:
            out.agreed += 1
        else:
            out.mismatches.append((label, rep.machinery, rep.closed_form, rep.rule))

    primes = tuple(sorted(set(cfg.primes) | {2}))
    for p in primes:
        for k in range(2, cfg.max_weight + 1):
            rep = local_sym3_conductor(Special(p, k))
            out.special_values.add(rep.machinery)
            out.special_values.add(rep.closed_form)
        if p != 2:
            for w in all_characters(LocalFieldSpec(p), cfg.principal_max_level):
                if not w.is_unramified():
                    record(("principal", p, w.unit_exponents), local_sym3_conductor(PrincipalSeries(w)))
        level = cfg.dyadic_max_level if p == 2 else cfg.max_level
        for K in quadratic_extensions(p):
            for sc, size in dihedral_data(K, level):
                record(("supercuspidal", K.label(), sc.kappa.unit_exponents), local_sym3_conductor(sc), size)
    return out


@dataclass
class TypeTableSweep:
    counts: Counter = field(default_factory=Counter)
    forbidden_hits: list = field(default_factory=list)
    unwitnessed: list = field(default_factory=list)
    data: int = 0

    @property
    def ok(self) -> bool:
        return not self.forbidden_hits


def type_table_sweep(primes=(3, 5, 7), max_level: int = 3, ramified_max_level: int = 4) -> TypeTableSweep:
    """Every p-minimal datum is placed in its table cell; forbidden cells must stay empty."""
    out = TypeTableSweep()
    for p in primes:
        for K in quadratic_extensions(p):
            level = max_level if K.kind == "unramified" else ramified_max_level
            for sc, size in dihedral_data(K, level):
                if not p_minimality(sc).minimal:
                    continue
                tc = classify_type(sc)
                sq = None
                if p == 3 and K.kind == "unramified" and sc.level_exponent == 2:
                    sq = (sc.kappa**2).unit_order() == 1
                cell = type_possibility(p, K.kind, sc.nebentypus_exponent, sc.level_exponent, tc.name, sq)
                out.data += size
                out.counts[cell.key] += size
                if not cell.possible:
                    out.forbidden_hits.append((cell.key, K.label(), sc.kappa.unit_exponents))
    for cell in TYPE_CELLS:
        if cell.possible and out.counts[cell.key] == 0:
            out.unwitnessed.append(cell.key)
    for cell in TYPE_CELLS:
        out.counts.setdefault(cell.key, 0)
    return out


@dataclass
class VarianceSweep:
    by_rule: Counter = field(default_factory=Counter)
    mismatches: list = field(default_factory=list)
    induced_disagreements: list = field(default_factory=list)
    gamma_failures: list = field(default_factory=list)

    def failed_rules(self) -> set[str]:
        return {m[0] for m in self.mismatches}


def _record_variance(out: VarianceSweep, label, lp, chi=None) -> None:
    r = variance_epsilon(lp, chi)
    rule = r.closed.rule
    m = r.matches
    out.by_rule[(rule, {True: "match", False: "mismatch", None: "not asserted"}[m])] += 1
    if m is False:
        out.mismatches.append((rule, label, r.compared.render(), r.closed.value.render()))
    if r.induced_route is not None and r.induced_route != r.definitional:
        out.induced_disagreements.append(label)
    if r.gamma is not None and not (r.gamma.exact() == r.definitional and r.gamma.padic_ok()):
        out.gamma_failures.append(label)


def variance_sweep(
    primes=(2, 3, 5, 7), principal_level: int = 3, sc_level: int = 2, dyadic_level: int = 5, weights=(2, 3, 4)
) -> VarianceSweep:
    out = VarianceSweep()
    for p in primes:
        for k in weights:
            _record_variance(out, ("special", p, k), Special(p, k))
        for w in all_characters(LocalFieldSpec(p), principal_level):
            if not w.is_unramified():
                _record_variance(out, ("principal", p, w.unit_exponents), PrincipalSeries(w))
        level = dyadic_level if p == 2 else (sc_level + 1 if p == 3 else sc_level)
        for K in quadratic_extensions(p):
            lv = level if K.kind == "unramified" or p == 2 else max(level, 4 if p <= 5 else 2)
            for sc, _ in dihedral_data(K, lv):
                if p_minimality(sc).minimal:
                    _record_variance(out, ("supercuspidal", K.label(), sc.kappa.unit_exponents), sc)
    return out


__all__ = [
    "ConductorSweep",
    "DomainError",
    "SweepConfig",
    "TypeTableSweep",
    "VarianceSweep",
    "conductor_sweep",
    "dihedral_data",
    "hypothesis_violations",
    "quadratic_extensions",
    "type_table_sweep",
    "variance_sweep",
]
