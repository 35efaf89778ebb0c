"""sym3 command line: conductor, classify, epsilon, char, verify.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .characters import AdditiveCharacter, LiteralError, character_from_literal, character_to_literal
from .conductors import f_chi, predict_cube_conductor_k, predict_cube_conductor_qp, predict_square_conductor_q2
from .epsilon import EpsilonInput, epsilon_factor, local_tau
from .global_report import (
    DescriptorError,
    dumps,
    global_sym3_conductor,
    global_twist_relation,
    parse_descriptor,
    per_prime_record,
    sym3_report,
)
from .verify import SUITES, VerifyConfig, run_verify
from .wd import DomainError, SupercuspidalDihedral, classify_type

OK, DOMAIN, USAGE, VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def flatten(obj, prefix: str = "") -> list[tuple[str, str]]:
    """Leaf paths of a JSON value, in key order."""
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += flatten(obj[k], f"{prefix}.{k}" if prefix else k)
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += flatten(v, f"{prefix}[{i}]")
        return out or [(prefix, "[]")]
    return [(prefix, json.dumps(obj))]


def render_table(obj) -> str:
    rows = flatten(obj)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def emit(obj, fmt: str) -> None:
    sys.stdout.write(dumps(obj) if fmt == "json" else render_table(obj))


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LiteralError("$", f"malformed JSON in {path}: {exc}") from None


def _descriptor(path: str):
    try:
        open(path).close()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_descriptor(path)


def _prime_in(d, p: int) -> None:
    if p not in d.primes:
        raise DomainError(f"{p} does not divide the level")


# subcommands


def cmd_conductor(args) -> int:
    d = _descriptor(args.input)
    emit(sym3_report(d).to_json(), args.format)
    return OK


def cmd_classify(args) -> int:
    d = _descriptor(args.input)
    _prime_in(d, args.prime)
    gc = global_sym3_conductor(d)
    rec = per_prime_record(d, args.prime, gc)
    rel = global_twist_relation(d, args.prime, gc.per_prime).to_json()
    lp = d.parameter(args.prime)
    tc = classify_type(lp)
    out = {"prime": args.prime, "local": rec, "sym3_type": tc.name, "twist_relation": rel}
    if isinstance(lp, SupercuspidalDihedral):
        out["kappa_cubed_conductor"] = (lp.kappa**3).conductor()
        for key in ("verdict", "verdict_consistent", "discriminant_class"):
            if key in rel:
                out[key] = rel[key]
    emit(out, args.format)
    return OK


def cmd_epsilon(args) -> int:
    if args.char is not None:
        if args.input is not None:
            raise UsageError("give either --input/--prime or --char, not both")
        chi = character_from_literal(_load_json(args.char))
        scale = Fraction(args.phi_scale) if args.phi_scale is not None else Fraction(1, chi.p)
        phi = AdditiveCharacter(chi.field, scale)
        inp = EpsilonInput(chi, phi)
        out = {
            "character": character_to_literal(chi),
            "phi_scale": str(scale),
            "conductor": chi.conductor(),
            "phi_conductor": phi.conductor(),
            "tau": str(local_tau(inp)),
            "epsilon": epsilon_factor(inp).render(),
        }
        emit(out, args.format)
        return OK
    if args.input is None or args.prime is None:
        raise UsageError("epsilon needs --input and --prime, or --char")
    d = _descriptor(args.input)
    _prime_in(d, args.prime)
    gc = global_sym3_conductor(d)
    rel = global_twist_relation(d, args.prime, gc.per_prime).to_json()
    emit({"prime": args.prime, **{k: rel[k] for k in ("twist", "eps_p", "convention", "closed_rule", "closed_match", "relation")}}, args.format)
    return OK


def cmd_char(args) -> int:
    chi = character_from_literal(_load_json(args.char))
    K = chi.field
    a = chi.conductor()
    out = {"character": character_to_literal(chi), "conductor": a, "unit_order": chi.unit_order()}
    if args.op == "cube-conductor":
        out["cube_conductor"] = (chi**3).conductor()
        if K.kind == "base":
            if K.p != 2:
                out["predicted"] = predict_cube_conductor_qp(K.p, a, chi.unit_order())
        else:
            out["predicted"] = predict_cube_conductor_k(chi)
            out["f_chi"] = f_chi(chi)
    elif args.op == "square-conductor":
        out["square_conductor"] = (chi**2).conductor()
        if K.kind == "base" and K.p == 2:
            out["predicted"] = predict_square_conductor_q2(a)
    emit(out, args.format)
    return OK


def cmd_verify(args) -> int:
    cfg = VerifyConfig(args.max_p, args.max_level, args.seed)
    print(f"seed {args.seed}", file=sys.stderr)
    report = run_verify(args.suite, cfg)
    if args.format == "json":
        sys.stdout.write(dumps(report.to_json()))
    else:
        sys.stdout.write(report.table() + "\n")
    return OK if report.passed else VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sym3", description="Conductors and epsilon variations of symmetric cubes of GL(2) newforms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, default="json"):
        p.add_argument("--format", choices=("json", "table"), default=default)

    p = sub.add_parser("conductor", help="global sym^3 conductor and per-prime report")
    p.add_argument("--input", required=True)
    fmt(p)
    p.set_defaults(func=cmd_conductor)

    p = sub.add_parser("classify", help="sym^3 type and twist relation at one prime")
    p.add_argument("--input", required=True)
    p.add_argument("--prime", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("epsilon", help="local epsilon variation at a prime, or the epsilon factor of a character")
    p.add_argument("--input")
    p.add_argument("--prime", type=int)
    p.add_argument("--char")
    p.add_argument("--phi-scale", help="additive character x -> exp(2 pi i {scale Tr x}); default 1/p")
    fmt(p)
    p.set_defaults(func=cmd_epsilon)

    p = sub.add_parser("char", help="conductor arithmetic of a character literal")
    p.add_argument("--op", choices=("cube-conductor", "square-conductor", "conductor"), required=True)
    p.add_argument("--char", required=True)
    fmt(p)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--max-p", type=int)
    p.add_argument("--max-level", type=int)
    p.add_argument("--seed", type=int, default=0)
    fmt(p, "table")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"sym3: error: {exc}", file=sys.stderr)
        return USAGE
    except (DescriptorError, DomainError, LiteralError, ValueError) as exc:
        print(f"sym3: {exc}", file=sys.stderr)
        return DOMAIN


if __name__ == "__main__":
    sys.exit(main())
