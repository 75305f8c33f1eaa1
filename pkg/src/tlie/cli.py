"""Command-line interface: ``tlie <command> <spec> ...``.

``<spec>`` is a catalog key such as ``sl_plus_q:3`` or ``Lpq:3x3:eps12=-1``, or a
path to a spec-description file.  Exit codes: 0 success, 1 mathematical
failure (a check fails, a certificate is refuted, a word is not a member),
2 usage or input error, 3 bounds too small.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import catalog, specfile
from .axioms import ALL_CHECKS, verify
from .core import TLieSpec, specialize_spec
from .enveloping import diamond_check, enumerate_pbw, ideal_member_truncated, normalize
from .errors import BoundsTooSmall, ExpressionSyntaxError, TLieError, UnknownId
from .expr import parse_assignment, parse_expression
from .symrep import act_word, independence_certificate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUNDS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def resolve_spec(arg: str) -> TLieSpec:
    if os.path.exists(arg):
        return specfile.load(arg)
    if catalog.is_catalog_key(arg):
        return catalog.load(arg)
    raise UsageError(f"{arg!r} is neither a file nor a catalog key")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_verify(args) -> int:
    spec = resolve_spec(args.spec)
    report = verify(spec, args.checks, r_max=args.r_max, max_delta=args.max_delta,
                    method=args.method, composition=args.jr)
    _emit(args, report.to_dict(timing=not args.no_timing), report.table())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_normalize(args) -> int:
    spec = resolve_spec(args.spec)
    t = parse_expression(args.expr, spec)
    if args.trace:
        nf, tr = normalize(spec, t, trace=True)
        steps = [s.to_dict(spec) for s in tr.steps]
        lines = [f"{i + 1}. {s['rule']} at {s['position']} on {s['before']['word']}: {s['after']}"
                 for i, s in enumerate(steps)]
        lines.append(f"normal form: {spec.format(nf)}")
        _emit(args, {"input": spec.format(t), "normal_form": spec.format(nf), "trace": steps}, "\n".join(lines))
    else:
        nf = normalize(spec, t)
        _emit(args, {"input": spec.format(t), "normal_form": spec.format(nf)}, spec.format(nf))
    return EXIT_OK


def cmd_pbw(args) -> int:
    spec = resolve_spec(args.spec)
    monos = enumerate_pbw(spec, args.max_len, exact=args.exact)
    words = [".".join(m) or "1" for m in monos]
    _emit(args, {"spec": spec.name, "max_len": args.max_len, "exact": args.exact,
                 "count": len(words), "monomials": words},
          "\n".join(words + [f"# {len(words)} monomials"]))
    return EXIT_OK


def cmd_diamond(args) -> int:
    spec = resolve_spec(args.spec)
    rec = diamond_check(spec, args.max_delta)
    lines = [f"diamond: {rec.status} ({rec.cases} critical words)"]
    lines += [f"  {'.'.join(w.inputs)}: {spec.format(w.discrepancy)}" for w in rec.witnesses]
    _emit(args, rec.to_dict(spec.word_key, timing=not args.no_timing), "\n".join(lines))
    return EXIT_FAIL if rec.failed else EXIT_OK


def cmd_member(args) -> int:
    spec = resolve_spec(args.spec)
    t = parse_expression(args.expr, spec)
    cert = ideal_member_truncated(spec, t, args.max_len, args.max_delta)
    payload = {"spec": spec.name, "element": spec.format(t), **cert.to_dict(spec)}
    lines = [cert.status(), f"  generators in bounds: {cert.generators}"]
    if cert.member:
        lines.append(f"  multiplier: {cert.multiplier}  (ring-verified: {cert.ring_verified})")
        for entry in payload["combination"]:
            rel = f"R({entry['relation'][0]},{entry['relation'][1]})"
            lines.append(f"  {entry['coeff']} * [{entry['left'] or '1'}] {rel} [{entry['right'] or '1'}]")
    elif cert.remainder is not None:
        lines.append(f"  remainder: {cert.remainder}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if cert.member else EXIT_FAIL


def cmd_act(args) -> int:
    spec = resolve_spec(args.spec)
    t = parse_expression(args.expr, spec)
    value = act_word(spec, t, ())
    _emit(args, {"spec": spec.name, "element": spec.format(t), "action_on_1": spec.format(value)},
          spec.format(value))
    return EXIT_OK


def cmd_certify(args) -> int:
    spec = resolve_spec(args.spec)
    cert = independence_certificate(spec, args.max_len)
    lines = [f"{cert.status}: {cert.monomials} PBW monomials up to length {cert.max_len}, "
             f"Lemma C bound {cert.lemma_c_bound}"]
    if cert.witness is not None:
        w = cert.witness
        lines.append(f"  witness {w.check} {w.inputs}: {spec.format(w.discrepancy)}")
    lines += [f"  {n}" for n in cert.notes]
    _emit(args, {"spec": spec.name, **cert.to_dict(spec)}, "\n".join(lines))
    return EXIT_OK if cert.certified else EXIT_FAIL


def cmd_specialize(args) -> int:
    spec = resolve_spec(args.spec)
    assignment = parse_assignment(args.assignment)
    unknown = set(assignment) - set(spec.variables)
    if unknown:
        raise UsageError(f"{spec.name} has no variable(s) {', '.join(sorted(unknown))}")
    out = specialize_spec(spec, assignment)
    text = specfile.dumps(out)
    _emit(args, {"spec": out.name, "description": text}, text.rstrip("\n"))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit(args, {"families": list(catalog.CATALOG_KEYS), "examples": list(catalog.EXAMPLE_KEYS)},
              "\n".join(catalog.CATALOG_KEYS))
        return EXIT_OK
    if not args.key:
        raise UsageError("catalog dump needs a key")
    spec = catalog.load(args.key)
    text = specfile.dumps(spec)
    _emit(args, {"spec": spec.name, "description": text}, text.rstrip("\n"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlie", description="Verify and compute with basic T-Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, spec: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if spec:
            p.add_argument("spec", help="catalog key or spec-description file")
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        p.set_defaults(func=func)
        return p

    p = add("verify", cmd_verify, "run axiom and property checks")
    p.add_argument("--checks", default="all", help=f"comma list from: {', '.join(ALL_CHECKS)} (or 'all')")
    p.add_argument("--r-max", type=int, default=None, help="grade bound for the adequacy check")
    p.add_argument("--max-delta", type=int, default=None, help="grade bound for the diamond check")
    p.add_argument("--method", choices=("auto", "rewrite", "linear"), default="auto")
    p.add_argument("--jr", choices=("extended", "literal"), default="extended",
                   help="generators of J_r used by the adequacy check")
    p.add_argument("--no-timing", action="store_true", help="omit timings from the JSON report")

    p = add("normalize", cmd_normalize, "PBW normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--trace", action="store_true")

    p = add("pbw", cmd_pbw, "enumerate PBW monomials")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="only monomials of exactly this length")

    p = add("diamond", cmd_diamond, "confluence check on critical words")
    p.add_argument("--max-delta", type=int, required=True)
    p.add_argument("--no-timing", action="store_true")

    p = add("member", cmd_member, "truncated membership in the defining ideal")
    p.add_argument("expr")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-delta", type=int, required=True)

    p = add("act", cmd_act, "act with an element on 1 in the symmetric algebra")
    p.add_argument("expr")

    p = add("certify", cmd_certify, "certify independence of PBW monomials")
    p.add_argument("--max-len", type=int, required=True)

    p = add("specialize", cmd_specialize, "evaluate variables and print the resulting algebra")
    p.add_argument("assignment", nargs="+", help="e.g. q=1 p=1")

    p = add("catalog", cmd_catalog, "list built-in algebras or dump one", spec=False)
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("key", nargs="?")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BoundsTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (UsageError, ExpressionSyntaxError, UnknownId, TLieError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run_command(argv: Sequence[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
