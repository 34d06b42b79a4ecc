"""Command-line interface: heckepairs <subcommand> [options]."""

from __future__ import annotations

import argparse
import json
import sys

from .classify import characters_with_conductor, enumerate_characters, listing_line
from .dihedral_rep import ExactRoot, build_group, faithfulness_criteria, verify_structure
from .equiv import construct_partner
from .ideals import IntegralIdeal, parse_place
from .lfunc import dirichlet_coeffs, induced_descriptor
from .quadfield import make_field, parse_element


def parse_conductor(K, specs: list[str]) -> IntegralIdeal:
    """Parse entries 'p:kind:label:exp' (or 'p:kind:exp' for non-split kinds)."""
    factors: dict = {}
    for spec in specs:
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            parts = item.split(":")
            if len(parts) == 4:
                place_text, exp = ":".join(parts[:3]), parts[3]
            elif len(parts) == 3 and parts[1] != "split":
                place_text, exp = ":".join(parts[:2]), parts[2]
            else:
                raise ValueError(f"bad conductor entry {item!r}; expected p:kind:label:exponent")
            v = parse_place(K, place_text)
            e = int(exp)
            if e < 1:
                raise ValueError(f"exponent must be positive in {item!r}")
            factors[v] = factors.get(v, 0) + e
    return IntegralIdeal(K.d, factors)


def _character(args):
    K = make_field(args.d)
    f = parse_conductor(K, args.conductor or [])
    chars = characters_with_conductor(K, f, clauses=False)
    if not chars:
        raise ValueError(f"no quadratic character of Q(sqrt {K.d}) has conductor {f!r}")
    if not 0 <= args.choice < len(chars):
        raise ValueError(f"--choice must be below {len(chars)}")
    return chars[args.choice]


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_field(args):
    K = make_field(args.d)
    eps = K.fundamental_unit
    out = {
        "d": K.d,
        "disc": K.disc,
        "omega": "(1+sqrt(d))/2" if K.d % 4 == 1 else "sqrt(d)",
        "signature": list(K.signature),
        "torsion_order": K.torsion_order,
        "fundamental_unit": eps.to_json() if eps else None,
        "fundamental_unit_norm": eps.norm() if eps else None,
        "class_number": K.class_number,
    }
    _emit(_dump(out), args.output)


def cmd_classify(args):
    K = make_field(args.d)
    chars = enumerate_characters(K, args.bound)
    if args.format == "json":
        _emit(_dump([c.to_json() for c in chars]), args.output)
    else:
        _emit("".join(listing_line(c) + "\n" for c in chars), args.output)


def cmd_char(args):
    chi = _character(args)
    K = chi.field
    values = {}
    for text in args.at or []:
        try:
            I = parse_conductor(K, [text])
        except ValueError:
            I = IntegralIdeal.from_place(parse_place(K, text))
        values[text] = chi.eval_ideal(I)
    for text in args.element or []:
        alpha = parse_element(text, K.d)
        values[text] = {"xi": chi.xi(alpha), "chi_inf": chi.chi_inf(alpha)}
    out = {"character": chi.to_json(), "values": values}
    _emit(_dump(out), args.output)


def cmd_coeffs(args):
    chi = _character(args)
    table = dirichlet_coeffs(chi, args.N)
    if args.format == "csv":
        lines = ["n,a_n"] + [f"{n},{a}" for n, a in enumerate(table.as_list(), start=1)]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        desc = induced_descriptor(chi)
        _emit(_dump(desc.to_json(table)), args.output)


def cmd_equiv(args):
    chi = _character(args)
    M = make_field(args.M) if args.M is not None else None
    _, cert = construct_partner(chi, N=args.N, M=M)
    _emit(_dump(cert.to_json()), args.output)
    if not cert.matched:
        return 1
    return 0


def cmd_rep_check(args):
    if args.r is not None:
        report = faithfulness_criteria(args.r, args.variant)
    else:
        ccs = ExactRoot(*args.chi_c_squared) if args.chi_c_squared else None
        G = build_group(args.m, args.variant, ccs)
        report = {"m": G.m, "variant": G.variant, "order": G.order, **verify_structure(G)}
    _emit(_dump(report), args.output)


def cmd_emit_form(args):
    chi = _character(args)
    desc = induced_descriptor(chi)
    table = dirichlet_coeffs(chi, args.N)
    if args.format == "csv":
        header = f"# level={desc.level} kind={desc.kind} nebentypus={desc.nebentypus}\n"
        lines = ["n,a_n"] + [f"{n},{a}" for n, a in enumerate(table.as_list(), start=1)]
        _emit(header + "\n".join(lines) + "\n", args.output)
    else:
        _emit(_dump(desc.to_json(table)), args.output)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heckepairs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_char(p):
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--conductor", action="append", help="p:kind:label:exponent, repeatable")
        p.add_argument("--choice", type=int, default=0, help="index among characters with this conductor")
        p.add_argument("--output")

    p = sub.add_parser("field", help="field invariants")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("classify", help="characters up to base change below a norm bound")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("char", help="build a character and evaluate it")
    with_char(p)
    p.add_argument("--at", action="append", help="place such as 13:split:1, or ideal in conductor syntax")
    p.add_argument("--element", action="append", help="element a+b*w for xi and chi_inf")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("coeffs", help="Dirichlet coefficients")
    with_char(p)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("equiv", help="construct and certify the partner character")
    with_char(p)
    p.add_argument("--N", type=int, default=10_000)
    p.add_argument("--M", type=int, help="force the partner field Q(sqrt M)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("rep-check", help="dihedral group structure checks")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--variant", choices=["cyclic", "product"], default="cyclic")
    p.add_argument("--r", type=int, help="run the faithfulness criteria for a character of order r")
    p.add_argument("--chi-c-squared", type=int, nargs=2, metavar=("NUM", "DEN"))
    p.add_argument("--output")
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("emit-form", help="form descriptor plus coefficients")
    with_char(p)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_emit_form)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status = args.func(args)
    except Exception as exc:  # every module error becomes a JSON error record
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err) + "\n")
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
