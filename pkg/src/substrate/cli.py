"""Command-line front end.

Subcommands: check-laws, subst, enumerate, product-rule, rename, parse.
Exit codes: 0 success, 1 law or substitution failure, 2 usage error.
Output is byte-deterministic for identical inputs and flags; multi-record
output is available as human tables or line-delimited JSON via --json.
"""

from __future__ import annotations

import argparse
import json
import sys

from .contexts import Mode, parse_renaming
from .enumeration import (
    EnumerationBounds,
    count_table,
    count_table_csv,
    enumerate_terms,
    terms_with_op_count,
)
from .errors import LimitExceeded, SignatureSyntaxError, SubstrateError, TermSyntaxError
from .laws import LawBounds, run_suite, suite_passed
from .signatures import parse_signature, print_signature
from .substitution import product_rule_case, replace_shared, replace_split
from .terms import check_wellformed, parse_term, print_term, rename

USAGE_ERROR = 2
CHECK_FAILURE = 1


class UsageError(Exception):
    pass


def _load_signature(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read signature file: {exc}") from None
    try:
        return parse_signature(text)
    except SignatureSyntaxError as exc:
        raise UsageError(f"bad signature: {exc}") from None


def _parse_mode(text):
    try:
        return Mode.from_string(text)
    except ValueError:
        raise UsageError(f"unknown mode: {text}") from None


def _parse_term_arg(sig, text):
    try:
        return parse_term(sig, text)
    except TermSyntaxError as exc:
        raise UsageError(f"bad term: {exc}") from None


def _term_json(term, ctx):
    return json.dumps({"ctx": ctx, "term": print_term(term)}, sort_keys=True)


def cmd_check_laws(args):
    sig = _load_signature(args.signature)
    modes = [_parse_mode(args.mode)] if args.mode else list(Mode)
    bounds = LawBounds(args.max_ctx, args.max_ops)
    all_reports = []
    for mode in modes:
        all_reports.extend(run_suite(sig, mode, bounds))
    if args.json:
        for report in all_reports:
            print(report.to_json())
    else:
        header = f"{'law':<12} {'mode':<10} {'instances':>9} {'failures':>8}  status"
        print(header)
        print("-" * len(header))
        for report in all_reports:
            status = "pass" if report.passed else "FAIL"
            print(
                f"{report.law:<12} {str(report.mode):<10} "
                f"{report.instances:>9} {len(report.failures):>8}  {status}"
            )
    return 0 if suite_passed(all_reports) else CHECK_FAILURE


def cmd_subst(args):
    sig = _load_signature(args.signature)
    mode = _parse_mode(args.mode)
    body = _parse_term_arg(sig, args.body)
    payload = _parse_term_arg(sig, args.payload)
    if args.shared:
        n = args.ctx - 1
        if args.payload_ctx is not None and args.payload_ctx != n:
            raise UsageError(
                "--shared requires the payload context to be --ctx minus one"
            )
        result = replace_shared(sig, mode, body, payload, n)
        print(_term_json(result, n))
    else:
        if args.payload_ctx is None:
            raise UsageError("--payload-ctx is required without --shared")
        result = replace_split(
            sig, mode, body, args.ctx, payload, args.payload_ctx
        )
        print(_term_json(result, args.ctx - 1 + args.payload_ctx))
    return 0


def cmd_enumerate(args):
    sig = _load_signature(args.signature)
    mode = _parse_mode(args.mode)
    if args.count_table:
        table = count_table(sig, mode, args.ctx, args.ops)
        print(count_table_csv(table))
        return 0
    if args.count_only:
        count = len(terms_with_op_count(sig, mode, args.ctx, args.ops))
        print(f"{args.ctx},{args.ops},{count}")
        return 0
    EnumerationBounds(args.ops, args.ctx, mode).validate()
    for term in terms_with_op_count(sig, mode, args.ctx, args.ops):
        if args.json:
            print(_term_json(term, args.ctx))
        else:
            print(print_term(term))
    return 0


def cmd_product_rule(args):
    sig = _load_signature(args.signature)
    mode = _parse_mode(args.mode)
    left = _parse_term_arg(sig, args.left)
    right = _parse_term_arg(sig, args.right)
    tag = product_rule_case(sig, mode, left, right, args.ctx)
    if args.json:
        print(json.dumps({"case": tag.value}, sort_keys=True))
    else:
        print(tag.value)
    return 0


def cmd_rename(args):
    sig = _load_signature(args.signature)
    mode = _parse_mode(args.mode)
    term = _parse_term_arg(sig, args.term)
    try:
        rho = parse_renaming(args.map, mode, cod=args.cod)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if rho.dom != args.ctx:
        raise UsageError(
            f"renaming domain {rho.dom} does not match --ctx {args.ctx}"
        )
    check_wellformed(sig, mode, term, args.ctx)
    result = rename(sig, mode, term, rho)
    print(_term_json(result, rho.cod))
    return 0


def cmd_parse(args):
    sig = _load_signature(args.signature)
    print(print_signature(sig))
    if args.term is not None:
        if args.ctx is None:
            raise UsageError("--ctx is required with --term")
        term = _parse_term_arg(sig, args.term)
        if args.mode:
            mode = _parse_mode(args.mode)
            profile = check_wellformed(sig, mode, term, args.ctx)
            print(print_term(term))
            print("profile: " + " ".join(str(c) for c in profile.counts))
        else:
            print(print_term(term))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="substrate",
        description="Terms with binding and substitution in four structural modes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    laws = sub.add_parser("check-laws", help="run the law suites")
    laws.add_argument("signature")
    laws.add_argument("--mode", help="one mode (default: all four)")
    laws.add_argument("--max-ctx", type=int, default=3)
    laws.add_argument("--max-ops", type=int, default=3)
    laws.add_argument("--json", action="store_true")
    laws.set_defaults(func=cmd_check_laws)

    subst = sub.add_parser("subst", help="single-variable substitution")
    subst.add_argument("signature")
    subst.add_argument("body", help="body term; the target is its last position")
    subst.add_argument("payload")
    subst.add_argument("--mode", required=True)
    subst.add_argument("--ctx", type=int, required=True, help="body context size")
    subst.add_argument("--payload-ctx", type=int, default=None)
    subst.add_argument(
        "--shared", action="store_true",
        help="substitute over a shared context (cartesian/relevant)",
    )
    subst.set_defaults(func=cmd_subst)

    enum = sub.add_parser("enumerate", help="enumerate wellformed terms")
    enum.add_argument("signature")
    enum.add_argument("--mode", required=True)
    enum.add_argument("--ctx", type=int, required=True)
    enum.add_argument("--ops", type=int, required=True,
                      help="exact operator-node count")
    enum.add_argument("--count-only", action="store_true",
                      help="print one CSV row: ctx,ops,count")
    enum.add_argument("--count-table", action="store_true",
                      help="print the full CSV table up to --ctx and --ops")
    enum.add_argument("--json", action="store_true")
    enum.set_defaults(func=cmd_enumerate)

    rule = sub.add_parser("product-rule", help="classify a pairing")
    rule.add_argument("signature")
    rule.add_argument("left")
    rule.add_argument("right")
    rule.add_argument("--mode", required=True)
    rule.add_argument("--ctx", type=int, required=True,
                      help="extended context size; the routed position is last")
    rule.add_argument("--json", action="store_true")
    rule.set_defaults(func=cmd_product_rule)

    ren = sub.add_parser("rename", help="apply a renaming to a term")
    ren.add_argument("signature")
    ren.add_argument("term")
    ren.add_argument("--mode", required=True)
    ren.add_argument("--ctx", type=int, required=True)
    ren.add_argument("--map", required=True, help="textual form, e.g. '[2 1 3]'")
    ren.add_argument("--cod", type=int, default=None,
                     help="codomain size (default: largest map entry)")
    ren.set_defaults(func=cmd_rename)

    par = sub.add_parser("parse", help="parse and reprint a signature")
    par.add_argument("signature")
    par.add_argument("--term", default=None)
    par.add_argument("--ctx", type=int, default=None)
    par.add_argument("--mode", default=None)
    par.set_defaults(func=cmd_parse)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"substrate: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (SignatureSyntaxError, TermSyntaxError, LimitExceeded) as exc:
        print(f"substrate: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SubstrateError as exc:
        print(f"substrate: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
