"""Command line surface: `algid <subcommand>`.

Digest positionals accept an optional leading '@' escape because reserved
and removal digests start with '-'; `--` also terminates flag parsing.
Exit codes: 0 success, 1 domain errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, codec, generate
from .errors import AlgidError
from .params import DEFAULT_VERSION, OFFICIAL_VERSIONS, GroupParams, version
from .plan import evaluate_plan, load_plan
from .selftest import run_selftest
from .store import FileStore


def main(argv: list[str] | None = None) -> int:
    try:
        return _run(argv if argv is not None else sys.argv[1:])
    except AlgidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse usage failures
        return int(exc.code or 0)


def _run(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = _resolve_version(parser, args)
    return args.handler(args, params)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algid", allow_abbrev=False)
    parser.add_argument(
        "--version",
        choices=OFFICIAL_VERSIONS,
        default=None,
        help=f"group version (default {DEFAULT_VERSION}; env ALGID_VERSION overrides the default)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hash", help="digest of content bytes")
    p.add_argument("--kind", choices=("value", "function"), required=True)
    p.add_argument("path", nargs="?", default="-", help="input file, or - for stdin")
    p.set_defaults(handler=_cmd_hash)

    p = sub.add_parser("op", help="digest of the left-to-right product")
    p.add_argument("digests", nargs="+")
    p.set_defaults(handler=_cmd_op)

    p = sub.add_parser("inv", help="digest of the inverse")
    p.add_argument("digest")
    p.set_defaults(handler=_cmd_inv)

    p = sub.add_parser("pow", help="digest of a non-negative power")
    p.add_argument("digest")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_pow)

    p = sub.add_parser("classify", help="element class and rank")
    p.add_argument("digest")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("commutes", help="whether two elements commute (exit 0/1)")
    p.add_argument("digest_a")
    p.add_argument("digest_b")
    p.set_defaults(handler=_cmd_commutes)

    p = sub.add_parser("import", help="canonical digest of a legacy identifier")
    p.add_argument("--base", type=int, choices=(16, 62), required=True)
    p.add_argument("--mode", choices=("ordered", "commuting"), required=True)
    p.add_argument("text")
    p.set_defaults(handler=_cmd_import)

    p = sub.add_parser("reserved", help="reserved element digests")
    p.add_argument("kind", choices=("rho", "theta", "delta"))
    p.add_argument("i", nargs="?", type=int, help="slot number (theta only)")
    p.add_argument("--index", type=int, help="removal position (delta only)")
    p.add_argument("--name", help="removal name (delta only)")
    p.set_defaults(handler=_cmd_reserved)

    p = sub.add_parser("key", help="digest of a map-key element")
    p.add_argument("key")
    p.set_defaults(handler=_cmd_key)

    p = sub.add_parser("analyze", help="robustness report")
    p.add_argument("--candidates", action="store_true", help="include the candidate-group table")
    p.add_argument("--beta", type=int, default=None, help="bit budget (default: the version's digest width)")
    p.add_argument("--length", type=int, action="append")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("plan", help="evaluate a pipeline plan file")
    p.add_argument("file")
    p.add_argument("--store", help="store directory for hit/miss probing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_plan)

    p = sub.add_parser("store", help="content-addressable store operations")
    p.add_argument("dir")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("put")
    a.add_argument("digest")
    a.add_argument("path", nargs="?", default="-")
    a.set_defaults(handler=_cmd_store_put)
    a = actions.add_parser("get")
    a.add_argument("digest")
    a.set_defaults(handler=_cmd_store_get)
    a = actions.add_parser("has")
    a.add_argument("digest")
    a.set_defaults(handler=_cmd_store_has)
    a = actions.add_parser("alias")
    a.add_argument("from_digest", metavar="from")
    a.add_argument("to_digest", metavar="to")
    a.set_defaults(handler=_cmd_store_alias)
    a = actions.add_parser("resolve")
    a.add_argument("digest")
    a.set_defaults(handler=_cmd_store_resolve)

    p = sub.add_parser("selftest", help="small-prime oracle suite")
    p.add_argument("--prime", type=int, default=5)
    p.add_argument("--budget-seconds", type=float, default=120.0)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def _resolve_version(parser: argparse.ArgumentParser, args: argparse.Namespace) -> GroupParams:
    name = args.version or os.environ.get("ALGID_VERSION") or DEFAULT_VERSION
    if name not in OFFICIAL_VERSIONS:
        parser.error(f"ALGID_VERSION={name!r} is not one of {', '.join(OFFICIAL_VERSIONS)}")
    return version(name)


def _digest_arg(text: str) -> str:
    """Strip the optional @ escape used for digests starting with '-'."""
    return text[1:] if text.startswith("@") else text


def _read_content(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise AlgidError(f"cannot read {path}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def _cmd_hash(args: argparse.Namespace, params: GroupParams) -> int:
    content = _read_content(args.path)
    gen = generate.value_element if args.kind == "value" else generate.function_element
    print(codec.encode(gen(content, params)))
    return 0


def _cmd_op(args: argparse.Namespace, params: GroupParams) -> int:
    elements = [codec.decode(_digest_arg(d), params) for d in args.digests]
    acc = elements[0]
    for e in elements[1:]:
        acc = acc * e
    print(codec.encode(acc))
    return 0


def _cmd_inv(args: argparse.Namespace, params: GroupParams) -> int:
    print(codec.encode(codec.decode(_digest_arg(args.digest), params).inverse()))
    return 0


def _cmd_pow(args: argparse.Namespace, params: GroupParams) -> int:
    if args.n < 0:
        print("error: exponent must be non-negative", file=sys.stderr)
        return 2
    print(codec.encode(codec.decode(_digest_arg(args.digest), params) ** args.n))
    return 0


def _cmd_classify(args: argparse.Namespace, params: GroupParams) -> int:
    element = codec.decode(_digest_arg(args.digest), params)
    print(f"{element.classify().value} {element.rank}")
    return 0


def _cmd_commutes(args: argparse.Namespace, params: GroupParams) -> int:
    a = codec.decode(_digest_arg(args.digest_a), params)
    b = codec.decode(_digest_arg(args.digest_b), params)
    ok = a.commutes_with(b)
    print("true" if ok else "false")
    return 0 if ok else 1


def _cmd_import(args: argparse.Namespace, params: GroupParams) -> int:
    print(codec.encode(codec.import_legacy(args.text, args.base, args.mode, params)))
    return 0


def _cmd_reserved(args: argparse.Namespace, params: GroupParams) -> int:
    if args.kind == "rho":
        if args.i is not None or args.index is not None or args.name is not None:
            print("error: rho takes no arguments", file=sys.stderr)
            return 2
        element = codec.reserved_root(params)
    elif args.kind == "theta":
        if args.i is None or args.index is not None or args.name is not None:
            print("error: theta needs a slot number", file=sys.stderr)
            return 2
        element = codec.reserved_slot(params, args.i)
    else:
        if args.i is not None or (args.index is None) == (args.name is None):
            print("error: delta needs exactly one of --index or --name", file=sys.stderr)
            return 2
        element = codec.removal_element(params, index=args.index, name=args.name)
    print(codec.encode(element))
    return 0


def _cmd_key(args: argparse.Namespace, params: GroupParams) -> int:
    print(codec.encode(codec.key_element(args.key, params)))
    return 0


def _cmd_analyze(args: argparse.Namespace, params: GroupParams) -> int:
    lengths = args.length or [10**7]
    report = analysis.robustness_report(params, beta=args.beta, lengths=lengths)
    rows: list[tuple[str, str]] = [
        ("version", report.version),
        ("p", str(report.p)),
        ("group-order", str(report.group_order)),
        ("commuting-probability", f"{report.commuting_probability:.6e}"),
        (f"gap-xi{report.beta}", f"{report.gap:.6e}"),
        ("min-order", str(report.min_order)),
    ]
    for l, pm, n in zip(report.lengths, report.ambiguity, report.expected):
        rows.append((f"ambiguity-P_m(l={l})", f"{pm:.6e}"))
        rows.append((f"expected-expressions(l={l})", f"{n:.6e}"))
    if args.format == "tsv":
        for key, val in rows:
            print(f"{key}\t{val}")
    else:
        width = max(len(k) for k, _ in rows)
        for key, val in rows:
            print(f"{key:<{width}}  {val}")
    if args.candidates:
        _print_candidates(args)
    return 0


def _print_candidates(args: argparse.Namespace) -> None:
    specs = analysis.candidate_table(args.beta if args.beta is not None else 192)
    if args.format == "tsv":
        print("family\torder\tbeta\tgap\tcommuting-probability\tmin-order")
        for s in specs:
            pc = s.commuting_probability()
            print(
                f"{s.label}\t{s.order}\t{s.beta}\t{s.gap():.6e}\t"
                f"{'n/a' if pc is None else f'{pc:.6e}'}\t{s.min_order}"
            )
        return
    print()
    print(f"{'family':<22} {'order':>12} {'gap':>20} {'P_c':>12} {'min-order':>20}")
    for s in specs:
        pc = s.commuting_probability()
        gap_label = f"{s.gap():.4e} (xi{s.beta})"
        print(
            f"{s.label:<22} {float(s.order):>12.4e} {gap_label:>20} "
            f"{'n/a' if pc is None else f'{pc:.4e}':>12} {s.min_order:>20}"
        )


def _cmd_plan(args: argparse.Namespace, params: GroupParams) -> int:
    plan = load_plan(args.file)
    store = FileStore(args.store, plan.params) if args.store else None
    report = evaluate_plan(plan, store)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0


def _cmd_store_put(args: argparse.Namespace, params: GroupParams) -> int:
    FileStore(args.dir, params).put(_digest_arg(args.digest), _read_content(args.path))
    return 0


def _cmd_store_get(args: argparse.Namespace, params: GroupParams) -> int:
    sys.stdout.buffer.write(FileStore(args.dir, params).get(_digest_arg(args.digest)))
    return 0


def _cmd_store_has(args: argparse.Namespace, params: GroupParams) -> int:
    ok = FileStore(args.dir, params).has(_digest_arg(args.digest))
    print("true" if ok else "false")
    return 0 if ok else 1


def _cmd_store_alias(args: argparse.Namespace, params: GroupParams) -> int:
    FileStore(args.dir, params).alias_put(_digest_arg(args.from_digest), _digest_arg(args.to_digest))
    return 0


def _cmd_store_resolve(args: argparse.Namespace, params: GroupParams) -> int:
    print(FileStore(args.dir, params).resolve(_digest_arg(args.digest)))
    return 0


def _cmd_selftest(args: argparse.Namespace, params: GroupParams) -> int:
    return 0 if run_selftest(args.prime, args.budget_seconds, out=sys.stdout) else 1


if __name__ == "__main__":
    raise SystemExit(main())
