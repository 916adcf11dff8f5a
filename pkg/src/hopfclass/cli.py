"""Command-line interface: ``hopfclass {enumerate,eliminate,classify,verify-paper}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 node
budget exhausted. ``HOPFCLASS_OUTPUT_DIR`` names a default directory for
reports when ``--output`` is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .arithmetic import SMALL_QS, DimensionProfile, is_prime
from .fusion.groups import abelian_classes
from .fusion.search import BUDGET_EXCEEDED, DEFAULT_BUDGET, eliminate
from .report import dumps, make_report, to_markdown
from .typeprofile import TypeParseError, parse_type, screen_types
from .verdict import HypothesisViolation, classify_4q2, classify_p2q2, findings

ENV_OUTPUT_DIR = "HOPFCLASS_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _pin(text: str) -> tuple[str, int]:
    key, sep, val = text.partition("=")
    if not sep or key not in ("a", "b", "c") or not val.isdigit():
        raise argparse.ArgumentTypeError(f"pin must look like a=0 (letters a, b, c): {text}")
    return key, int(val)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--output", help="report file (default: stdout or $%s)" % ENV_OUTPUT_DIR)
    common.add_argument("--no-timings", action="store_true", help="omit wall times for byte-stable output")

    ap = argparse.ArgumentParser(prog="hopfclass", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list algebra types and filter outcomes")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--g", type=_positive, required=True, help="|G(H*)|")
    e.add_argument("--pin", type=_pin, action="append", default=[], help="fix a count, e.g. a=0")

    x = sub.add_parser("eliminate", parents=[common], help="fusion-consistency search for one type")
    x.add_argument("--type", required=True, help='e.g. "(1,2;4,3;5,2)"')
    x.add_argument("--dim", type=_positive, required=True)
    x.add_argument("--group", default="all", help='abelian class label such as Z2xZ2, or "all"')
    x.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    x.add_argument("--focus", choices=("default", "all"), default="default",
                   help="products tracked by the search")

    c = sub.add_parser("classify", parents=[common], help="one verdict per order of G(H*)")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--gH", type=_positive, default=None, dest="g_h", help="|G(H)| if known")
    c.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    v = sub.add_parser("verify-paper", parents=[common], help="run the acceptance suite")
    v.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    return ap


# ------------------------------------------------------------ commands
def cmd_enumerate(args) -> tuple[dict, int]:
    prof = _profile(args.p, args.q)
    if prof.dim % args.g:
        raise UsageError(f"--g {args.g} does not divide {prof.dim}")
    pins = dict(args.pin)
    start = time.perf_counter()
    reports = screen_types(prof, args.g, pins or None)
    secs = time.perf_counter() - start
    labels = {"a": args.p, "b": args.p**2, "c": args.q}
    sols = []
    for r in reports:
        row = r.to_json()
        row.update({k: r.type.count(d) for k, d in labels.items()})
        sols.append(row)
    case = {"kind": "enumeration", "p": args.p, "q": args.q, "dim": prof.dim, "g_order": args.g,
            "pins": pins, "solutions": sols}
    if not args.no_timings:
        case["seconds"] = round(secs, 3)
    cfg = {"command": "enumerate", "p": args.p, "q": args.q, "g": args.g, "pins": pins}
    return make_report(cfg, [case], []), EXIT_OK


def cmd_eliminate(args) -> tuple[dict, int]:
    try:
        t = parse_type(args.type)
    except TypeParseError as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        raise UsageError(f"invalid type {args.type}: {exc}")
    if t.dim != args.dim:
        raise UsageError(f"type {t.notation} has dimension {t.dim}, not {args.dim}")
    classes = abelian_classes(t.g_order)
    if args.group != "all":
        classes = [g for g in classes if g.label == args.group]
        if not classes:
            labels = ", ".join(g.label for g in abelian_classes(t.g_order))
            raise UsageError(f"no abelian group {args.group} of order {t.g_order} (choose from {labels})")
    focus = None
    if args.focus == "all":
        ids = range(t.g_order, sum(n for _, n in t.entries))
        focus = tuple((a, b) for a in ids for b in ids)
    cases, code = [], EXIT_OK
    for group in classes:
        start = time.perf_counter()
        (res,) = eliminate(t, args.budget, [group], focus)
        case = {"kind": "elimination", **res.to_json()}
        if not args.no_timings:
            case["seconds"] = round(time.perf_counter() - start, 3)
        cases.append(case)
        if res.status == BUDGET_EXCEEDED:
            code = EXIT_BUDGET
    cfg = {"command": "eliminate", "type": t.notation, "dim": args.dim, "group": args.group,
           "budget": args.budget, "focus": args.focus}
    return make_report(cfg, cases, []), code


def cmd_classify(args) -> tuple[dict, int]:
    p, q = args.p, args.q
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise UsageError(f"p = {p} and q = {q} must be distinct primes")
    try:
        if p == 2 and (q in SMALL_QS or q > 16):
            verdicts = classify_4q2(q, args.g_h, args.budget)
        else:
            verdicts = classify_p2q2(p, q, args.g_h, args.budget)
    except HypothesisViolation as exc:
        raise UsageError(f"unsupported regime: {exc}")
    cases = [{"kind": "verdict", **v.to_json(not args.no_timings)} for v in verdicts]
    cfg = {"command": "classify", "p": p, "q": q, "gH": args.g_h, "budget": args.budget}
    return make_report(cfg, cases, findings(verdicts)), EXIT_OK


def cmd_verify_paper(args) -> tuple[dict, int]:
    from .acceptance import run_all

    results = run_all(args.budget)
    cases = [r.to_json(not args.no_timings) for r in results]
    found = [f for r in results for f in r.findings]
    ok = all(r.passed for r in results) and not found
    cfg = {"command": "verify-paper", "budget": args.budget}
    report = make_report(cfg, cases, found)
    report["lines"] = [r.line(not args.no_timings) for r in results]
    return report, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "enumerate": cmd_enumerate,
    "eliminate": cmd_eliminate,
    "classify": cmd_classify,
    "verify-paper": cmd_verify_paper,
}


def _profile(p: int, q: int) -> DimensionProfile:
    try:
        return DimensionProfile(p, q)
    except ValueError as exc:
        raise UsageError(str(exc))


def _destination(args) -> Path | None:
    if args.output:
        return Path(args.output)
    env = os.environ.get(ENV_OUTPUT_DIR)
    if env:
        ext = "json" if args.format == "json" else "md"
        return Path(env) / f"{args.command}.{ext}"
    return None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hopfclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = report.pop("lines", None)
    text = dumps(report) if args.format == "json" else to_markdown(report)
    dest = _destination(args)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        for line in lines or ():
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
