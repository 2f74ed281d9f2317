"""Command-line front end.

Exit codes: 0 when a verdict was reached (including negative verdicts such as
NOT_SURJECTIVE or INFEASIBLE), 2 for domain errors and failed replays, 3 for
unreadable or malformed input.
"""

import argparse
import sys

from . import reports
from .documents import SCHEMA, dumps, load_json
from .errors import MulticommError, ParseError
from .polytope.openness import DEFAULT_FACE_BUDGET

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 2, 3


def _bound(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("bounds must be at least 1")
    return value


def _count(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("count must be nonnegative")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="multicomm", description="Limits of finite diagrams and the map chi.")
    p.add_argument("--report", choices=("json", "text"), default="json", help="output format")
    p.add_argument("--verify", metavar="REPORT", help="re-verify the witnesses and certificates in a saved report")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("validate", help="check a diagram document")
    s.add_argument("diagram")

    s = sub.add_parser("limit", help="list the limit and its embedding into the maximal coordinates")
    s.add_argument("diagram")

    s = sub.add_parser("chi", help="surjectivity, openness and affinity of chi")
    s.add_argument("diagram")
    s.add_argument("--check", choices=("surjective", "open", "affine", "all"), default="all")
    s.add_argument("--face-budget", type=_bound, default=DEFAULT_FACE_BUDGET)
    s.add_argument("--samples", type=_count, default=100, help="sampled openness points (0 disables)")
    s.add_argument("--radius", type=float, default=1e-3)

    s = sub.add_parser("glue", help="find a joint measure with the given marginals")
    s.add_argument("diagram")
    s.add_argument("family")

    s = sub.add_parser("lift", help="lift a measure along a diagram morphism")
    for name in ("source", "target", "morphism", "tau0", "family"):
        s.add_argument(name)

    s = sub.add_parser("search", help="seeded random search over small diagrams")
    s.add_argument("--max-elements", type=_bound, default=4)
    s.add_argument("--max-points", type=_bound, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=_count, default=50)
    s.add_argument("--face-budget", type=_bound, default=DEFAULT_FACE_BUDGET)
    return p


def _run(args):
    cmd = args.command
    if cmd == "validate":
        return reports.validate_report(load_json(args.diagram))
    if cmd == "limit":
        return reports.limit_report(load_json(args.diagram))
    if cmd == "chi":
        checks = reports.CHECKS if args.check == "all" else (args.check,)
        return reports.chi_report(load_json(args.diagram), checks, args.face_budget, args.samples, args.radius)
    if cmd == "glue":
        return reports.glue_report(load_json(args.diagram), load_json(args.family))
    if cmd == "lift":
        docs = [load_json(getattr(args, n)) for n in ("source", "target", "morphism", "tau0", "family")]
        return reports.lift_report(*docs)
    if cmd == "search":
        return reports.search_report(args.max_elements, args.max_points, args.seed, args.count, args.face_budget)
    raise AssertionError(cmd)


# text rendering

def _text(report):
    cmd, r = report["command"], report["result"]
    lines = [f"{cmd}:"]
    if cmd == "validate":
        lines.append(f"  valid, {r['elements']} indices, {r['points']} points, class {r['class']}")
    elif cmd == "limit":
        lines.append(f"  {r['size']} elements")
        lines += [f"  {tuple(e)}" for e in r["elements"]]
    elif cmd == "chi":
        lines.append(f"  limit size {r['limit_size']}")
        c = r["checks"]
        if "surjective" in c:
            lines.append(f"  surjective: {c['surjective']['verdict']} ({len(c['surjective']['unreached'])} unreached vertices)")
        if "open" in c:
            extra = f", sampled modulus {c['open']['sampled']['modulus']}" if "sampled" in c["open"] else ""
            lines.append(f"  open: {c['open']['verdict']} onto {c['open']['onto']} ({c['open']['face_count']} faces{extra})")
        if "affine" in c:
            lines.append(f"  affine: {c['affine']['verdict']}")
    elif cmd == "glue":
        lines.append(f"  method {r['method']} (class {r['class']})")
        if r["measure"] is not None:
            lines += [f"  {tuple(p)}: {w}" for p, w in r["measure"]["weights"]]
    elif cmd == "lift":
        lines.append("  witness found" if r["feasible"] else "  no lift exists (Farkas certificate)")
    elif cmd == "search":
        lines += [f"  {s['class']:<16} {s['verdict']:<30} {s['count']}" for s in r["summary"]]
        m = r["minimal_not_surjective"]
        if m is not None:
            lines.append(f"  smallest non-surjective instance: #{m['index']} ({m['scope']})")
    return "\n".join(lines) + "\n"


def _error_doc(exc, kind):
    return {"schema": SCHEMA, "error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}


def _emit(doc, fmt, out):
    if fmt == "json":
        out.write(dumps(doc))
    elif "error" in doc:
        out.write(f"error ({doc['error']['type']}): {doc['error']['message']}\n")
    elif "checks" in doc and "command" not in doc:
        for c in doc["checks"]:
            out.write(f"{'ok  ' if c['ok'] else 'FAIL'} {c['name']}\n")
    else:
        out.write(_text(doc))


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verify:
            checks = reports.verify_report(load_json(args.verify))
            ok = all(c["ok"] for c in checks)
            _emit({"schema": SCHEMA, "verified": ok, "checks": checks}, args.report, out)
            return EXIT_OK if ok else EXIT_DOMAIN
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_PARSE
        _emit(_run(args), args.report, out)
        return EXIT_OK
    except ParseError as exc:
        _emit(_error_doc(exc, "parse"), args.report, out)
        return EXIT_PARSE
    except MulticommError as exc:
        _emit(_error_doc(exc, "domain"), args.report, out)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
