"""Command-line interface: compute, verify, oracle, catalog.

Exit codes: 0 success, 1 I/O or parse error, 2 validation failure (the
check report is printed), 3 method disagreement in verify.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .betti import betti_low
from .catalog import emit, entries
from .ce import betti_ce
from .koszul import betti_koszul
from .liealg import validate
from .linalg import rat_str
from .pairs import HomogeneousPair, validate_pair

_METHODS = ("formula", "koszul", "ce")


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def _json_default(obj):
    if isinstance(obj, Fraction):
        return rat_str(obj)
    return str(obj)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default)


def _load_pair(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _CliError(1, "cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise _CliError(1, "cannot parse %s: %s" % (path, exc))
    try:
        return HomogeneousPair.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliError(1, "not a valid pair document (%s): %s" % (path, exc))


def _ensure_valid(pair):
    for report in (validate(pair.algebra), validate_pair(pair)):
        if not report.ok:
            raise _CliError(2, report.describe())
        for warning in report.warnings:
            print("warning: %s" % warning, file=sys.stderr)


def _print_report(report, explain):
    print("betti   %s" % report.betti)
    print("method  %s" % report.method)
    if report.intermediates:
        print("        " + "  ".join("%s=%s" % item
                                     for item in sorted(report.intermediates.items())))
    for flag in report.corollary_flags:
        line = "check   %-8s %s" % (flag["status"], flag["name"])
        if flag.get("detail"):
            line += "  (%s)" % flag["detail"]
        print(line)
    if explain and report.diagnostics:
        for key in sorted(report.diagnostics):
            print("%-8s %s" % (key, report.diagnostics[key]))


def cmd_compute(args):
    pair = _load_pair(args.file)
    _ensure_valid(pair)
    report = betti_low(pair, validate=False)
    if args.json:
        print(_dump(report.to_dict(explain=args.explain)))
    else:
        _print_report(report, args.explain)
    return 0


def _run_ce(pair, args, max_degree, certify):
    return betti_ce(pair, max_degree=max_degree, certify=certify,
                    seed=args.seed, size_cap=args.size_cap, validate=False)


def cmd_oracle(args):
    pair = _load_pair(args.file)
    _ensure_valid(pair)
    if args.method == "koszul":
        report = betti_koszul(pair, validate=False)
    else:
        try:
            report = _run_ce(pair, args, args.max_degree, args.certify)
        except ValueError as exc:
            raise _CliError(2, str(exc))
    if args.json:
        print(_dump(report.to_dict(explain=args.explain)))
    else:
        _print_report(report, args.explain)
    return 0


def _padded(report, top):
    b = report.betti
    return [b[k] if k < len(b) else 0 for k in range(top + 1)]


def cmd_verify(args):
    pair = _load_pair(args.file)
    _ensure_valid(pair)
    methods = ([m.strip() for m in args.methods.split(",")]
               if args.methods else list(_METHODS))
    bad = [m for m in methods if m not in _METHODS]
    if bad:
        raise _CliError(1, "unknown method(s): %s" % ", ".join(bad))
    if args.skip_ce:
        methods = [m for m in methods if m != "ce"]
    if not methods:
        raise _CliError(1, "no methods left to run")

    reports, elapsed, notes = {}, {}, []
    for method in methods:
        start = time.perf_counter()
        if method == "formula":
            report = betti_low(pair, validate=False)
        elif method == "koszul":
            report = betti_koszul(pair, validate=False)
        else:
            try:
                report = _run_ce(pair, args, 4, args.certify)
            except ValueError as exc:
                notes.append("ce skipped: %s" % exc)
                continue
        elapsed[method] = time.perf_counter() - start
        reports[method] = report

    def agreement_map():
        return {k: len({_padded(r, 4)[k] for r in reports.values()}) == 1
                for k in range(5)}

    agreement = agreement_map()
    if not all(agreement.values()) and "ce" in reports \
            and not reports["ce"].diagnostics.get("certified", True):
        start = time.perf_counter()
        reports["ce"] = _run_ce(pair, args, 4, True)
        elapsed["ce"] += time.perf_counter() - start
        notes.append("ce re-run with exact ranks after a disagreement")
        agreement = agreement_map()
    status = "pass" if all(agreement.values()) else "fail"

    if args.json:
        out = {"status": status,
               "agreement": {str(k): v for k, v in agreement.items()},
               "notes": notes,
               "methods": {m: {"betti": _padded(r, 4),
                               "elapsed": round(elapsed[m], 6)}
                           for m, r in reports.items()}}
        if args.explain:
            for m, r in reports.items():
                out["methods"][m]["report"] = r.to_dict(explain=True)
        print(_dump(out))
    else:
        for m in methods:
            if m not in reports:
                continue
            print("%-8s %s   %.3fs" % (m, _padded(reports[m], 4), elapsed[m]))
        for note in notes:
            print("note: %s" % note)
        bad_degrees = [str(k) for k, v in sorted(agreement.items()) if not v]
        if bad_degrees:
            print("disagreement in degrees: %s" % ", ".join(bad_degrees))
        print("status: %s" % status)
        if args.explain:
            for m, r in reports.items():
                if r.diagnostics:
                    print("-- %s diagnostics" % m)
                    for key in sorted(r.diagnostics):
                        print("   %s: %s" % (key, r.diagnostics[key]))
    return 0 if status == "pass" else 3


def cmd_catalog(args):
    if args.action == "list":
        for entry in entries():
            print(entry.describe())
        return 0
    try:
        doc = emit(args.name)
    except ValueError as exc:
        raise _CliError(1, str(exc))
    text = _dump(doc)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise _CliError(1, "cannot write %s: %s" % (args.output, exc))
    else:
        print(text)
    return 0


def _add_common(parser, max_degree=False):
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output (sorted keys)")
    parser.add_argument("--explain", action="store_true",
                        help="include slice dimensions and ranks")
    parser.add_argument("--certify", action="store_true",
                        help="exact rational ranks everywhere (no modular fast path)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the modular-rank prime (default 0)")
    parser.add_argument("--size-cap", type=int, default=None,
                        help="override the quotient-dimension cap for the cochain method")
    if max_degree:
        parser.add_argument("--max-degree", type=int, default=None,
                            help="highest cohomology degree to compute")


def _parser():
    parser = argparse.ArgumentParser(
        prog="liecoh",
        description="Betti numbers of compact homogeneous spaces from "
                    "rational Lie-theoretic input")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="closed-formula Betti numbers b0..b4")
    p.add_argument("file", help="pair JSON document")
    _add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify",
                       help="run all methods and compare degrees 0..4")
    p.add_argument("file", help="pair JSON document")
    p.add_argument("--skip-ce", action="store_true",
                   help="skip the cochain-complex method")
    p.add_argument("--methods", default=None,
                   help="comma-separated subset of formula,koszul,ce")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="run a single independent method")
    p.add_argument("file", help="pair JSON document")
    p.add_argument("--method", choices=("koszul", "ce"), required=True)
    _add_common(p, max_degree=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("catalog", help="list builders or emit a pair document")
    catsub = p.add_subparsers(dest="action", required=True)
    pl = catsub.add_parser("list", help="show available names")
    pl.set_defaults(func=cmd_catalog)
    pe = catsub.add_parser("emit", help="write the pair JSON for a name")
    pe.add_argument("name", help='e.g. "sphere:4", "stiefel:5:2", "torus:3+su:2"')
    pe.add_argument("-o", "--output", default=None, help="write to a file")
    pe.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(exc.message, file=sys.stdout if exc.code == 2 else sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
