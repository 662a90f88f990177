"""Command-line front end.

Subcommands: search (find double representations), analyze (emit a rank
certificate for one n), verify-paper (run the reference claim suite),
report (search + analyze each hit, table-style rows).

Exit codes: 0 ok, 1 verification failure, 2 I/O error, 3 no representation,
4 factoring budget exhausted, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._version import VERSION
from .arith import DEFAULT_EFFORT, DEFAULT_SEED, EffortExceeded, FactorEffort
from .biquadrate import NotEqual, PropertyViolation
from .cache import Cache, cached_factor, cached_search, open_cache
from .certificate import (
    CSV_HEADER,
    CertificateInvalid,
    NoRepresentation,
    analyze,
    csv_row,
    render_table,
    to_json_line,
)
from .parity import OutOfDomain
from .reference import load_reference, run_claims

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_IO = 2
EXIT_NO_REPRESENTATION = 3
EXIT_BUDGET = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--format", choices=["table", "json-lines", "csv"], default="table")
    sub.add_argument("--cache", metavar="PATH", default=None,
                     help="append-only result cache (default: $BIQUADRANK_CACHE)")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--factor-effort", type=int, default=DEFAULT_EFFORT.rho_iterations,
                     metavar="N", help="rho iteration budget per factorization")


def build_parser() -> _Parser:
    parser = _Parser(prog="biquadrank", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_search = subs.add_parser("search", parents=[], help="find n = p^4+q^4 = r^4+s^4")
    p_search.add_argument("--max-base", type=int, required=True)
    p_search.add_argument("--shards", type=int, default=1)
    p_search.add_argument("--output", metavar="PATH", default=None)
    _add_common(p_search)

    p_an = subs.add_parser("analyze", help="rank certificate for one n")
    group = p_an.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--pqrs", type=int, nargs=4, metavar=("P", "Q", "R", "S"))
    group.add_argument("--ab", type=int, nargs=2, metavar=("A", "B"))
    p_an.add_argument("--precision", type=float, default=1e-8)
    p_an.add_argument("--tol", type=float, default=1e-3)
    p_an.add_argument("--max-base", type=int, default=None,
                      help="cap the representation scan for --n")
    p_an.add_argument("--allow-single", action="store_true",
                      help="analyze n with a single representation instead of exiting 3")
    p_an.add_argument("--skip-heights", action="store_true")
    p_an.add_argument("--output", metavar="PATH", default=None)
    _add_common(p_an)

    p_ver = subs.add_parser("verify-paper", help="run the reference claim suite")
    p_ver.add_argument("--fixtures", metavar="PATH", default=None)
    p_ver.add_argument("--precision", type=float, default=1e-8)
    _add_common(p_ver)

    p_rep = subs.add_parser("report", help="search and summarize one row per hit")
    src = p_rep.add_mutually_exclusive_group(required=True)
    src.add_argument("--max-base", type=int)
    src.add_argument("--input", metavar="PATH", help="json-lines search output to re-analyze")
    p_rep.add_argument("--shards", type=int, default=1)
    p_rep.add_argument("--precision", type=float, default=1e-8)
    p_rep.add_argument("--tol", type=float, default=1e-3)
    p_rep.add_argument("--skip-heights", action="store_true")
    p_rep.add_argument("--output", metavar="PATH", default=None)
    _add_common(p_rep)

    return parser


def _effort(args) -> FactorEffort:
    return FactorEffort(rho_iterations=args.factor_effort, seed=args.seed)


def _emit(text: str, path: str | None) -> int:
    try:
        if path is None:
            sys.stdout.write(text)
            if text and not text.endswith("\n"):
                sys.stdout.write("\n")
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
                if text and not text.endswith("\n"):
                    fh.write("\n")
    except OSError as exc:
        print(f"biquadrank: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _quad_line(q) -> str:
    return json.dumps(
        {
            "record": "quadruple",
            "p": str(q.p),
            "q": str(q.q),
            "r": str(q.r),
            "s": str(q.s),
            "n": str(q.n),
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def cmd_search(args) -> int:
    if args.max_base < 2:
        print("biquadrank search: error: --max-base must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    cache = open_cache(args.cache)
    quads = cached_search(args.max_base, args.shards, cache)
    if args.format == "json-lines":
        text = "\n".join(_quad_line(q) for q in quads)
    elif args.format == "csv":
        rows = ["p,q,r,s,n"] + [f"{q.p},{q.q},{q.r},{q.s},{q.n}" for q in quads]
        text = "\n".join(rows)
    else:
        if quads:
            text = "\n".join(
                f"{q.p}^4 + {q.q}^4 = {q.r}^4 + {q.s}^4 = {q.n}" for q in quads
            )
        else:
            text = f"no double representations with base <= {args.max_base}"
    return _emit(text, args.output)


def _run_analysis(args, *, n=None, pqrs=None, ab=None, cache=None):
    effort = _effort(args)
    f2n = None
    if cache is not None:
        if n is not None:
            value = n
        elif ab is not None:
            from .biquadrate import euler_quadruple

            value = euler_quadruple(*ab).n
        else:
            value = pqrs[0] ** 4 + pqrs[1] ** 4
        if value % 4 != 0:
            f2n = cached_factor(2 * value, effort, cache)
    return analyze(
        n=n,
        pqrs=pqrs,
        ab=ab,
        precision=args.precision,
        tol=args.tol,
        effort=effort,
        seed=args.seed,
        max_base=getattr(args, "max_base", None),
        allow_single=getattr(args, "allow_single", False),
        skip_heights=args.skip_heights,
        factor_of_2n=f2n,
    )


def cmd_analyze(args) -> int:
    cache = open_cache(args.cache)
    try:
        cert = _run_analysis(
            args,
            n=args.n,
            pqrs=tuple(args.pqrs) if args.pqrs else None,
            ab=tuple(args.ab) if args.ab else None,
            cache=cache,
        )
    except NoRepresentation as exc:
        print(f"biquadrank analyze: {exc}", file=sys.stderr)
        return EXIT_NO_REPRESENTATION
    except NotEqual as exc:
        print(f"biquadrank analyze: not a double representation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutOfDomain as exc:
        print(f"biquadrank analyze: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EffortExceeded as exc:
        partial = {
            "record": "partial-certificate",
            "reason": "factoring budget exhausted",
            "value": str(exc.value),
            "known_factors": [[str(p), e] for p, e in exc.partial],
            "residual": str(exc.residual),
        }
        print(json.dumps(partial, sort_keys=True, separators=(",", ":")))
        print(f"biquadrank analyze: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PropertyViolation, CertificateInvalid) as exc:
        print(f"biquadrank analyze: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY

    if args.format == "json-lines":
        text = to_json_line(cert)
    elif args.format == "csv":
        text = CSV_HEADER + "\n" + csv_row(cert)
    else:
        text = render_table(cert)
    return _emit(text, args.output)


def cmd_verify_paper(args) -> int:
    try:
        ref = load_reference(args.fixtures)
    except OSError as exc:
        print(f"biquadrank verify-paper: cannot read fixtures: {exc}", file=sys.stderr)
        return EXIT_IO
    claims = run_claims(ref, precision=args.precision)
    failures = [c for c in claims if not c.passed]
    if args.format == "json-lines":
        for c in claims:
            print(json.dumps(
                {"record": "claim", "name": c.name, "passed": c.passed, "detail": c.detail},
                sort_keys=True, separators=(",", ":"),
            ))
    else:
        for c in claims:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        print(f"{len(claims) - len(failures)}/{len(claims)} claims pass")
    if failures:
        for c in failures:
            print(f"biquadrank verify-paper: FAILED {c.name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_report(args) -> int:
    cache = open_cache(args.cache)
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                records = [json.loads(line) for line in fh if line.strip()]
        except (OSError, json.JSONDecodeError) as exc:
            print(f"biquadrank report: cannot read input: {exc}", file=sys.stderr)
            return EXIT_IO
        inputs = [
            tuple(int(rec[k]) for k in ("p", "q", "r", "s"))
            for rec in records
            if rec.get("record") == "quadruple"
        ]
    else:
        if args.max_base < 2:
            print("biquadrank report: error: --max-base must be at least 2", file=sys.stderr)
            return EXIT_USAGE
        quads = cached_search(args.max_base, args.shards, cache)
        inputs = [(q.p, q.q, q.r, q.s) for q in quads]

    certs = []
    for pqrs in inputs:
        try:
            certs.append(_run_analysis(args, pqrs=pqrs, cache=cache))
        except EffortExceeded as exc:
            print(f"biquadrank report: budget exhausted at {pqrs}: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        except (PropertyViolation, CertificateInvalid) as exc:
            print(f"biquadrank report: verification failure at {pqrs}: {exc}", file=sys.stderr)
            return EXIT_VERIFY

    if args.format == "json-lines":
        text = "\n".join(to_json_line(c) for c in certs)
    elif args.format == "table":
        widths = None
        rows = [("p", "q", "n", "uncond", "cond", "omega")] + [
            tuple(csv_row(c).split(",")) for c in certs
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(6)]
        text = "\n".join(
            "  ".join(val.rjust(widths[i]) for i, val in enumerate(row)) for row in rows
        )
    else:
        text = "\n".join([CSV_HEADER] + [csv_row(c) for c in certs])
    return _emit(text, args.output)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "search": cmd_search,
        "analyze": cmd_analyze,
        "verify-paper": cmd_verify_paper,
        "report": cmd_report,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
