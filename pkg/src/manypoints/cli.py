"""Command-line interface: ``manypoints <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage, 3 parse error,
4 certificate failure.
"""

import argparse
import dataclasses
import logging
import sys
import time

from . import curve as cv
from .fixtures import BY_NAME, FIXTURES
from .invariants import ConstantFieldExtension, InfiniteIndex, invariants_from_data
from .notation import (AmbiguousPlace, ParseError, UnknownPlace, format_place,
                       parse_curve, parse_divisor, parse_place_set)
from .rayclass import CertificateNotReached, NoSuitableFunction, build_ray_class_group
from .records import MissingEntry, RecordTable
from .search import SearchConfig, run_search

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PARSE, EXIT_CERTIFICATE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _curve(args):
    if args.q is None or args.curve is None:
        raise UsageError("--q and --curve are required")
    return parse_curve(args.q, args.curve)


def run_fixture(fx):
    """(genus, N, d) computed from a fixture's printed data."""
    C = parse_curve(fx.q, fx.curve)
    D = parse_divisor(C, fx.divisor)
    S = parse_place_set(C, fx.split)
    _, ext, inv = invariants_from_data(C, D, S)
    return inv.genus, inv.n_rational, inv.d


def cmd_verify(args, out):
    if args.list:
        for fx in FIXTURES:
            print(f"{fx.name}: F_{fx.q} (g, N) = ({fx.genus}, {fx.n_rational})", file=out)
        return EXIT_OK
    if args.fixture == "all":
        chosen = FIXTURES
    elif args.fixture in BY_NAME:
        chosen = [BY_NAME[args.fixture]]
    else:
        raise UsageError(f"unknown fixture {args.fixture!r}; try --list")
    failed = 0
    for fx in chosen:
        t0 = time.perf_counter()
        g, n, d = run_fixture(fx)
        dt = time.perf_counter() - t0
        ok = (g, n) == (fx.genus, fx.n_rational)
        failed += not ok
        status = "PASS" if ok else "FAIL"
        print(f"{fx.name}: genus {g}, N {n} (d={d}) {status} [{dt:.2f}s]", file=out)
        if not ok:
            print(f"  expected (genus, N) = ({fx.genus}, {fx.n_rational}), got ({g}, {n})", file=out)
            if fx.note:
                print(f"  note: {fx.note}", file=out)
                if fx.reduced_divisor:
                    g2, n2, d2 = run_fixture(dataclasses.replace(fx, divisor=fx.reduced_divisor))
                    print(f"  with D = {fx.reduced_divisor}: genus {g2}, N {n2} (d={d2})", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_rcg(args, out):
    C = _curve(args)
    D = parse_divisor(C, args.divisor or "0")
    from . import notation
    rcg = build_ray_class_group(C, D)
    print(rcg.describe(), file=out)
    h, u, t = rcg.certificate
    print(f"certificate: h={h} |U_D|={u} torsion={t}", file=out)
    if args.dump:
        print(rcg.dump(notation), file=out)
    return EXIT_OK


def cmd_invariants(args, out):
    C = _curve(args)
    if args.split is None:
        raise UsageError("--split is required")
    D = parse_divisor(C, args.divisor or "0")
    S = parse_place_set(C, args.split)
    _, ext, inv = invariants_from_data(C, D, S)
    if args.json:
        print(inv.to_json(C, args.divisor, args.split), file=out)
    else:
        print(f"d={inv.d} genus={inv.genus} N={inv.n_rational}", file=out)
    return EXIT_OK


def cmd_places(args, out):
    C = _curve(args)
    for pl in cv.places_up_to(C, args.max_degree):
        print(f"{pl.degree} {format_place(C, pl)}", file=out)
    return EXIT_OK


def cmd_records(args, out):
    table = RecordTable.load(args.records_file)
    if args.action == "query":
        if len(args.values) != 2:
            raise UsageError("records query needs q and g")
        q, g = map(int, args.values)
        iv = table.query(q, g)
        print(str(iv), file=out)
        return EXIT_OK
    if args.action == "import":
        if len(args.values) != 1:
            raise UsageError("records import needs a file")
        loaded = RecordTable.load(args.values[0])
        loaded.check()
        print(f"{len(loaded.entries)} rows ok", file=out)
        return EXIT_OK
    print(table.to_csv(), end="", file=out)
    return EXIT_OK


def cmd_search(args, out):
    if args.q is None or not args.curve:
        raise UsageError("--q and at least one --curve are required")
    records = RecordTable.load(args.records_file)
    cfg = SearchConfig(
        q=args.q, curves=list(args.curve), max_genus=args.max_genus, ds_cap=args.ds_cap,
        max_conductor_degree=args.max_conductor_degree, max_place_degree=args.max_place_degree,
        support=args.support, s_values=tuple(args.s) if args.s else None,
        d_values=tuple(args.d) if args.d else None, workers=args.workers,
        checkpoint=args.checkpoint, out=args.out)
    findings, skipped = run_search(cfg, records)
    for f in findings:
        flag = " improved" if f.improved else ""
        flag += " meets-upper" if f.meets_upper else ""
        print(f"d={f.d} genus={f.genus} N={f.n_rational} D={f.D} S={f.S}{flag}", file=out)
    print(f"# {len(findings)} findings, {len(skipped)} skipped moduli; "
          f"max conductor degree {cfg.max_conductor_degree}, max genus {cfg.max_genus}", file=out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="manypoints", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def curve_args(sp, many=False):
        sp.add_argument("--q", type=int, choices=(2, 3, 4, 5))
        if many:
            sp.add_argument("--curve", action="append")
        else:
            sp.add_argument("--curve")

    v = sub.add_parser("verify", help="recompute the built-in record constructions")
    v.add_argument("fixture", nargs="?", default="all")
    v.add_argument("--list", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rcg", help="ray class group structure")
    curve_args(r)
    r.add_argument("--divisor")
    r.add_argument("--dump", action="store_true")
    r.set_defaults(func=cmd_rcg)

    i = sub.add_parser("invariants", help="genus and rational places of F_S^D")
    curve_args(i)
    i.add_argument("--divisor")
    i.add_argument("--split")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_invariants)

    s = sub.add_parser("search", help="bounded search over moduli and split sets")
    curve_args(s, many=True)
    s.add_argument("--max-conductor-degree", type=int)
    s.add_argument("--max-genus", type=int, default=50)
    s.add_argument("--max-place-degree", type=int, default=2)
    s.add_argument("--ds-cap", type=int)
    s.add_argument("--support", action="append", help="allowed place in supp(D); repeatable")
    s.add_argument("--s", type=int, action="append", help="split-set size; repeatable")
    s.add_argument("--d", type=int, action="append", help="extension degree; repeatable")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--checkpoint")
    s.add_argument("--records-file")
    s.add_argument("--out", help="JSON-lines findings file")
    s.set_defaults(func=cmd_search)

    pl = sub.add_parser("places", help="list places up to a degree")
    curve_args(pl)
    pl.add_argument("--max-degree", type=int, default=1)
    pl.set_defaults(func=cmd_places)

    rec = sub.add_parser("records", help="query or import record tables")
    rec.add_argument("action", choices=("query", "import", "export"))
    rec.add_argument("values", nargs="*")
    rec.add_argument("--records-file")
    rec.set_defaults(func=cmd_records)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, AmbiguousPlace, UnknownPlace, cv.CurveError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CertificateNotReached, NoSuitableFunction) as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except (InfiniteIndex, ConstantFieldExtension, MissingEntry, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
