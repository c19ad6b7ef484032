"""Command-line interface.

Exit codes: 0 success / all checks passed, 1 a mathematical check failed,
2 bad input, 3 a configured search bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import charts as ch
from .ext import (LocallyFiniteFamily, NotLocallyFinite, ext_table,
                  ext_via_truncation, verify_duality)
from .graded import GradedRing, load_ring, make_ring
from .presentations import (load_presentation, presentation_from_dict)
from .random_modules import random_finite_module
from .resolutions import (BoundExceeded, ext_profinite,
                          minimal_free_resolution, verify_exactness)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


class InputError(Exception):
    pass


def parse_ring(spec: str) -> GradedRing:
    """'bp:p,n' shorthand or a path to a ring JSON file."""
    if spec.startswith("bp:"):
        try:
            p, n = (int(x) for x in spec[3:].split(","))
        except ValueError:
            raise InputError("bad ring shorthand %r (want bp:p,n)" % spec)
        from .graded import bp_ring
        return bp_ring(p, n)
    try:
        return load_ring(spec)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError("cannot load ring %r: %s" % (spec, exc))


def load_module(path: str):
    try:
        return load_presentation(path)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError("cannot load module %r: %s" % (path, exc))


def emit(doc: dict, out: str) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_ext(args) -> int:
    M = load_module(args.module)
    table = ext_table(M, args.s_max, t_max=args.t_max, t_min=args.t_min,
                      with_actions=args.actions)
    emit(table.to_dict(), args.output)
    return EXIT_OK


def cmd_resolve(args) -> int:
    M = load_module(args.module)
    res = minimal_free_resolution(M, args.s_max, args.t_max)
    doc = {
        "schema_version": 1,
        "ring": {"p": M.ring.p, "degrees": list(M.ring.degrees)},
        "minimal": res.minimal,
        "stages": [{"s": s, "rank": res.complex.module(s).rank,
                    "degrees": sorted(res.complex.module(s).gen_degrees)}
                   for s in range(res.complex.length + 1)],
    }
    status = EXIT_OK
    if args.check is not None:
        lo, hi = args.check
        rep = verify_exactness(res, (lo, hi))
        doc["exactness"] = {"pass": rep.ok, "failures": list(rep.failures)}
        if not rep.ok:
            status = EXIT_FAIL
    emit(doc, args.output)
    return status


def cmd_verify(args) -> int:
    M = load_module(args.module)
    try:
        rep = verify_duality(M, s_max=args.s_max, t_max=args.t_max)
    except NotLocallyFinite as exc:
        raise InputError(str(exc))
    emit(rep.to_dict(), args.output)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_profinite(args) -> int:
    ring = parse_ring(args.ring)
    rep = ext_profinite(ring, args.k_max)
    doc = {
        "schema_version": 1,
        "ring": {"p": ring.p, "degrees": list(ring.degrees)},
        "stages": [{"k": k + 1, "exponents": list(e)}
                   for k, e in enumerate(rep.stages)],
        "transitions": list(rep.transitions),
        "pass": rep.ok,
        "details": list(rep.details),
    }
    emit(doc, args.output)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_truncate(args) -> int:
    try:
        with open(args.family) as fh:
            doc = json.load(fh)
        summands = tuple((s["offset"], presentation_from_dict(s["module"]))
                         for s in doc["summands"])
    except (OSError, ValueError, KeyError) as exc:
        raise InputError("cannot load family %r: %s" % (args.family, exc))
    fam = LocallyFiniteFamily(summands)
    table = ext_via_truncation(fam, args.k, args.s_max)
    emit(table.to_dict(), args.output)
    return EXIT_OK


def cmd_suite(args) -> int:
    rings = [parse_ring(s) for s in args.rings]
    failures = []
    for ring in rings:
        for i in range(args.count):
            seed = args.seed + i
            M = random_finite_module(ring, seed)
            rep = verify_duality(M)
            if not rep.ok:
                failures.append({"ring": {"p": ring.p,
                                          "degrees": list(ring.degrees)},
                                 "seed": seed,
                                 "failures": list(rep.failures)})
    doc = {
        "schema_version": 1,
        "count_per_ring": args.count,
        "rings": [{"p": r.p, "degrees": list(r.degrees)} for r in rings],
        "base_seed": args.seed,
        "pass": not failures,
        "failures": failures,
    }
    emit(doc, args.output)
    return EXIT_OK if not failures else EXIT_FAIL


def _load_chart_arg(spec: str):
    if spec.startswith("bundled:"):
        try:
            return ch.bundled_chart(spec[len("bundled:"):])
        except (FileNotFoundError, ValueError, KeyError) as exc:
            raise InputError("cannot load bundled chart %r: %s" % (spec, exc))
    try:
        return ch.load_chart(spec)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError("cannot load chart %r: %s" % (spec, exc))


def cmd_chart_dual(args) -> int:
    chart = _load_chart_arg(args.chart)
    emit(ch.chart_to_dict(ch.dualize_chart(chart, args.shift)), args.output)
    return EXIT_OK


def cmd_chart_render(args) -> int:
    chart = _load_chart_arg(args.chart)
    if args.format == "ascii":
        text = ch.render_chart_ascii(chart)
    else:
        text = ch.render_chart_svg(chart)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_chart_compare(args) -> int:
    a = _load_chart_arg(args.a)
    b = _load_chart_arg(args.b)
    cmp = ch.compare_charts(a, b)
    doc = {"schema_version": 1}
    doc.update(cmp.to_dict())
    emit(doc, args.output)
    return EXIT_OK if cmp.equal else EXIT_FAIL


def cmd_chart_verify(args) -> int:
    chart = _load_chart_arg(args.chart)
    M = ch.chart_to_module(chart)
    rep = verify_duality(M)
    emit(rep.to_dict(), args.output)
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gradedext",
        description="Exact Ext and duality computations over p-local "
                    "graded polynomial rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("-o", "--output", default="-",
                       help="output path, or - for stdout")

    p = sub.add_parser("ext", help="compute an Ext table for a module")
    p.add_argument("--module", required=True, help="presentation JSON file")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--t-min", type=int, default=None)
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--actions", action="store_true",
                   help="include variable-action matrices")
    add_out(p)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("resolve", help="compute a minimal free resolution")
    p.add_argument("--module", required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--check", type=int, nargs=2, metavar=("LO", "HI"),
                   help="verify exactness on this degree window")
    add_out(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("verify", help="verify the duality theorem for a module")
    p.add_argument("--module", required=True)
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--t-max", type=int, default=None)
    add_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profinite",
                       help="Ext tower of Z/p^k with transition maps")
    p.add_argument("--ring", required=True, help="bp:p,n or ring JSON file")
    p.add_argument("--k-max", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_profinite)

    p = sub.add_parser("truncate",
                       help="Ext of a locally finite family via truncation")
    p.add_argument("--family", required=True, help="family JSON file")
    p.add_argument("--k", type=int, required=True,
                   help="truncation degree; results valid for t <= k")
    p.add_argument("--s-max", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("suite", help="randomized duality verification sweep")
    p.add_argument("--rings", nargs="+", default=["bp:2,1"],
                   help="ring specs (bp:p,n or JSON paths)")
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    add_out(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("chart", help="chart operations")
    csub = p.add_subparsers(dest="chart_command", required=True)

    c = csub.add_parser("dual", help="Pontryagin-dual chart")
    c.add_argument("--chart", required=True,
                   help="chart JSON path or bundled:NAME")
    c.add_argument("--shift", type=int, required=True)
    add_out(c)
    c.set_defaults(func=cmd_chart_dual)

    c = csub.add_parser("render", help="render a chart")
    c.add_argument("--chart", required=True)
    c.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    add_out(c)
    c.set_defaults(func=cmd_chart_render)

    c = csub.add_parser("compare", help="compare two charts")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    add_out(c)
    c.set_defaults(func=cmd_chart_compare)

    c = csub.add_parser("verify",
                        help="verify duality for the module a chart presents")
    c.add_argument("--chart", required=True)
    add_out(c)
    c.set_defaults(func=cmd_chart_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except BoundExceeded as exc:
        print("bound exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
