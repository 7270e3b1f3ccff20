"""Command-line front end.

Exit codes: 0 success (bound satisfied or inapplicable), 1 usage or input
error, 2 a checked claim failed (a bound violation would contradict the
theorem, so it is reported loudly).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import report as rpt
from .degree_relations import poly_deg_over
from .errors import FFError
from .example_gen import norm_example, one_missing_example
from .finite_field import parse_field, subfield_degree, subfield_orders
from .multipoly import degree_to_json, deg_l, max_degree, parse_poly, total_degree
from .poly_map import DEFAULT_CAP, PolyMap, image, parse_map
from .selftest import run_selftest
from .value_set_analysis import (
    best_subfield_bound,
    elementary_symmetric_series,
    exhaustive_bound_sweep,
    verify_bound,
    wan_original_bound,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(require_field=True):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", required=require_field, help='field spec, "p^m" or "p^m/c0,...,cm"')
    p.add_argument("--subfield", type=int, default=None, help="cardinality q of the subfield l")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max points to enumerate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--plot", metavar="DIR", default=None, help="write figures and CSV into DIR")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffvalueset", description="Value sets of polynomial maps over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("degree", parents=[common], help="deg, reduced deg and deg over a subfield")
    p.add_argument("polys", nargs="+")

    p = sub.add_parser("verify", parents=[common], help="check the missed-value bound for a map k^n -> k^n")
    p.add_argument("components", nargs="+")

    p = sub.add_parser("sweep", parents=[common], help="run the bound check over many maps")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--mode", choices=["all-functions", "random-polys"], default="all-functions")
    p.add_argument("--budget", type=int, default=100_000)

    p = sub.add_parser("example", parents=[_common(require_field=False)], help="build an extremal example")
    p.add_argument("kind", choices=["norm", "one-missing"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("series", parents=[common], help="coefficients of prod (1 - f(a) T)")
    p.add_argument("poly")

    p = sub.add_parser("selftest", parents=[_common(require_field=False)], help="run the exhaustive checks")
    p.add_argument("--only", action="append", default=None, help="run only the named check")
    return parser


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _plot_dir(args):
    return rpt.ensure_dir(args.plot) if args.plot else None


def _fmt_bound(r):
    return "-" if r.bound is None else str(r.bound)


def _report_lines(reports):
    lines = [f"{'q':>4} {'h':>2} {'deg_l':>6} {'bound':>8} {'missed':>7}  applicable  satisfied"]
    for r in reports:
        lines.append(f"{r.q:>4} {r.h:>2} {str(r.deg_used):>6} {_fmt_bound(r):>8} {r.missed_count:>7}  "
                     f"{str(r.applicable):<10}  {r.satisfied}")
    return lines


def cmd_degree(args):
    spec = parse_field(args.field)
    q = args.subfield or spec.order
    subfield_degree(spec, q)
    polys = [parse_poly(t, spec) for t in args.polys]
    rows = []
    for text, f in zip(args.polys, polys):
        rows.append({"poly": text, "deg": total_degree(f), "deg_k_reduced": deg_l(f),
                     "deg_l": poly_deg_over(f, q)})
    top = {key: max_degree(r[key] for r in rows) for key in ("deg", "deg_k_reduced", "deg_l")}
    payload = {"field": spec.text, "subfield": q,
               **{k: degree_to_json(v) for k, v in top.items()},
               "polynomials": [{k: degree_to_json(v) if k != "poly" else v for k, v in r.items()} for r in rows]}
    lines = [f"field GF({spec.text}), subfield q={q}"]
    for r in rows:
        lines.append(f"{r['poly']}: deg = {r['deg']}, deg (reduced over k) = {r['deg_k_reduced']}, "
                     f"deg_l = {r['deg_l']}")
    if len(rows) > 1:
        lines.append(f"max: deg = {top['deg']}, deg_k_reduced = {top['deg_k_reduced']}, deg_l = {top['deg_l']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args):
    spec = parse_field(args.field)
    f = parse_map(args.components, spec)
    img = image(f, cap=args.cap, jobs=args.jobs)
    if args.subfield:
        reports = [verify_bound(f, args.subfield, img=img)]
        best = reports[0]
    else:
        best, reports = best_subfield_bound(f, img=img)
    violated = any(r.violation for r in reports)
    payload = {"map": [str(c) for c in f.components], "best_subfield": best.q,
               "reports": [r.to_json() for r in reports], "violation": violated}
    lines = [f"map f = {f} on GF({spec.text})^{f.nvars}", f"missed values: {img.missed_count}"]
    lines += _report_lines(reports)
    if best.bound is not None and best.q == spec.order and best.deg_used >= 1:
        lines.append(f"(older min-form bound for comparison: {wan_original_bound(f.nvars, spec.order, best.deg_used)})")
    lines.append(f"best bound from q={best.q}: {_fmt_bound(best)}")
    if violated:
        lines.append("VIOLATION: missed count below the proven lower bound")
    out = _plot_dir(args)
    if out:
        rpt.plot_bounds(reports, os.path.join(out, "verify_bounds.png"), title=str(f))
        rpt.plot_fibers(img, os.path.join(out, "verify_fibers.png"), title=str(f))
        rpt.write_csv(os.path.join(out, "verify.csv"), rpt.REPORT_HEADER,
                      [rpt.report_row(str(f), r) for r in reports])
    _emit(args, payload, lines)
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_sweep(args):
    spec = parse_field(args.field)
    out = _plot_dir(args)
    sw = exhaustive_bound_sweep(spec, args.n, args.mode, args.budget, seed=args.seed,
                                subfield=args.subfield, jobs=args.jobs, keep_rows=bool(out))
    payload = sw.to_json()
    lines = [sw.summary(), f"{sw.checked} subfield reports, {sw.applicable} applicable"]
    for k, v in sorted(sw.slack.items()):
        lines.append(f"  slack {k}: {v}")
    for v in sw.violations:
        lines.append(f"VIOLATION: {v}")
    if out:
        rpt.plot_slack(sw, os.path.join(out, "sweep_slack.png"))
        rpt.write_csv(os.path.join(out, "sweep.csv"), ["index"] + rpt.REPORT_HEADER,
                      [[i] + rpt.report_row(text, r) for i, text, r in sw.rows])
    _emit(args, payload, lines)
    return EXIT_VIOLATION if sw.violations else EXIT_OK


def cmd_example(args):
    if args.kind == "norm":
        art = norm_example(args.q, args.n, cap=args.cap, jobs=args.jobs)
    else:
        art = one_missing_example(args.q, args.n, cap=args.cap)
    payload = art.to_json()
    lines = [f"{art.kind} example over GF({art.map.spec.text}), n={args.n}"]
    lines += [f"  f{i} = {c}" for i, c in enumerate(art.map.components, start=1)]
    lines.append(f"claimed: missed = {art.claimed_missed}, degree = {art.claimed_degree}")
    v = art.verification
    if v is None:
        lines.append("verification skipped (domain above --cap)")
    else:
        lines.append(f"verified: missed = {v.missed_count}, bound = {_fmt_bound(v)}, satisfied = {v.satisfied}")
    out = _plot_dir(args)
    if out and art.image is not None:
        rpt.plot_fibers(art.image, os.path.join(out, f"example_{art.kind}_fibers.png"), title=str(art.map))
        rpt.write_csv(os.path.join(out, f"example_{art.kind}.csv"), rpt.REPORT_HEADER,
                      [rpt.report_row(str(art.map), v)])
    _emit(args, payload, lines)
    if v is not None and not art.meets_claims:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_series(args):
    spec = parse_field(args.field)
    f = PolyMap([parse_poly(args.poly, spec, 1)])
    qs = [args.subfield] if args.subfield else subfield_orders(spec)
    checks = [elementary_symmetric_series(f, q) for q in qs]
    payload = {"field": spec.text, "poly": args.poly, "checks": [c.to_json() for c in checks],
               "all_zero": all(c.all_zero for c in checks)}
    lines = []
    for c in checks:
        lines.append(f"q={c.q} h={c.h} deg_l={c.deg_l} truncation={c.truncation}")
        lines += [f"  a_{i} = {a}" for i, a in enumerate(c.coefficients, start=1)]
        lines.append(f"  all_zero = {str(c.all_zero).lower()}")
    _emit(args, payload, lines)
    return EXIT_OK if payload["all_zero"] else EXIT_VIOLATION


def cmd_selftest(args):
    results = run_selftest(args.only)
    passed = sum(r.passed for r in results)
    payload = {"checks": [r.to_json() for r in results], "passed": passed, "failed": len(results) - passed}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<26} {r.cases:>9} cases  {r.seconds:6.2f}s"
             for r in results]
    lines.append(f"{passed} passed, {len(results) - passed} failed")
    _emit(args, payload, lines)
    return EXIT_OK if passed == len(results) else EXIT_VIOLATION


COMMANDS = {
    "degree": cmd_degree,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "example": cmd_example,
    "series": cmd_series,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap < 1 or args.jobs < 1:
        print("ffvalueset: error: --cap and --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (FFError, ValueError) as err:
        print(f"ffvalueset: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
