"""Batch driver: every verification suite as a subcommand with JSON reports.

Sweep outputs are JSON-lines (header object, one record per line, summary
object); point queries write a single JSON object.  Every artifact carries a
schema_version field.  Exit code 0 means the invoked suite had zero failed
assertions.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .fieldcore import make_field
from .linpoly import LinPoly
from .quadrinomial import (
    QuadParams,
    build_quadrinomial,
    nonscattered_witness,
    run_property_suite,
    trace_zero_power_set,
)
from .scattered import is_scattered_fiber
from .mrdcodes import RankCode, right_idealizer, left_idealizer, stabilizer, stabilizer_naive
from .equivalence import pair_report
from .projgeom import polynomial_vertex, intersection_number
from .sweep import SCHEMA_VERSION, classify_sweep, conjecture_scan

import numpy as np


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            qq = q
            while qq % p == 0:
                qq //= p
                e += 1
            if qq != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, e
    raise ValueError(f"q={q} is not a prime power")


def _ctx_from_args(args):
    p, e = _factor_prime_power(args.q)
    return make_field(p, e, args.t)


def _emit(obj, out_path):
    text = json.dumps(obj, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_lines(header, records, summary, out_path):
    lines = [json.dumps(header)] + [json.dumps(r) for r in records] + [json.dumps(summary)]
    if out_path:
        with open(out_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))


def cmd_classify(args) -> int:
    ctx = _ctx_from_args(args)
    svals = [args.s]
    if args.all_s:
        from math import gcd

        svals = [s for s in range(1, ctx.n) if gcd(s, ctx.n) == 1]
    if ctx.size > args.budget:
        print(f"refused: field size {ctx.size} above budget {args.budget}", file=sys.stderr)
        return 2
    bad = 0
    for s in svals:
        records, summary = classify_sweep(
            ctx, s, h_dedup=args.h_dedup, with_witness=not args.no_witness,
            workers=args.workers,
        )
        if args.deterministic:
            # wall-clock noise would break byte-identical reports
            print(f"s={s}: {summary.pop('elapsed_s')}s", file=sys.stderr)
        header = {
            "schema_version": SCHEMA_VERSION,
            "kind": "classify",
            "q": ctx.q,
            "t": ctx.t,
            "s": s,
            "deterministic": args.deterministic,
        }
        out = args.out
        if out and len(svals) > 1:
            out = f"{out}.s{s}"
        _emit_lines(header, records, summary, out)
        if args.csv:
            path = args.csv if len(svals) == 1 else f"{args.csv}.s{s}"
            with open(path, "w", newline="") as fh:
                wr = csv.writer(fh)
                wr.writerow(
                    ["m", "h", "norm_h", "case_tag", "prior_tag", "scattered",
                     "linear_set_size"]
                )
                for r in records:
                    wr.writerow([r["m"], r["h"], r["norm_h"], r["case_tag"],
                                 r["prior_tag"], r["scattered"], r["linear_set_size"]])
        bad += len(summary["violations_applies_not_scattered"])
    return 0 if bad == 0 else 1


def cmd_conjecture(args) -> int:
    ctx = _ctx_from_args(args)
    if ctx.size > args.budget:
        print(f"refused: field size {ctx.size} above budget {args.budget}", file=sys.stderr)
        return 2
    rep = conjecture_scan(ctx, args.s, h_dedup=not args.no_h_dedup)
    rep["kind"] = "conjecture"
    _emit(rep, args.out)
    return 0  # mismatches are data, not assertion failures


def cmd_props(args) -> int:
    ctx = _ctx_from_args(args)
    exhaustive = ctx.size <= 3 ** 6
    results = run_property_suite(ctx, args.s, exhaustive=exhaustive,
                                 samples=args.samples)
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "props",
        "q": ctx.q,
        "t": ctx.t,
        "s": args.s,
        "exhaustive": exhaustive,
        "results": [{"statement": n, "passed": ok, "detail": d} for n, ok, d in results],
    }
    for n, ok, _ in results:
        print(f"{'PASS' if ok else 'FAIL'}  {n}")
    if args.out:
        _emit(report, args.out)
    return 0 if all(ok for _, ok, _ in results) else 1


def cmd_stabilizer(args) -> int:
    ctx = _ctx_from_args(args)
    params = QuadParams(ctx, args.s, args.m, args.h)
    f = build_quadrinomial(params)
    st = stabilizer_naive(f) if args.naive else stabilizer(f)
    rep = st.to_report()
    rep.update({"schema_version": SCHEMA_VERSION, "kind": "stabilizer",
                "q": ctx.q, "t": ctx.t, "s": args.s, "m": args.m, "h": args.h})
    _emit(rep, args.out)
    return 0 if rep["is_field"] else 1


def cmd_idealizer(args) -> int:
    ctx = _ctx_from_args(args)
    params = QuadParams(ctx, args.s, args.m, args.h)
    code = RankCode(build_quadrinomial(params))
    rep = {"schema_version": SCHEMA_VERSION, "kind": "idealizer",
           "q": ctx.q, "t": ctx.t, "s": args.s, "m": args.m, "h": args.h}
    if args.side in ("right", "both"):
        pairs = right_idealizer(code, method=args.method)
        rep["right_order"] = len(pairs)
        rep["right_sample"] = [list(p) for p in pairs[:8]]
    if args.side in ("left", "both"):
        pairs = left_idealizer(code)
        rep["left_order"] = len(pairs)
        rep["left_sample"] = [list(p) for p in pairs[:8]]
    _emit(rep, args.out)
    return 0


def cmd_equiv(args) -> int:
    ctx = _ctx_from_args(args)
    p1 = QuadParams(ctx, args.s, args.m, args.h)
    p2 = QuadParams(ctx, args.s2, args.m2, args.h2)
    rep = pair_report(p1, p2, budget=args.budget,
                      require_large_t=not args.allow_small_t)
    rep.update({"schema_version": SCHEMA_VERSION, "kind": "equiv"})
    _emit(rep, args.out)
    return 0 if rep["agree"] else 1


def cmd_intn(args) -> int:
    ctx = _ctx_from_args(args)
    fam = {"psi": "quadrinomial"}.get(args.family, args.family)
    if fam == "quadrinomial":
        m, h = args.m, args.h
        if m is None or h is None:
            from .sweep import condition_pairs

            m, h = condition_pairs(ctx, args.s)[0]
        f = build_quadrinomial(QuadParams(ctx, args.s, m, h))
    elif fam == "pseudoregulus":
        f = LinPoly.monomial(ctx, args.s, 1)
    elif fam == "lp":
        delta = args.delta if args.delta is not None else _lp_delta(ctx)
        f = LinPoly.from_terms(ctx, args.s, {1: 1, ctx.n - 1: delta})
    else:
        raise ValueError(f"unknown family {args.family}")
    gamma = polynomial_vertex(ctx, args.s, f)
    val = intersection_number(gamma)
    rep = {"schema_version": SCHEMA_VERSION, "kind": "intn", "q": ctx.q, "t": ctx.t,
           "s": args.s, "family": fam, "vertex_dim": gamma.dim,
           "intersection_number": val}
    _emit(rep, args.out)
    return 0


def _lp_delta(ctx) -> int:
    for d in range(2, ctx.size):
        if ctx.norm_rel(d, 1) not in (0, 1):
            return d
    raise AssertionError("no admissible binomial coefficient found")


def cmd_witness(args) -> int:
    ctx = _ctx_from_args(args)
    params = QuadParams(ctx, args.s, args.m, args.h)
    minus = trace_zero_power_set(ctx, args.s, -1)
    rep = {"schema_version": SCHEMA_VERSION, "kind": "witness", "q": ctx.q,
           "t": ctx.t, "s": args.s, "m": args.m, "h": args.h,
           "m_in_minus_power_set": bool(np.isin(args.m, minus))}
    if not rep["m_in_minus_power_set"]:
        rep["witness"] = None
        _emit(rep, args.out)
        return 0
    w = nonscattered_witness(params)
    rep["witness"] = w
    rep["scattered"] = bool(is_scattered_fiber(build_quadrinomial(params)))
    _emit(rep, args.out)
    return 0 if (w is not None and not rep["scattered"]) else 1


def _add_field_args(sp, with_s=True):
    sp.add_argument("--q", type=int, required=True, help="base field order (prime power)")
    sp.add_argument("--t", type=int, required=True, help="tower parameter, n = 2t")
    if with_s:
        sp.add_argument("--s", type=int, default=1, help="Frobenius step, coprime to 2t")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scatlin",
        description="Scattered linearized polynomial verification suites",
    )
    ap.add_argument("--config", type=str, default=None,
                    help="JSON file with preset budget/workers/deterministic")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="full (m, h) sweep with oracle verdicts")
    _add_field_args(sp)
    sp.add_argument("--all-s", action="store_true", help="sweep every coprime step")
    sp.add_argument("--h-dedup", action="store_true",
                    help="one h per base-field-scalar orbit")
    sp.add_argument("--no-witness", action="store_true")
    sp.add_argument("--csv", type=str, default=None, help="also write a CSV projection")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("conjecture", help="scattered-vs-conditions scan, both orderings")
    _add_field_args(sp)
    sp.add_argument("--no-h-dedup", action="store_true")
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("props", help="structural property suite")
    _add_field_args(sp)
    sp.add_argument("--samples", type=int, default=200)
    sp.set_defaults(func=cmd_props)

    sp = sub.add_parser("stabilizer", help="graph-subspace stabilizer")
    _add_field_args(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--naive", action="store_true", help="double-sweep reference")
    sp.set_defaults(func=cmd_stabilizer)

    sp = sub.add_parser("idealizer", help="left/right idealizers of the span code")
    _add_field_args(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--side", choices=["right", "left", "both"], default="both")
    sp.add_argument("--method", choices=["residual", "grid"], default="residual")
    sp.set_defaults(func=cmd_idealizer)

    sp = sub.add_parser("equiv", help="pairwise equivalence test with conditions")
    _add_field_args(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--s2", type=int, required=True)
    sp.add_argument("--m2", type=int, required=True)
    sp.add_argument("--h2", type=int, required=True)
    sp.add_argument("--allow-small-t", action="store_true")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("intn", help="intersection number of a projection vertex")
    _add_field_args(sp)
    sp.add_argument("--family", choices=["pseudoregulus", "lp", "quadrinomial", "psi"],
                    required=True)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--h", type=int, default=None)
    sp.add_argument("--delta", type=int, default=None)
    sp.set_defaults(func=cmd_intn)

    sp = sub.add_parser("witness", help="constructive non-scatteredness witness")
    _add_field_args(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.set_defaults(func=cmd_witness)

    for sp_name, sp_obj in sub.choices.items():
        sp_obj.add_argument("--out", type=str, default=None)
        sp_obj.add_argument("--workers", type=int, default=None)
        sp_obj.add_argument("--deterministic", action="store_true", default=True)
        sp_obj.add_argument("--budget", type=int, default=None,
                            help="largest admissible field size for sweeps")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    presets = {}
    if args.config:
        with open(args.config) as fh:
            presets = json.load(fh)
    # flags override config presets, which override the built-in defaults
    if args.workers is None:
        args.workers = presets.get("workers", 1)
    if args.budget is None:
        args.budget = presets.get("budget", 5 ** 6)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
