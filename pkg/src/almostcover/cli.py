"""Command-line front end: exact solves, cover verification, proof-machinery
checks, a persistent maximal-trace cache, and table reproduction.

Exit codes: 0 success, 1 verification failure or infeasible, 2 limits
exceeded, 3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import constructions, geometry, ilp, lp, lym, poly
from .core import format_rational, harmonic, parse_rational
from .geometry import HyperplaneForm, Trace
from .ilp import Limits

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_LIMIT = 2
EXIT_BADINPUT = 3

CACHE_VERSION = "v1"


class InputError(Exception):
    pass


# --- trace cache ---------------------------------------------------------


def _cache_path(cache_dir, n):
    return os.path.join(cache_dir, "traces_%s_n%d.json" % (CACHE_VERSION, n))


def load_traces(n, cache_dir=None):
    """Maximal traces for Q^n, read from / written to the versioned cache."""
    if cache_dir:
        path = _cache_path(cache_dir, n)
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if data.get("n") != n:
                raise InputError("cache file %s is for the wrong n" % path)
            traces = []
            for t in data["traces"]:
                coeffs = tuple(parse_rational(s) for s in t["witness"])
                traces.append(Trace(n, int(t["bits"], 16), HyperplaneForm(n, coeffs)))
            ilp._TRACE_CACHE[n] = [t.bits for t in traces]
            return traces
    traces = geometry.enumerate_maximal_traces(n)
    ilp._TRACE_CACHE[n] = [t.bits for t in traces]
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        payload = {
            "n": n,
            "traces": [
                {"bits": t.to_hex(), "witness": t.witness.serialize()}
                for t in traces
            ],
        }
        with open(_cache_path(cache_dir, n), "w") as fh:
            json.dump(payload, fh)
    return traces


# --- output helpers ------------------------------------------------------


def _emit(args, payload, human_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _limits(args):
    return Limits(max_nodes=args.node_limit, time_limit=args.time_limit)


def _witness_json(witness, columns):
    return [
        {"bits": format(columns[j], "x"), "mult": int(m)}
        for j, m in sorted(witness.items())
    ]


def _load_cover_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return constructions.cover_from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError("bad cover file %s: %s" % (path, exc))


# --- subcommands ---------------------------------------------------------


def cmd_traces(args):
    traces = load_traces(args.n, args.cache_dir)
    payload = {
        "n": args.n,
        "count": len(traces),
        "traces": [
            {"bits": t.to_hex(), "witness": t.witness.serialize()} for t in traces
        ],
    }
    lines = ["n=%d maximal traces: %d" % (args.n, len(traces))]
    lines += ["%s  [%s]" % (t.to_hex(), " ".join(t.witness.serialize())) for t in traces]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_fstar(args):
    v = lp.f_star(args.n, args.k)
    _emit(
        args,
        {"n": args.n, "k": args.k, "fstar": format_rational(v)},
        [format_rational(v)],
    )
    return EXIT_OK


def cmd_lp(args):
    traces = load_traces(args.n, args.cache_dir)
    columns = [t.bits for t in traces]
    from .core import uniform_demands

    problem = lp.LpProblem(args.n, columns, uniform_demands(args.n, args.k))
    sol = lp.solve_cover_lp(problem)
    if sol.status != "optimal":
        _emit(args, {"status": sol.status}, ["status %s" % sol.status])
        return EXIT_FAIL
    payload = {
        "n": args.n,
        "k": args.k,
        "status": "optimal",
        "value": format_rational(sol.value),
        "primal": {
            format(columns[j], "x"): format_rational(w) for j, w in sol.primal.items()
        },
        "dual": {format(v, "x"): format_rational(y) for v, y in sol.dual.items()},
    }
    lines = [
        "value %s (certificates verified)" % format_rational(sol.value),
        "support %d columns, %d dual prices" % (len(sol.primal), len(sol.dual)),
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _solve_payload(problem_name, n, k, res, columns):
    return {
        "problem": problem_name,
        "n": n,
        "k": k,
        "optimum": res.optimum,
        "lp_bound": format_rational(res.root_bound) if res.root_bound is not None else None,
        "witness": _witness_json(res.witness, columns),
        "nodes": res.nodes,
        "status": res.status,
    }


def cmd_solve(args):
    load_traces(args.n, args.cache_dir)  # warm/refresh cache
    res = ilp.f_exact(args.n, args.k, _limits(args))
    columns = ilp.maximal_trace_columns(args.n)
    payload = _solve_payload("f", args.n, args.k, res, columns)
    lines = [
        "f(%d,%d) = %s [%s] lp_bound=%s nodes=%d"
        % (args.n, args.k, res.optimum, res.status, payload["lp_bound"], res.nodes)
    ]
    _emit(args, payload, lines)
    return EXIT_OK if res.status == "proved" else EXIT_LIMIT


def cmd_layered(args):
    load_traces(args.n, args.cache_dir)
    res = ilp.layered_min_m(args.n, args.k, _limits(args))
    columns = ilp.maximal_trace_columns(args.n)
    payload = _solve_payload("layered", args.n, args.k, res, columns)
    payload["lp_closed_form"] = format_rational(ilp.layered_lp_bound(args.k))
    lines = [
        "layered m(%d,%d) = %s [%s] nodes=%d"
        % (args.n, args.k, res.optimum, res.status, res.nodes)
    ]
    _emit(args, payload, lines)
    return EXIT_OK if res.status == "proved" else EXIT_LIMIT


def cmd_g(args):
    load_traces(args.n, args.cache_dir)
    res = ilp.g_exact(args.n, args.m, args.k, _limits(args))
    columns = ilp.maximal_trace_columns(args.n)
    payload = {
        "problem": "g",
        "n": args.n,
        "m": args.m,
        "k": args.k,
        "deficiency": res.deficiency,
        "witness": [format(columns[j], "x") for j in res.witness],
        "nodes": res.nodes,
        "status": res.status,
    }
    lines = [
        "g(%d,%d,%d) = %d [%s] nodes=%d"
        % (args.n, args.m, args.k, res.deficiency, res.status, res.nodes)
    ]
    _emit(args, payload, lines)
    return EXIT_OK if res.status == "proved" else EXIT_LIMIT


def cmd_construct(args):
    if args.name:
        cover = constructions.special_cover(args.name)
        k = constructions.catalog_k(args.name)
    elif args.kind == "basic":
        cover, k = constructions.basic_cover(args.n, args.k), args.k
    elif args.kind == "symmetric":
        cover, k = constructions.symmetric_cover(args.n, args.k), args.k
    elif args.kind == "best":
        cover, k = constructions.best_known(args.n, args.k), args.k
    else:
        raise InputError("need --name or --kind with --n/--k")
    report = constructions.verify_cover(cover, k)
    if not report.meets(k):
        return EXIT_FAIL
    data = constructions.cover_to_json(cover)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=2)
    payload = dict(data)
    payload["k"] = k
    payload["size"] = int(cover.size) if cover.size == int(cover.size) else format_rational(cover.size)
    lines = ["size %s, verified at k=%d" % (payload["size"], k)]
    if not args.out:
        lines.append(json.dumps(data))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args):
    cover = _load_cover_file(args.cover)
    report = constructions.verify_cover(cover, args.k)
    payload = {
        "n": cover.n,
        "k": args.k,
        "size": int(cover.size) if cover.size == int(cover.size) else format_rational(cover.size),
        "min_coverage": format_rational(Fraction(report.min_coverage)),
        "origin_coverage": format_rational(Fraction(report.origin_coverage)),
        "layer_minima": {
            str(t): format_rational(Fraction(c)) for t, c in sorted(report.layer_minima.items())
        },
        "ok": report.meets(args.k),
    }
    lines = [
        "min coverage %s (need %d): %s"
        % (payload["min_coverage"], args.k, "ok" if payload["ok"] else "FAIL")
    ]
    _emit(args, payload, lines)
    return EXIT_OK if payload["ok"] else EXIT_FAIL


def _parse_coeffs(items):
    try:
        return [parse_rational(s) for s in items]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad rational: %s" % exc)


def cmd_lym(args):
    a = _parse_coeffs(args.coeffs)
    fam = lym.subset_sum_family(a)
    s = lym.lym_sum(a)
    counts = {}
    if fam.n <= 8:
        counts = {
            format(v, "x"): lym.associated_permutation_count(a, v)
            for v in fam.members
        }
    payload = {
        "n": fam.n,
        "a": [format_rational(x) for x in fam.a],
        "members": [format(v, "x") for v in fam.members],
        "layer_counts": list(fam.layer_counts),
        "lym_sum": format_rational(s),
        "permutation_counts": counts,
    }
    lines = [
        "family size %d, lym sum %s" % (len(fam.members), format_rational(s)),
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cycle(args):
    e = _parse_coeffs(args.terms)
    try:
        s = lym.cycle_start(e)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(args, {"start": s}, [str(s)])
    return EXIT_OK


def cmd_poly_check(args):
    cover = _load_cover_file(args.cover)
    try:
        mults = poly.vertex_multiplicities(cover)
    except ValueError as exc:
        raise InputError(str(exc))
    ok = mults[0] == 0 and all(
        m >= args.k for v, m in mults.items() if v != 0
    )
    payload = {
        "n": cover.n,
        "k": args.k,
        "multiplicities": {
            format(v, "x"): (m if m != math.inf else "inf") for v, m in mults.items()
        },
        "ok": ok,
    }
    lines = ["multiplicity >= %d everywhere off origin: %s" % (args.k, "ok" if ok else "FAIL")]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _closed_form(n, k):
    if n == 1:
        return k
    if n == 2:
        return math.ceil(Fraction(3 * k, 2))
    if n == 3:
        return 3 if k == 1 else math.ceil(Fraction(11 * k, 6))
    if n == 4:
        return 4 if k == 1 else math.ceil(Fraction(25 * k, 12))
    return None


def cmd_reproduce(args):
    limits = _limits(args)
    rows = []
    mismatch = False
    any_limit = False
    for n in range(1, 5):
        for k in range(1, args.kmax + 1):
            load_traces(n, args.cache_dir)
            res = ilp.f_exact(n, k, limits)
            expect = _closed_form(n, k)
            if res.status == "proved":
                ok = res.optimum == expect
                if not ok:
                    mismatch = True
            else:
                any_limit = True
                ok = None
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "optimum": res.optimum,
                    "expected": expect,
                    "status": res.status,
                    "pass": ok,
                }
            )
    payload = {"kmax": args.kmax, "rows": rows}
    lines = ["  n  k  f(n,k)  expected  status         pass"]
    for r in rows:
        lines.append(
            "%3d %2d %7s %9s  %-13s %s"
            % (
                r["n"],
                r["k"],
                r["optimum"],
                r["expected"],
                r["status"],
                {True: "yes", False: "NO", None: "-"}[r["pass"]],
            )
        )
    _emit(args, payload, lines)
    if mismatch:
        return EXIT_FAIL
    if any_limit:
        return EXIT_LIMIT
    return EXIT_OK


# --- parser --------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="almostcover",
        description="Exact solvers and verifiers for almost k-covers of the n-cube",
    )
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--cache-dir", default=None, help="directory for trace caches")
    p.add_argument("--time-limit", type=float, default=300.0, help="seconds")
    p.add_argument("--node-limit", type=int, default=10**6)
    p.add_argument("--workers", type=int, default=1, help="accepted; runs serially")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sub = p.add_subparsers(dest="cmd", required=True)

    def nk(sp, need_k=True):
        sp.add_argument("--n", type=int, required=True)
        if need_k:
            sp.add_argument("--k", type=int, required=True)

    nk(sub.add_parser("traces", help="enumerate maximal traces"), need_k=False)
    nk(sub.add_parser("fstar", help="closed-form fractional optimum"))
    nk(sub.add_parser("lp", help="solve the fractional covering LP"))
    nk(sub.add_parser("solve", help="exact integral optimum f(n,k)"))
    nk(sub.add_parser("layered", help="layered demand minimum m(n,k)"))
    sp = sub.add_parser("g", help="exact deficiency g(n,m,k)")
    nk(sp)
    sp.add_argument("--m", type=int, required=True)
    sp = sub.add_parser("construct", help="emit a known cover as JSON")
    sp.add_argument("--name", default=None, help="catalog name (e.g. q4_k4)")
    sp.add_argument("--kind", default=None, choices=["basic", "symmetric", "best"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--out", default=None, help="write cover JSON here")
    sp = sub.add_parser("verify", help="check a cover file at level k")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("lym", help="subset-sum family and its bound")
    sp.add_argument("coeffs", nargs="+", help="rational coefficients")
    sp = sub.add_parser("cycle", help="cyclic prefix-sum start index")
    sp.add_argument("terms", nargs="+", help="rationals summing to zero")
    sp = sub.add_parser("poly-check", help="zero multiplicities of the cover product")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("reproduce", help="f(n,k) table vs closed forms")
    sp.add_argument("--kmax", type=int, default=6)
    return p


_DISPATCH = {
    "traces": cmd_traces,
    "fstar": cmd_fstar,
    "lp": cmd_lp,
    "solve": cmd_solve,
    "layered": cmd_layered,
    "g": cmd_g,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "lym": cmd_lym,
    "cycle": cmd_cycle,
    "poly-check": cmd_poly_check,
    "reproduce": cmd_reproduce,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.time_limit <= 0 or args.node_limit <= 0 or args.workers < 1:
        print("limits must be positive", file=sys.stderr)
        return EXIT_BADINPUT
    try:
        return _DISPATCH[args.cmd](args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BADINPUT
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BADINPUT


if __name__ == "__main__":
    sys.exit(main())
