"""Command-line interface.

    m24prod solve 11A --minimize
    m24prod verify 3B [--bounds A B]
    m24prod tables {Ng,Zg,cusps,projections,solutions} [--format json|csv|text]
    m24prod numverify [--tol 1e-8] [--terms 128]

Exit codes: 0 success, 1 verification failure, 2 infeasible, 3 bad input.
Rationals are written as strings "p/q".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import lcm

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_BAD_INPUT = 0, 1, 2, 3
TABLES = ("Ng", "Zg", "cusps", "projections", "solutions")


class BadInput(Exception):
    pass


def _s(x) -> str:
    return str(Fraction(x))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(_dump(rows) + "\n")
        return
    if not rows:
        return
    cols = sorted(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([" ".join(v) if isinstance(v, list) and all(isinstance(x, str) for x in v)
                        else json.dumps(v) if isinstance(v, (list, dict)) else v for v in
                        (r[c] for c in cols)])
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write("  ".join(f"{c}={r[c]}" for c in cols) + "\n")


def _labels(args_labels):
    from .moonshine import CLASS_LABELS
    return list(args_labels) if args_labels else list(CLASS_LABELS)


def cmd_solve(args, out) -> int:
    from .solver import Infeasible, solve
    try:
        sol = solve(args.cls, minimize=args.minimize, target_level=args.level,
                    max_base_level=args.max_base_level, pole_order=args.order)
    except Infeasible as e:
        out.write(_dump({"class": args.cls, "infeasible": True, "reason": str(e)}) + "\n")
        return EXIT_INFEASIBLE
    out.write(_dump(sol.to_json()) + "\n")
    return EXIT_OK


def verify_report(label: str, bounds=None) -> tuple[dict, bool]:
    from . import expander
    from .borcherds import minimal_power
    from .solver import published_rows, verify_solution
    rows = published_rows(label)
    p = minimal_power(rows)
    rep = verify_solution(label, rows, p)
    A, B = bounds if bounds else expander.default_bounds(label, rows)
    integral = True
    try:
        lhs = expander.expand_phi_power(label, p, A, B)
        rhs = expander.expand_borcherds_side(rows, p, A, B)
    except expander.NonIntegralExponent:
        integral = False
        lhs = expander.expand_phi_power(label, p, A, B, allow_rational=True)
        rhs = expander.expand_borcherds_side(rows, p, A, B, allow_rational=True)
    cmp = expander.compare(lhs, rhs)
    mismatch = None
    if cmp.mismatch is not None:
        m = cmp.mismatch
        mismatch = {"n": _s(m.n), "r": _s(m.r), "m": _s(m.m), "lhs": _s(m.lhs), "rhs": _s(m.rhs)}
    report = {
        "class": label,
        "p": p,
        "weight": _s(rep.weight),
        "exponents": [_s(e) for e in rep.exponents],
        "checks_failed": rep.failures,
        "expansion": {"bounds": [A, B], "zeta_floor": lhs.r_floor, "equal": cmp.equal,
                      "coefficients": cmp.n_coefficients, "mismatch": mismatch,
                      "integral_exponents": integral},
    }
    return report, rep.ok and cmp.equal


def cmd_verify(args, out) -> int:
    report, ok = verify_report(args.cls, args.bounds)
    out.write(_dump(report) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def table_rows(which: str) -> list[dict]:
    from .modforms import SUPPORTED_LEVELS, cusp_set, dimension, projection_matrix
    from .moonshine import CLASS_LABELS, class_data, moebius_component
    from .exactseries import divisors
    from .solver import solve
    rows = []
    if which == "Ng":
        for g in CLASS_LABELS:
            sol = solve(g, minimize=True)
            rows.append({"class": g, "N_g": class_data(g).N_g, "k_g": _s(sol.weight),
                         "product_level": lcm(*(r.level for r in sol.rows)), "p_g": sol.p})
    elif which == "Zg":
        for g in CLASS_LABELS:
            for d in divisors(class_data(g).order):
                m0, m2 = moebius_component(g, d)
                rows.append({"class": g, "d": d, "tc0": _s(m0), "level": m2.N,
                             "tc2": [_s(x) for x in m2.coords]})
    elif which == "cusps":
        for N in SUPPORTED_LEVELS:
            if N == 1:
                continue
            for c in cusp_set(N):
                rows.append({"N": N, "cusp": c.label, "h": c.width, "N_c": c.N_c})
    elif which == "projections":
        for N in SUPPORTED_LEVELS:
            if not dimension(2, N):
                continue
            for c in cusp_set(N):
                if c.is_infinity:
                    continue
                M = projection_matrix(2, N, c)
                rows.append({"k": 2, "N": N, "cusp": c.label,
                             "matrix": [[_s(x) for x in r] for r in M]})
    elif which == "solutions":
        for g in CLASS_LABELS:
            sol = solve(g, minimize=True)
            for r in sol.rows:
                rows.append({"class": g, "N": r.N, "n": r.n, "tc0": _s(r.phi.c0),
                             "tc2": [_s(x) for x in r.phi.tc2.coords]})
    else:
        raise BadInput(f"unknown table {which!r}; choose from {', '.join(TABLES)}")
    return rows


def cmd_tables(args, out) -> int:
    _emit_rows(table_rows(args.which), args.format, out)
    return EXIT_OK


def cmd_numverify(args, out) -> int:
    from .numverify import run_all
    if args.tol <= 0:
        raise BadInput("tolerance must be positive")
    res = run_all(args.terms)
    rows = [{"k": r.k, "N": r.N, "check": r.what, "residual": f"{r.value:.3e}",
             "ok": r.ok(args.tol)} for r in res]
    _emit_rows(rows, args.format, out)
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="m24prod", description="Borcherds-product factorizations of twisted product expansions.")
    ap.add_argument("--data", help="embedded data file to use instead of the shipped one")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve the linear system for a class")
    s.add_argument("cls")
    s.add_argument("--level", type=int, help="target level N' (default: the class level)")
    s.add_argument("--max-base-level", type=int, help="largest base level N of a block")
    s.add_argument("--minimize", action="store_true", help="zero out as many blocks as possible")
    s.add_argument("--order", type=int, default=0, help="pole order (only 0 is implemented)")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check the reference factorization of a class")
    v.add_argument("cls")
    v.add_argument("--bounds", type=int, nargs=2, metavar=("A", "B"))
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="regenerate a reference table")
    t.add_argument("which", choices=TABLES)
    t.add_argument("--format", choices=("json", "csv", "text"), default="json")
    t.set_defaults(func=cmd_tables)

    n = sub.add_parser("numverify", help="floating-point checks of bases and projections")
    n.add_argument("--tol", type=float, default=1e-8)
    n.add_argument("--terms", type=int, default=128)
    n.add_argument("--format", choices=("json", "csv", "text"), default="json")
    n.set_defaults(func=cmd_numverify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    if args.data:
        from . import dataio
        os.environ[dataio.DATA_ENV] = args.data
    try:
        return args.func(args, out)
    except (BadInput, KeyError, ValueError, NotImplementedError, FileNotFoundError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
