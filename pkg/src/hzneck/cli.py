"""Command-line entry point: ``hzneck <command> ...``.

Exit status: 0 success, 1 identity violation, 2 invalid input, 3 inconclusive
stabilization.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import analytic, congruence, moduli, necklace, ramanujan, suites
from .errors import Inconclusive, IdentityViolation, InstanceTooLarge
from .series import RatPoly, fraction_to_str

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def read_config(path: Optional[str]) -> Dict[str, str]:
    """key=value lines; '#' starts a comment.  Keys are sweep keys like cohen_oracle.max_k."""
    if not path:
        return {}
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",))
    parser.optionxform = str
    with open(path) as fh:
        parser.read_string("[sweep]\n" + fh.read())
    return dict(parser["sweep"])


# ---------------------------------------------------------------------------
# output


def _poly_rows(p: RatPoly) -> List[dict]:
    return [{"exp": e, "coeff": fraction_to_str(c)} for e, c in enumerate(p.coeffs) if c]


def _emit(data, fmt: str, out, rows: Optional[List[dict]] = None, plain: Optional[str] = None) -> None:
    if fmt == "json":
        json.dump(data, out, indent=2, default=str)
        out.write("\n")
    elif fmt == "csv":
        rows = rows if rows is not None else [data] if isinstance(data, dict) else [{"value": data}]
        if rows:
            w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()})
    else:
        if plain is None:
            plain = "\n".join(f"{k}: {v}" for k, v in data.items()) if isinstance(data, dict) else str(data)
        out.write(plain + "\n")


def _poly_plain(p: RatPoly) -> str:
    terms = [f"{fraction_to_str(c)}*t^{e}" for e, c in enumerate(p.coeffs) if c]
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# commands


def cmd_ramanujan(a, out) -> int:
    v = ramanujan.cohen_c(a.n, a.k, a.r)
    _emit(v, a.output, out, rows=[{"n": a.n, "k": a.k, "r": a.r, "value": v}])
    return EXIT_OK


def cmd_necklace(a, out) -> int:
    p = necklace.necklace_poly_r(a.n, a.k, a.r)
    _emit(p.to_json(), a.output, out, rows=_poly_rows(p), plain=_poly_plain(p))
    return EXIT_OK


def cmd_beta(a, out) -> int:
    p = necklace.beta_poly(a.k, a.d)
    _emit(p.to_json(), a.output, out, rows=_poly_rows(p), plain=_poly_plain(p))
    return EXIT_OK


def cmd_cycle_index(a, out) -> int:
    z = necklace.cycle_index_regular_cyclic(a.k, a.chi)
    rows = []
    for vec, c in sorted(z.items()):
        cycles = {str(j + 1): cnt for j, cnt in enumerate(vec) if cnt}
        rows.append({"cycles": cycles, "coeff": fraction_to_str(c)})
    plain = " + ".join(
        f"{r['coeff']}*" + "*".join(f"t{j}^{cnt}" for j, cnt in r["cycles"].items()) for r in rows
    ) or "0"
    _emit({"k": a.k, "chi": a.chi, "monomials": rows}, a.output, out, rows=rows, plain=plain)
    return EXIT_OK


def cmd_count_linear(a, out) -> int:
    inst = congruence.LinearInstance(a.k, a.b, tuple(a.l))
    v = congruence.count_linear_bruteforce(inst) if a.brute else congruence.count_linear_closed(inst)
    _emit(v, a.output, out, rows=[{"k": a.k, "b": a.b, "l": a.l, "value": v}])
    return EXIT_OK


def cmd_count_cohen(a, out) -> int:
    inst = congruence.CongruenceInstance(a.n, a.k, a.r, a.m, tuple(a.a or ()))
    if a.brute:
        v = congruence.count_cohen_bruteforce(inst)
    else:
        # the closed form does not see the unit coefficients; the count does not depend on them
        v = congruence.count_cohen_closed(a.n, a.k, a.r, a.m)
    _emit(v, a.output, out, rows=[{"n": a.n, "k": a.k, "r": a.r, "m": a.m, "value": v}])
    return EXIT_OK


def _dirichlet_report(a) -> analytic.DirichletReport:
    p = Fraction(a.p)
    if a.which == "Q":
        return analytic.verify_dirichlet_Q(a.n, a.r, a.m, p, a.K, a.tol)
    if a.which == "M":
        return analytic.verify_dirichlet_M(a.n, a.r, Fraction(a.t), p, a.K, a.tol)
    return analytic.verify_prop5_series(a.n, a.r, p, a.l, a.K, a.tol)


def cmd_dirichlet(a, out) -> int:
    report = _dirichlet_report(a).as_json()
    _emit(report, a.output, out, rows=[report])
    return EXIT_OK


def cmd_verify(a, out) -> int:
    if a.target == "dirichlet":
        report = _dirichlet_report(a)
        d = report.as_json()
        _emit(d, a.output, out, rows=[d])
        return EXIT_OK if report.passed else EXIT_VIOLATION
    if a.target == "packing":
        bs = [a.b] if a.b is not None else list(range(a.k))
        rows = []
        for b in bs:
            for name, fn in (("beta", congruence.packing_identity_beta), ("M", congruence.packing_identity_M)):
                lhs, rhs = fn(a.k, b, a.s)
                row = {"identity": name, "k": a.k, "b": b, "s": a.s, "pass": lhs == rhs}
                if lhs != rhs:
                    row["lhs"], row["rhs"] = lhs.to_json(), rhs.to_json()
                rows.append(row)
        ok = all(r["pass"] for r in rows)
        _emit({"pass": ok, "cells": rows}, a.output, out, rows=rows,
              plain="\n".join(f"{r['identity']} k={r['k']} b={r['b']} s={r['s']}: "
                              f"{'PASS' if r['pass'] else 'FAIL'}" for r in rows))
        return EXIT_OK if ok else EXIT_VIOLATION
    overrides = read_config(a.config)
    results = suites.run_all(a.level, overrides, a.seed, a.suite)
    matrix = [r.as_json() for r in results]
    ok = all(r.passed for r in results)
    lines = []
    for m in matrix:
        lines.append(f"{m['suite']:<18} {'PASS' if m['pass'] else 'FAIL'}  {m['cells'] - m['failed']}/{m['cells']}")
        for ce in m["counterexamples"]:
            lines.append(f"    counterexample {json.dumps(ce['params'])}: {ce['detail']}")
    _emit({"level": a.level, "seed": a.seed, "pass": ok, "suites": matrix}, a.output, out,
          rows=matrix, plain="\n".join(lines))
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_euler_char(a, out) -> int:
    if a.closed:
        table = moduli.euler_series_closed(a.max_genus, a.cutoff, variant=a.variant)
    else:
        table = moduli.euler_series_punctured(a.max_genus, a.cutoff)
    data = table.as_json()
    status = EXIT_OK
    if a.compare:
        diff = moduli.compare_reference(table, moduli.load_reference(a.compare))
        data["compare"] = {str(g): [fraction_to_str(x), fraction_to_str(y)] for g, (x, y) in diff.items()}
        if diff:
            status = EXIT_VIOLATION
    if not all(table.checks.get(key, True) for key in ("parity_vanishing", "nonpositive_vanishing", "integral")):
        status = EXIT_VIOLATION
    if not table.stabilized:
        # unstable coefficients are not yet meaningful, so this outranks the checks above
        print(f"inconclusive: no {moduli.STABILIZATION_WINDOW} silent k before k={table.k_cutoff}",
              file=sys.stderr)
        status = EXIT_INCONCLUSIVE
    plain = "\n".join(f"g={r['g']}  {r['value']}" for r in data["table"])
    _emit(data, a.output, out, rows=data["table"], plain=plain)
    return status


# ---------------------------------------------------------------------------
# parser


def _add_dirichlet_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--which", choices=["Q", "M", "prop5"], required=True)
    p.add_argument("--n", type=_pos, required=True)
    p.add_argument("--r", type=_pos, default=1)
    p.add_argument("--p", type=str, required=True, help="real exponent, e.g. 3 or 5/2")
    p.add_argument("--m", type=_pos, default=1, help="moment for --which Q")
    p.add_argument("--t", type=str, default="1", help="evaluation point for --which M; write --t=-1/2 for negatives")
    p.add_argument("--l", type=_nonneg, default=1, help="derivative order for --which prop5")
    p.add_argument("--K", type=_pos, default=2000)
    p.add_argument("--tol", type=float, default=1e-4)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "csv", "plain"], default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="key=value file overriding sweep ranges")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hzneck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ramanujan", parents=[common], help="c_r(n, k)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--r", type=_pos, default=1)
    p.set_defaults(func=cmd_ramanujan)

    p = sub.add_parser("necklace", parents=[common], help="M_r(t; n, k)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--r", type=_pos, default=1)
    p.set_defaults(func=cmd_necklace)

    p = sub.add_parser("beta", parents=[common], help="beta_{k,d}(t)")
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--d", type=_pos, required=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("cycle-index", parents=[common], help="character cycle index of C_k on itself")
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--chi", type=_nonneg, required=True)
    p.set_defaults(func=cmd_cycle_index)

    p = sub.add_parser("count-linear", parents=[common], help="N_k(b; l_1..l_s)")
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--b", type=_nonneg, required=True)
    p.add_argument("--l", type=_int_list, required=True)
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_count_linear)

    p = sub.add_parser("count-cohen", parents=[common], help="Q_r(n, k, m)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--r", type=_pos, default=1)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--a", type=_int_list, help="unit coefficients (brute force only)")
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_count_cohen)

    p = sub.add_parser("verify", help="identity suites")
    vsub = p.add_subparsers(dest="target", required=True)
    v = vsub.add_parser("all", parents=[common])
    v.add_argument("--level", choices=["smoke", "full"], default="smoke")
    v.add_argument("--suite", action="append", choices=list(suites.SUITES),
                   help="restrict to these suites (repeatable)")
    v = vsub.add_parser("packing", parents=[common])
    v.add_argument("--k", type=_pos, required=True)
    v.add_argument("--s", type=_pos, required=True)
    v.add_argument("--b", type=_nonneg)
    v = vsub.add_parser("dirichlet", parents=[common])
    _add_dirichlet_args(v)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dirichlet", parents=[common], help="Dirichlet-series report without pass/fail exit")
    _add_dirichlet_args(p)
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("euler-char", parents=[common], help="Euler characteristics of mapping class groups")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--punctured", action="store_true")
    kind.add_argument("--closed", action="store_true")
    p.add_argument("--max-genus", type=_pos, required=True)
    p.add_argument("--cutoff", type=_pos, help="fixed k cutoff instead of the adaptive window")
    p.add_argument("--variant", choices=["corrected", "printed"], default="corrected",
                   help="closed-surface Phi placement of Y^2")
    p.add_argument("--compare", metavar="FILE", help="reference table (JSON or CSV with g,value)")
    p.set_defaults(func=cmd_euler_char)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except IdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, TypeError, InstanceTooLarge, OSError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run(argv: Optional[List[str]] = None) -> Tuple[int, str]:
    """(exit status, captured report text) for one invocation."""
    buf = io.StringIO()
    status = main(argv, buf)
    return status, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
