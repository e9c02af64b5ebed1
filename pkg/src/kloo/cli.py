"""Command line interface: ``kloo <command> --a 1,2 --d 1,1 ...``.

Exit codes: 0 success, 1 internal invariant violated, 2 invalid input,
3 I/O failure, 4 point budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import kernels
from .graded import ReductionError, reduce_monomial
from .lattice import KloostermanFamily, basis_cardinality_formula, e_star, enumerate_basis
from .lfunc import BudgetExceeded, check_budget, consistency_check_extra_sum, l_polynomial
from .ordinarity import (
    DegenerateFamily,
    face_invariants,
    is_nondegenerate,
    ordinary_sufficient_estar,
    ordinary_sufficient_faces,
)
from .polygon import EQUAL, INF, VIOLATION, compare, hodge_polygon, newton_polygon

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4


class InvariantViolation(RuntimeError):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frac_json(x: Fraction):
    return [x.numerator, x.denominator]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _family(args) -> KloostermanFamily:
    return KloostermanFamily(args.a, args.d)


def _slope_text(poly) -> str:
    return ", ".join(str(s) for s in poly.slopes())


def _family_json(fam):
    return {"a": list(fam.a), "d": list(fam.d), "n": fam.n}


# ------------------------------------------------------------- commands

def cmd_basis(args, out):
    fam = _family(args)
    basis = enumerate_basis(fam)
    formula = basis_cardinality_formula(fam)
    if args.json:
        out.write(_dump({
            "family": _family_json(fam),
            "points": [{"point": list(v), "weight": _frac_json(w)} for v, w in basis],
            "count": len(basis),
            "count_formula": formula,
        }) + "\n")
        return EXIT_OK
    out.write(f"basis of {fam}: {len(basis)} points\n")
    for v, w in basis:
        out.write(f"  {v}  weight {w}\n")
    out.write(f"count {len(basis)} = prod(a) + sum d_j prod_(i!=j) a_i = {formula}\n")
    return EXIT_OK


def _svg(poly) -> str:
    xs = [float(x) for x, _ in poly.vertices]
    ys = [float(y) for _, y in poly.vertices]
    w, h, pad = 400.0, 300.0, 30.0
    sx = (w - 2 * pad) / max(xs[-1], 1.0)
    sy = (h - 2 * pad) / max(max(ys), 1.0)
    pts = " ".join(f"{pad + x * sx:.2f},{h - pad - y * sy:.2f}" for x, y in zip(xs, ys))
    dots = "".join(f'<circle cx="{pad + x * sx:.2f}" cy="{h - pad - y * sy:.2f}" r="3"/>'
                   for x, y in zip(xs, ys))
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}">'
            f'<polyline points="{pts}" fill="none" stroke="black"/>{dots}</svg>\n')


def cmd_hodge(args, out):
    fam = _family(args)
    hp = hodge_polygon(enumerate_basis(fam))
    if args.svg:
        try:
            with open(args.svg, "w") as fh:
                fh.write(_svg(hp))
        except OSError as exc:
            print(f"cannot write {args.svg}: {exc}", file=sys.stderr)
            return EXIT_IO
    if args.json:
        out.write(_dump({"family": _family_json(fam), "hodge": hp.to_json()}) + "\n")
        return EXIT_OK
    out.write(f"Hodge polygon of {fam}\n")
    out.write(f"  vertices: {hp}\n")
    out.write(f"  slopes: {_slope_text(hp)}\n")
    for s, m in hp.slope_multiset():
        out.write(f"    {s}  multiplicity {m}\n")
    return EXIT_OK


def _criteria(fam, p):
    e = e_star(fam)
    return {
        "e_star": e,
        "p_mod_e_star": p % e,
        "e_star_condition": ordinary_sufficient_estar(fam, p),
        "face_condition": ordinary_sufficient_faces(fam, p),
        "face_largest_invariants": [inv.largest for inv in face_invariants(fam)],
    }


def _ordinary_verdict(crit) -> str:
    if crit["e_star_condition"]:
        return "guaranteed-ordinary(e*)"
    if crit["face_condition"]:
        return "guaranteed-ordinary(faces)"
    return "unknown"


def _require_ok(fam, p):
    if not is_nondegenerate(fam, p):
        raise DegenerateFamily(f"p={p} divides a product of exponents of {fam}: degenerate")


def cmd_ordinary(args, out):
    fam = _family(args)
    _require_ok(fam, args.p)
    crit = _criteria(fam, args.p)
    verdict = _ordinary_verdict(crit)
    if args.json:
        out.write(_dump({"family": _family_json(fam), "p": args.p, "criteria": crit,
                         "verdict": verdict}) + "\n")
        return EXIT_OK
    out.write(f"{fam}, p={args.p}\n")
    out.write("  nondegenerate: yes\n")
    out.write(f"  e* = {crit['e_star']}, p mod e* = {crit['p_mod_e_star']}\n")
    for j, s in enumerate(crit["face_largest_invariants"]):
        out.write(f"  face {j}: s_n = {s}\n")
    out.write(f"verdict: {verdict}\n")
    return EXIT_OK


def _lambdas(args):
    if args.all_lambda:
        return list(range(1, args.p))
    lam = 1 if args.lam is None else args.lam
    if lam % args.p == 0:
        raise ValueError("lambda must be nonzero mod p")
    return [lam % args.p]


def _newton_runs(fam, args, with_check):
    """NP (and optionally the extra-sum check) for each requested lambda."""
    kw = {"workers": args.workers, "backend": args.backend}
    D = basis_cardinality_formula(fam)
    check_budget(fam, args.p, D)
    runs = []
    for lam in _lambdas(args):
        L = l_polynomial(fam, args.p, lam, **kw)
        vals = L.valuations()
        if vals[-1][1] is INF:
            raise InvariantViolation(f"leading coefficient vanished for lambda={lam}")
        run = {"lambda": lam, "polygon": newton_polygon(vals), "check": None}
        if with_check:
            try:
                run["check"] = consistency_check_extra_sum(fam, args.p, lam, L=L, **kw)
            except BudgetExceeded:
                pass
        runs.append(run)
    return runs


def cmd_newton(args, out):
    fam = _family(args)
    _require_ok(fam, args.p)
    t0 = time.perf_counter()
    runs = _newton_runs(fam, args, with_check=False)
    if args.json:
        out.write(_dump({
            "family": _family_json(fam), "p": args.p,
            "lambdas": [r["lambda"] for r in runs],
            "newton": [{"lambda": r["lambda"], "polygon": r["polygon"].to_json()} for r in runs],
            "timing_seconds": round(time.perf_counter() - t0, 6),
        }) + "\n")
        return EXIT_OK
    for r in runs:
        out.write(f"lambda={r['lambda']}: vertices {r['polygon']}\n")
        out.write(f"  slopes: {_slope_text(r['polygon'])}\n")
    return EXIT_OK


def cmd_verify(args, out):
    fam = _family(args)
    _require_ok(fam, args.p)
    if args.lam is None and not args.one_lambda:
        args.all_lambda = True
    t0 = time.perf_counter()
    crit = _criteria(fam, args.p)
    hp = hodge_polygon(enumerate_basis(fam))
    runs = _newton_runs(fam, args, with_check=True)
    for r in runs:
        r["verdict"] = compare(r["polygon"], hp)
    verdicts = {r["verdict"] for r in runs}
    guaranteed = crit["e_star_condition"] or crit["face_condition"]
    problems = []
    if VIOLATION in verdicts:
        problems.append("Newton polygon dips below the Hodge polygon")
    if guaranteed and verdicts != {EQUAL}:
        problems.append("a sufficient ordinarity criterion holds but NP != HP")
    if any(r["check"] is False for r in runs):
        problems.append("the L-polynomial mispredicts the next exponential sum")
    if VIOLATION in verdicts:
        overall = VIOLATION
    elif verdicts == {EQUAL}:
        overall = EQUAL
    else:
        overall = "above-or-equal"
    report = {
        "family": _family_json(fam),
        "p": args.p,
        "lambdas": [r["lambda"] for r in runs],
        "hodge": hp.to_json(),
        "newton": [{"lambda": r["lambda"], "polygon": r["polygon"].to_json(),
                    "verdict": r["verdict"], "rationality_check": r["check"]} for r in runs],
        "criteria": crit,
        "ordinarity": _ordinary_verdict(crit),
        "verdict": overall,
        "problems": problems,
        "timing_seconds": round(time.perf_counter() - t0, 6),
    }
    if args.json:
        out.write(_dump(report) + "\n")
    else:
        out.write(f"{fam}, p={args.p}  ({report['ordinarity']})\n")
        out.write(f"HP slopes: {_slope_text(hp)}\n")
        for r in runs:
            check = {True: "ok", False: "FAILED", None: "skipped (budget)"}[r["check"]]
            out.write(f"lambda={r['lambda']}: NP slopes {_slope_text(r['polygon'])}"
                      f"  -> {r['verdict']}  [next-sum check {check}]\n")
        out.write(f"verdict: {overall}\n")
        for msg in problems:
            out.write(f"problem: {msg}\n")
    return EXIT_INVARIANT if problems else EXIT_OK


def _monomial(c, v):
    return f"{c}*x^{v}"


def cmd_reduce(args, out):
    fam = _family(args)
    _require_ok(fam, args.p)
    if len(args.v) != fam.n:
        raise ValueError(f"--v needs {fam.n} entries")
    res = reduce_monomial(fam, args.p, args.lam, args.v)
    if args.json:
        out.write(_dump({
            "family": _family_json(fam), "p": args.p, "lambda": args.lam % args.p,
            "v": list(args.v), "steps": res.steps,
            "trace": [{"monomial": list(s.monomial), "relation": s.relation,
                       "replacement": [[c, list(m)] for c, m in s.replacement]}
                      for s in res.trace],
            "combination": [[c, list(m)] for c, m in res.combination],
        }) + "\n")
        return EXIT_OK
    for k, s in enumerate(res.trace, 1):
        rhs = " + ".join(_monomial(c, m) for c, m in s.replacement) or "0"
        out.write(f"step {k}: x^{s.monomial} via {s.relation}  ->  {rhs}\n")
    combo = " + ".join(_monomial(c, m) for c, m in res.combination) or "0"
    out.write(f"x^{tuple(args.v)} = {combo}  ({res.steps} steps)\n")
    return EXIT_OK


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kloo", description="Hodge and Newton polygons of generalized Kloosterman sums.")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(sp, prime=False):
        sp.add_argument("--a", type=_int_list, required=True, help="exponents a_i, e.g. 1,2")
        sp.add_argument("--d", type=_int_list, required=True, help="exponents d_i, e.g. 1,1")
        if prime:
            sp.add_argument("--p", type=int, required=True, help="odd prime")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    def brute_args(sp):
        group = sp.add_mutually_exclusive_group()
        group.add_argument("--lambda", dest="lam", type=int, help="parameter in F_p^* (default 1)")
        group.add_argument("--all-lambda", action="store_true", help="sweep every lambda in F_p^*")
        sp.add_argument("--workers", type=int, default=1, help="processes for the point sums")
        sp.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="kernel backend")

    sp = sub.add_parser("basis", help="list the monomial basis with weights")
    family_args(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("hodge", help="Hodge polygon")
    family_args(sp)
    sp.add_argument("--svg", help="also draw the polygon to this file")
    sp.set_defaults(func=cmd_hodge)

    sp = sub.add_parser("ordinary", help="sufficient ordinarity criteria")
    family_args(sp, prime=True)
    sp.set_defaults(func=cmd_ordinary)

    sp = sub.add_parser("newton", help="brute-force Newton polygon")
    family_args(sp, prime=True)
    brute_args(sp)
    sp.set_defaults(func=cmd_newton)

    sp = sub.add_parser("verify", help="compare NP with HP (all lambda unless --lambda given)")
    family_args(sp, prime=True)
    brute_args(sp)
    sp.add_argument("--one-lambda", action="store_true", help="only lambda=1")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reduce", help="reduce a monomial to the basis")
    family_args(sp, prime=True)
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    sp.add_argument("--v", type=_int_list, required=True, help="exponent vector, e.g. -1,2")
    sp.set_defaults(func=cmd_reduce)
    return parser


def _glue_negative_values(argv):
    # "--v -1,2" would be read as an option; rewrite it as "--v=-1,2"
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--v", "--a", "--d", "--lambda"):
            nxt = next(it, None)
            if nxt is not None:
                tok = f"{tok}={nxt}"
        out.append(tok)
    return out


def main(argv=None, out=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ReductionError, InvariantViolation, AssertionError, ArithmeticError) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
