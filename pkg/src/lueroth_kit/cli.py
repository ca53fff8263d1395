"""``lueroth-kit`` command line.

Polynomial arguments accept a JSON file (the ``Poly.to_json`` format), an
inline expression such as ``"x1^2 + 2*x2*x3"``, or the word ``example`` for the
worked example.  When an instance argument is omitted a seeded random
instance is used.  Exit codes: 0 ok, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import ast
import json
import operator
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, apolarity, bateman, geiser, morley, repcheck, scorza, verify
from .algebra import E, QQ, X, Poly, QuadraticField, adjugate_conic, gens
from .instances import random_bateman_pair, random_lines, random_pentagon, random_quartic
from .linalg import rank


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def parse_field(text: str | None):
    if text in (None, "", "Q", "QQ"):
        return QQ
    t = text.replace(" ", "")
    for prefix in ("Q(sqrt(", "Qsqrt("):
        if t.startswith(prefix) and t.endswith(")" * prefix.count("(")):
            return QuadraticField(int(t[len(prefix):len(t) - prefix.count("(")]))
    raise InputError(f"unknown field {text!r}; use Q or Q(sqrt(d))")


def parse_expression(text: str, field=QQ) -> Poly:
    """Safe evaluation of a polynomial expression in x1..x3, e1..e3.

    ``^`` and ``**`` are powers; over Q(sqrt(d)) the name ``w`` is sqrt(d).
    """
    names = dict(zip(("x1", "x2", "x3", "e1", "e2", "e3"), gens(field)))
    if isinstance(field, QuadraticField):
        names["w"] = Poly.const(field.gen)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.const(Fraction(node.value), field)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise InputError("exponents must be non-negative integer literals")
                return ev(node.left) ** node.right.value
            if type(node.op) in _BINOPS:
                left, right = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Div):
                    if right.bidegrees() != {(0, 0)}:
                        raise InputError("division only by constants")
                    return left * Poly.const(1 / right.coefficient((0,) * 6), field)
                return _BINOPS[type(node.op)](left, right)
        raise InputError(f"unsupported syntax in {text!r}")

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse {text!r}: {exc.msg}") from None
    return ev(tree)


def read_poly(arg: str, field=QQ) -> Poly:
    if os.path.exists(arg):
        try:
            with open(arg) as fh:
                return Poly.from_json(json.load(fh))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{arg}: {exc}") from None
    return parse_expression(arg, field)


def read_lines(arg: str) -> list:
    """Lines as a JSON file of coefficient triples or ``"a,b,c; ..."``."""
    try:
        if os.path.exists(arg):
            with open(arg) as fh:
                rows = json.load(fh)
        else:
            rows = [[Fraction(c) for c in r.split(",")] for r in arg.split(";") if r.strip()]
        return [Poly.linear([Fraction(c) for c in r], X) for r in rows]
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad lines {arg!r}: {exc}") from None


def _qstar_and_c(args):
    """(Q*, C): a conic in x is replaced by its adjugate, one in e is Q*."""
    field = parse_field(args.field)
    if args.Q is None and args.C is None:
        Q, C = random_bateman_pair(args.seed)
        return adjugate_conic(Q), C
    if args.Q is None or args.C is None:
        raise InputError("give both --Q and --C (or neither, for a random instance)")
    if args.Q == "example":
        Qstar = bateman.example_instance()[0]
    else:
        Q = read_poly(args.Q, field)
        if Q.is_form(X, 2) and not Q.is_zero():
            Qstar = adjugate_conic(Q)
        elif Q.is_form(E, 2) and not Q.is_zero():
            Qstar = Q
        else:
            raise InputError(f"--Q must be a conic in x or in e, got {Q}")
    C = bateman.example_instance()[1] if args.C == "example" else read_poly(args.C, field)
    if not C.is_form(X, 3) or C.is_zero():
        raise InputError(f"--C must be a cubic in x, got {C}")
    return Qstar, C


def _q_and_c(args):
    """(Q, C) with Q in the x-variables, for the cubic net."""
    if args.Q == "example" and args.C == "example":
        return bateman.example_conic(), bateman.example_instance()[1]
    Qstar, C = _qstar_and_c(args)
    return adjugate_conic(Qstar), C


def _quartic(args) -> Poly:
    if args.quartic is None:
        return random_quartic(args.seed)
    f = read_poly(args.quartic, parse_field(args.field))
    if not f.is_form(X, 4) or f.is_zero():
        raise InputError(f"expected a quartic in x, got {f}")
    return f


# ---------------------------------------------------------------------------
# output

def _jsonable(v):
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(c) for c in v]
    if isinstance(v, dict):
        return {k: _jsonable(c) for k, c in v.items()}
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


def emit(args, data: dict):
    if args.format == "json":
        sys.stdout.write(json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n")
        return
    for k, v in data.items():
        if isinstance(v, (list, tuple)) and v and isinstance(v[0], (list, tuple)):
            sys.stdout.write(f"{k}:\n")
            for row in v:
                sys.stdout.write("  " + "  ".join(str(c) for c in row) + "\n")
        elif isinstance(v, (list, tuple)):
            sys.stdout.write(f"{k}:\n")
            for item in v:
                sys.stdout.write(f"  {_jsonable(item)}\n")
        else:
            sys.stdout.write(f"{k}: {_jsonable(v)}\n")


def _phase_fixed(p):
    k = int(np.argmax(np.abs(p)))
    return p * (abs(p[k]) / p[k])


def _complex_text(z: complex) -> str:
    re, im = (0.0 if abs(v) < 1e-13 else v for v in (z.real, z.imag))
    return f"{re:.12g}{im:+.12g}j" if im else f"{re:.12g}"


def _rows(M) -> list:
    return [[str(c) for c in r] for r in M.rows]


# ---------------------------------------------------------------------------
# subcommands

def cmd_catalecticant(args):
    f = _quartic(args)
    data = apolarity.catalecticant(f)
    emit(args, {
        "quartic": f,
        "basis": list(data.labels),
        "matrix": _rows(data.matrix),
        "det": data.det,
        "rank": data.rank,
        "kernel": apolarity.catalecticant_kernel(f),
    })
    return 0


def cmd_clebsch(args):
    lines = read_lines(args.lines) if args.lines else random_lines(args.seed)
    f = apolarity.clebsch_from_lines(lines)
    det = apolarity.catalecticant_invariant(f) if not f.is_zero() else 0
    emit(args, {"lines": lines, "quartic": f, "catalecticant_det": det})
    return 0 if det == 0 else 1


def cmd_lueroth(args):
    if args.lines:
        try:
            p = apolarity.Pentagon(tuple(read_lines(args.lines)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        p = random_pentagon(args.seed)
    basis = apolarity.lueroth_space_from_pentagon(p)
    emit(args, {
        "lines": list(p.lines),
        "vertices": [[str(c) for c in v] for v in p.vertices],
        "dimension": len(basis),
        "basis": basis,
    })
    return 0 if len(basis) == 5 else 1


def cmd_scorza(args):
    f = _quartic(args)
    fn = scorza.scorza_naive if args.naive else scorza.scorza_fast
    S = fn(f, backend=args.backend)
    out = {"quartic": f, "scorza": S, "path": "naive" if args.naive else "fast"}
    if args.format == "json":
        out["scorza_form"] = S.to_json()
    emit(args, out)
    return 0


def cmd_bateman(args):
    Qstar, C = _qstar_and_c(args)
    T = bateman.b_pairing(Qstar, C)
    out = {"Qstar": Qstar, "C": C, "tuple": T.to_json()}
    if args.format == "table":
        out["tuple"] = [f"{k} = {v}" for k, v in T.to_json()["coords"].items()]
    emit(args, out)
    return 0


def cmd_morley(args):
    Qstar, C = _qstar_and_c(args)
    T = bateman.b_pairing(Qstar, C)
    M = morley.morley_matrix(T)
    out = {"convention": morley.calibrate().to_json(), "matrix": _rows(M), "rank": rank(M)}
    status = 0
    if args.pfaffian:
        pf = morley.pfaffian_value(T)
        out["pfaffian"] = pf
        status |= pf != 0
    if args.kernel:
        try:
            pencil = morley.kernel_pencil(T)
        except morley.DegenerateTupleError as exc:
            out["kernel_error"] = str(exc)
            status = 1
        else:
            out["kernel"] = list(pencil.generators)
            out["contains_Qstar"] = pencil.contains(Qstar)
            status |= not pencil.contains(Qstar)
    if args.tangent_rank:
        out["tangent_rank"] = morley.tangent_rank(Qstar, C)
    emit(args, out)
    return int(status)


def cmd_geiser(args):
    Q, C = _q_and_c(args)
    if Q.field != QQ or C.field != QQ:
        raise InputError("the numeric suite needs rational Q and C")
    net = geiser.net_from_QC(Q, C)
    tol = args.tol
    out = {"Q": Q, "C": C, "net": list(net.cubics), "syzygy_holds": net.syzygy_holds()}
    status = 0 if net.syzygy_holds() else 1
    show_all = not (args.points or args.ramification or args.branch)
    if args.points or show_all:
        pts = geiser.seven_points_numeric(net, tol, seed=args.seed)
        six_ok, margin = geiser.no_six_on_conic(pts)
        out["base_points"] = [[_complex_text(c) for c in _phase_fixed(p)] for p in pts]
        out["max_residual"] = f"{geiser.max_residual(net, pts):.1e}"
        out["no_six_on_conic"] = bool(six_ok)
        out["fiber_size"] = len(geiser.fiber(net, seed=args.seed, tol=tol))
        status |= not six_ok or out["fiber_size"] != 2
    if args.ramification or show_all:
        out["ramification_sextic"] = geiser.ramification_sextic(net)
    if args.branch or show_all:
        bq = geiser.branch_quartic(net, seed=args.seed)
        out["branch_quartic"] = bq.to_json()
        status |= bq.numeric_rank_15 != 14
    emit(args, out)
    return int(status)


def cmd_repcheck(args):
    rows = repcheck.tables()
    if args.format == "json":
        emit(args, {"rows": [r.to_json() for r in rows]})
    else:
        w = max(len(r.name) for r in rows)
        sys.stdout.write(f"{'representation':{w}}  {'computed':24}  {'claimed':24}  agrees\n")
        for r in rows:
            claimed = "-" if r.claimed is None else r.claimed
            agrees = "-" if r.agrees is None else ("yes" if r.agrees else "NO")
            note = "" if r.blocking else " (info)"
            sys.stdout.write(f"{r.name:{w}}  {r.computed:24}  {claimed:24}  {agrees}{note}\n")
    return 0 if all(r.agrees for r in rows if r.blocking) else 1


def cmd_verify(args):
    try:
        report = verify.verify_paper(args.seed, only=args.only, jobs=args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = report.dumps(args.timings) if args.format == "json" else report.table(args.timings)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report.dumps(args.timings))
    sys.stdout.write(text)
    if not report.ok:
        sys.stderr.write(f"first failing statement: {report.first_failure}\n")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for random instances and sampling")
    common.add_argument("--tol", type=float, default=geiser.DEFAULT_TOL, help="numeric tolerance (geiser)")
    common.add_argument("--field", default="Q", help="coefficient field for inline expressions: Q or Q(sqrt(d))")
    common.add_argument("--format", choices=("table", "json"), default="table")

    qc = argparse.ArgumentParser(add_help=False)
    qc.add_argument("--Q", help="conic in x (its adjugate is used) or dual conic in e; 'example'")
    qc.add_argument("--C", help="cubic in x; 'example'")

    parser = argparse.ArgumentParser(prog="lueroth-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalecticant", parents=[common], help="catalecticant matrix, determinant, kernel")
    p.add_argument("--quartic")
    p.set_defaults(func=cmd_catalecticant)

    p = sub.add_parser("clebsch", parents=[common], help="sum of fourth powers of lines")
    p.add_argument("--lines", help="JSON file of triples or 'a,b,c; ...'")
    p.set_defaults(func=cmd_clebsch)

    p = sub.add_parser("lueroth", parents=[common], help="quartics through the vertices of a pentagon")
    p.add_argument("--lines", help="five lines: JSON file of triples or 'a,b,c; ...'")
    p.set_defaults(func=cmd_lueroth)

    p = sub.add_parser("scorza", parents=[common], help="Scorza covariant of a quartic")
    p.add_argument("--quartic")
    p.add_argument("--naive", action="store_true", help="use the literal 3^16-term contraction")
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)
    p.set_defaults(func=cmd_scorza)

    p = sub.add_parser("bateman", parents=[common, qc], help="the tuple b(Q*, C)")
    p.set_defaults(func=cmd_bateman)

    p = sub.add_parser("morley", parents=[common, qc], help="Morley matrix of b(Q*, C)")
    p.add_argument("--pfaffian", action="store_true")
    p.add_argument("--kernel", action="store_true")
    p.add_argument("--tangent-rank", action="store_true")
    p.set_defaults(func=cmd_morley)

    p = sub.add_parser("geiser", parents=[common, qc], help="numeric net of cubics and branch quartic")
    p.add_argument("--points", action="store_true")
    p.add_argument("--ramification", action="store_true")
    p.add_argument("--branch", action="store_true")
    p.set_defaults(func=cmd_geiser)

    p = sub.add_parser("repcheck", parents=[common], help="S4 and SL2 decomposition tables")
    p.set_defaults(func=cmd_repcheck)

    p = sub.add_parser("verify-paper", parents=[common], help="run every regression statement")
    p.add_argument("--only", nargs="+", help="statement ids, id prefixes or module names")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
    p.add_argument("--output", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (geiser.GeiserError, morley.DegenerateTupleError) as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return 1
    except ValueError as exc:
        # parse errors, wrong degrees, field mismatches, degenerate pentagons
        sys.stderr.write(f"input error: {exc}\n")
        return 2

if __name__ == "__main__":
    sys.exit(main())
