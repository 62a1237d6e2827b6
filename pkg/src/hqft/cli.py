"""Command line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad input.
Reports are JSON by default; ``--format human`` renders the same data.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import acceptance
from . import statesum as ss
from .cobordism import (BoundaryMismatch, Interpreter, ParseError, invariant_closed, parse,
                        to_text, typecheck)
from .crossed import DegenerateFormError, algebra_to_json, from_cocycle, group_algebra, verify
from .group import GroupError
from .io import (InputError, load_algebra, load_cocycle, load_group, load_gsurface, load_pi2, load_triangulation,
                 triangulation_to_json)
from .phase import (cochain_to_json, cocycle_defect, cocycle_to_json, cohomologous, is_cocycle, normalize,
                    random_cocycle, to_complex)
from .pi2 import TRIVIAL, LabeledCobordism, evaluate_labeled, verify_pi2

OK, FAIL, BAD_INPUT = 0, 1, 2


class Exit(Exception):
    def __init__(self, status: int, report: dict):
        self.status = status
        self.report = report


def default_tol() -> float:
    raw = os.environ.get("HQFT_DEFAULT_TOL", "1e-9")
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"HQFT_DEFAULT_TOL is not a number: {raw!r}") from None
    return tol


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _matrix(M: np.ndarray) -> dict:
    return {"shape": list(M.shape), "entries": [[_c(x) for x in row] for row in M]}


def _expr_text(args) -> str:
    if args.text is not None:
        return args.text
    if args.expr_file is not None:
        try:
            with open(args.expr_file) as fh:
                return fh.read()
        except FileNotFoundError:
            raise InputError(f"no such file: {args.expr_file}") from None
    raise InputError("give an expression with --text or --expr-file")


# handlers ----------------------------------------------------------------

def cmd_group_check(args):
    try:
        g = load_group(args.input)
    except GroupError as exc:
        raise Exit(FAIL, {"valid": False, "axiom": exc.axiom, "witness": list(exc.witness),
                          "message": str(exc)}) from None
    return {"valid": True, "order": g.order, "abelian": g.is_abelian(), "names": list(g.names)}


def cmd_cocycle_check(args):
    t = load_cocycle(args.input)
    if is_cocycle(t):
        return {"cocycle": "valid", "den": t.den, "normalized": t.is_normalized()}
    d = cocycle_defect(t)
    w = [int(x) for x in np.argwhere(d)[0]]
    raise Exit(FAIL, {"cocycle": "invalid", "witness": w, "defect": f"{int(d[tuple(w)])}/{t.den}"})


def cmd_cocycle_normalize(args):
    t = load_cocycle(args.input)
    if not is_cocycle(t):
        raise Exit(FAIL, {"cocycle": "invalid"})
    cert = normalize(t)
    return {"cocycle": cocycle_to_json(cert.normalized), "shift": cochain_to_json(cert.shift)}


def cmd_cocycle_cohomologous(args):
    t1 = load_cocycle(args.input)
    t2 = load_cocycle(args.other, t1.group)
    for t in (t1, t2):
        if not is_cocycle(t):
            raise Exit(FAIL, {"cocycle": "invalid"})
    beta = cohomologous(t1, t2, args.max_factor)
    return {"cohomologous": beta is not None, "beta": cochain_to_json(beta) if beta is not None else None}


def cmd_cocycle_random(args):
    g = load_group(args.group)
    return {"cocycle": cocycle_to_json(random_cocycle(g, args.den, args.seed))}


def cmd_algebra_from_cocycle(args):
    t = load_cocycle(args.input)
    if not is_cocycle(t):
        raise Exit(FAIL, {"cocycle": "invalid"})
    return {"algebra": algebra_to_json(from_cocycle(t))}


def cmd_algebra_group_algebra(args):
    return {"algebra": algebra_to_json(group_algebra(load_group(args.group)))}


def cmd_algebra_verify(args):
    rep = verify(load_algebra(args.input), args.tol).to_json()
    if not rep["passed"]:
        first = next(c for c in rep["checks"] if not c["passed"])
        rep["failed_axiom"] = first["axiom"]
        rep["failed_axioms"] = [c["axiom"] for c in rep["checks"] if not c["passed"]]
        rep["witness"] = first["witness"]
        raise Exit(FAIL, rep)
    return rep


def cmd_expr_parse(args):
    g = load_group(args.group)
    return {"canonical": to_text(parse(_expr_text(args), g), g)}


def _typed(args):
    g = load_group(args.group)
    e = parse(_expr_text(args), g)
    try:
        src, tgt = typecheck(e, g)
    except BoundaryMismatch as exc:
        raise Exit(FAIL, {"well_typed": False, "message": str(exc), "position": exc.position}) from None
    return g, e, src, tgt


def cmd_expr_typecheck(args):
    g, _, src, tgt = _typed(args)
    return {"well_typed": True, "source": [g.names[a] for a in src], "target": [g.names[a] for a in tgt]}


def cmd_expr_eval(args):
    v = load_algebra(args.algebra)
    args.group = args.group or args.algebra
    g, e, src, tgt = _typed(args)
    if g != v.group:
        raise InputError("expression group and algebra group differ")
    M = Interpreter(v, args.tol)(e)
    return {"source": [g.names[a] for a in src], "target": [g.names[a] for a in tgt], "matrix": _matrix(M)}


def cmd_surface_invariant(args):
    if args.cocycle is None and args.algebra is None:
        raise InputError("give --algebra or --cocycle")
    if args.cocycle is not None:
        t = load_cocycle(args.cocycle)
        if not is_cocycle(t):
            raise Exit(FAIL, {"cocycle": "invalid"})
        v = from_cocycle(t)
    else:
        t = None
        v = load_algebra(args.algebra)
    s = load_gsurface(args.input, v.group)
    z = invariant_closed(v, s)
    out = {"genus": s.genus, "invariant": _c(z)}
    if t is not None:
        p = ss.evaluate(t, *ss.build_genus_g(v.group, s.handles))
        out["state_sum_phase"] = str(p)
        out["agrees"] = bool(abs(z - to_complex(p)) <= args.tol)
        if not out["agrees"]:
            raise Exit(FAIL, out)
    return out


def cmd_surface_statesum(args):
    t = load_cocycle(args.cocycle)
    s, l = load_triangulation(args.input, t.group)
    diag = ss.validate(s, l)
    if not diag.valid:
        raise Exit(BAD_INPUT, {"diagnostics": diag.to_json()})
    p = ss.evaluate(t, s, l)
    return {"phase": str(p), "value": _c(to_complex(p)), "diagnostics": diag.to_json()}


def cmd_surface_reverse(args):
    group = load_group(args.group) if args.group else None
    s, l = load_triangulation(args.input, group)
    r = ss.reverse_orientation(s, l)
    out = {"surface": triangulation_to_json(*r)}
    if args.cocycle:
        t = load_cocycle(args.cocycle, l.group)
        out["phase"] = str(ss.evaluate(t, s, l))
        out["reversed_phase"] = str(ss.evaluate(t, *r))
    return out


def cmd_pachner_fuzz(args):
    g = load_group(args.group) if args.group else None
    t = load_cocycle(args.cocycle, g)
    if g is not None and t.group != g:
        raise InputError("cocycle and --group disagree")
    if not is_cocycle(t):
        raise Exit(FAIL, {"cocycle": "invalid"})
    cases = ss.pachner_fuzz(t, args.seed, args.moves, args.cases)
    attempted = sum(c.attempted for c in cases)
    skipped = sum(c.skipped for c in cases)
    out = {"seed": args.seed, "cases": [c.to_json() for c in cases],
           "all_constant": all(c.constant for c in cases),
           "skip_rate": round(skipped / attempted, 6) if attempted else 0.0}
    if not out["all_constant"]:
        raise Exit(FAIL, out)
    return out


def cmd_pi2_verify(args):
    rep = verify_pi2(load_pi2(args.input), args.tol).to_json()
    if not rep["passed"]:
        first = next(c for c in rep["checks"] if not c["passed"])
        rep["failed_axiom"] = first["axiom"]
        rep["failed_axioms"] = [c["axiom"] for c in rep["checks"] if not c["passed"]]
        rep["witness"] = first["witness"]
        raise Exit(FAIL, rep)
    return rep


def cmd_pi2_eval(args):
    v = load_pi2(args.input)
    e = parse(_expr_text(args), TRIVIAL)
    try:
        typecheck(e, TRIVIAL)
    except BoundaryMismatch as exc:
        raise Exit(FAIL, {"well_typed": False, "message": str(exc)}) from None
    label = v.group.index(args.label) if not args.label.isdigit() else int(args.label)
    v.group.check(label)
    return {"label": v.group.names[label], "matrix": _matrix(evaluate_labeled(v, LabeledCobordism(e, label)))}


def cmd_accept(args):
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = acceptance.run_all(args.seed, only)
    out = {"seed": args.seed, "passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    if not out["passed"]:
        raise Exit(FAIL, out)
    return out


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--tol", type=float, default=None, help="tolerance for floating checks")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="hqft", description="1+1D HQFT engine for finite groups")
    top = p.add_subparsers(dest="command", required=True)

    def group(name):
        sp = top.add_parser(name)
        return sp.add_subparsers(dest="action", required=True)

    def cmd(parent, name, fn, *flags):
        sp = parent.add_parser(name, parents=[common])
        for f in flags:
            f(sp)
        sp.set_defaults(fn=fn)
        return sp

    def inp(sp):
        sp.add_argument("--in", dest="input", required=True)

    def grp(sp):
        sp.add_argument("--group", required=True)

    def text(sp):
        sp.add_argument("--text")
        sp.add_argument("--expr-file")

    g = group("group")
    cmd(g, "check", cmd_group_check, inp)

    c = group("cocycle")
    cmd(c, "check", cmd_cocycle_check, inp)
    cmd(c, "normalize", cmd_cocycle_normalize, inp)
    sp = cmd(c, "cohomologous", cmd_cocycle_cohomologous, inp)
    sp.add_argument("--other", required=True)
    sp.add_argument("--max-factor", type=int, default=None)
    sp = cmd(c, "random", cmd_cocycle_random, grp)
    sp.add_argument("--den", type=int, required=True)

    a = group("algebra")
    cmd(a, "from-cocycle", cmd_algebra_from_cocycle, inp)
    cmd(a, "group-algebra", cmd_algebra_group_algebra, grp)
    cmd(a, "verify", cmd_algebra_verify, inp)

    e = group("expr")
    sp = cmd(e, "parse", cmd_expr_parse, grp, text)
    sp = cmd(e, "typecheck", cmd_expr_typecheck, grp, text)
    sp = cmd(e, "eval", cmd_expr_eval, text)
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--group", default=None)

    s = group("surface")
    sp = cmd(s, "invariant", cmd_surface_invariant, inp)
    sp.add_argument("--algebra")
    sp.add_argument("--cocycle")
    sp = cmd(s, "statesum", cmd_surface_statesum, inp)
    sp.add_argument("--cocycle", required=True)
    sp = cmd(s, "reverse", cmd_surface_reverse, inp)
    sp.add_argument("--group")
    sp.add_argument("--cocycle")

    pf = group("pachner")
    sp = cmd(pf, "fuzz", cmd_pachner_fuzz)
    sp.add_argument("--group")
    sp.add_argument("--cocycle", required=True)
    sp.add_argument("--moves", type=int, default=20)
    sp.add_argument("--cases", type=int, default=100)

    q = group("pi2")
    cmd(q, "verify", cmd_pi2_verify, inp)
    sp = cmd(q, "eval", cmd_pi2_eval, inp, text)
    sp.add_argument("--label", default="0")

    sp = top.add_parser("accept", parents=[common])
    sp.add_argument("--only", help="comma separated criterion numbers")
    sp.set_defaults(fn=cmd_accept, seed=acceptance.DEFAULT_SEED)
    return p


def render_human(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    if "criteria" in report:
        for r in report["criteria"]:
            lines.append(f"criterion {r['id']:2d} [{'PASS' if r['passed'] else 'FAIL'}] {r['name']}")
        lines.append(f"overall: {'PASS' if report['passed'] else 'FAIL'}")
        return "\n".join(lines)
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(render_human(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}: {len(v)} item(s)")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _finite(x):
    """JSON has no infinities; write them as strings."""
    if isinstance(x, float) and not np.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _finite(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite(v) for v in x]
    return x


def emit(report: dict, fmt: str, stream) -> None:
    report = _finite(report)
    if fmt == "human":
        stream.write(render_human(report) + "\n")
    else:
        stream.write(json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    fmt = getattr(args, "format", "json")
    label = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        if args.tol is None:
            args.tol = default_tol()
        if args.tol < 0:
            raise InputError("tolerance must be nonnegative")
        report, status = args.fn(args), OK
    except Exit as ex:
        report, status = ex.report, ex.status
    except (InputError, ParseError, GroupError, DegenerateFormError, ss.SurfaceError, ValueError, KeyError,
            TypeError, IndexError) as exc:
        report, status = {"error": type(exc).__name__, "message": str(exc)}, BAD_INPUT
        if isinstance(exc, ParseError):
            report.update(line=exc.line, col=exc.col)
    report = {"command": label, "status": status, **report}
    emit(report, fmt, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
