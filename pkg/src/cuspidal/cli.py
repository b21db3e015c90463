"""
Command line front end.

Exit status: 0 on success, 2 when the input does not match its schema,
3 when a mathematical precondition fails (the error class name is printed).
"""

import argparse
import sys
from dataclasses import dataclass, field

from . import boundary, curves, harness, io, parabola, ruled
from .errors import DegenerateBoundary, GeometryError
from .jets import DEFAULT_ORDER
from .surface import (NormalFormData, normal_form_boundary, normal_form_germ, normalize)

COMMANDS = ("invariants", "reduce", "curve", "reconstruct", "parabola",
            "ruled-scan", "ruled-mesh", "harness")


@dataclass
class RunConfig:
    command: str
    input: str = None
    output: str = None
    mode: str = "both"              # invariants: closed / numeric / both
    tol: float = 1e-6
    order: int = None
    seed: int = 0
    options: dict = field(default_factory=dict)


# -- invariants -------------------------------------------------------------------

def _invariants_one(obj, mode, order, tol):
    """Closed and/or numeric boundary invariants of one input item."""
    if "normal_form" in obj or "a20" in obj:
        nf = NormalFormData.from_dict(obj.get("normal_form", obj))
        n = order or DEFAULT_ORDER
        f = normal_form_germ(nf, n)
        b = normal_form_boundary(nf, n) if nf.boundary is not None else None
    else:
        f, b = io.parse_germ(obj, order)
        nf = normalize(f, b).nf if mode != "numeric" else None
    if b is None:
        raise DegenerateBoundary("input has no boundary")
    kind = boundary.classify_boundary(f, b).kind
    report = {"case": kind}
    closed = numeric = None
    if mode in ("closed", "both"):
        closed = (boundary.case1_closed_forms(nf) if kind == "Case1"
                  else boundary.case2_closed_forms(nf))
        report["closed"] = closed.to_dict()
    if mode in ("numeric", "both"):
        numeric = (boundary.case1_numeric(f, b) if kind == "Case1"
                   else boundary.case2_numeric(f, b))
        report["numeric"] = numeric.to_dict()
    if mode == "both":
        report["sign_convention"] = {k: boundary.SIGN_CONVENTION[k] for k in report["closed"]}
        report["delta"] = boundary.compare(closed, numeric)
        report["agree"] = all(v < tol for v in report["delta"].values())
    return report


def cmd_invariants(cfg: RunConfig, out):
    obj = io.load_json(cfg.input, io.INVARIANTS)
    items = obj if isinstance(obj, list) else [obj]
    reports = [_invariants_one(item, cfg.mode, cfg.order, cfg.tol) for item in items]
    if cfg.options.get("csv"):
        fields = sorted({k for r in reports for part in ("closed", "numeric", "delta")
                         for k in r.get(part, {})})
        header = ["index", "case", "part"] + fields
        rows = []
        for i, r in enumerate(reports):
            for part in ("closed", "numeric", "delta"):
                if part in r:
                    rows.append([i, r["case"], part] + [r[part].get(k, "") for k in fields])
        io.write_csv(rows, header, cfg.output, out)
    else:
        io.write_text(io.dumps(reports if isinstance(obj, list) else reports[0]), cfg.output, out)
    return 0


def cmd_reduce(cfg: RunConfig, out):
    obj = io.load_json(cfg.input, io.GERM)
    f, b = io.parse_germ(obj, cfg.order)
    io.write_text(io.dumps(normalize(f, b).nf.to_dict()), cfg.output, out)
    return 0


# -- curves ---------------------------------------------------------------------------

def cmd_curve_invariants(cfg: RunConfig, out):
    g = io.parse_curve(io.load_json(cfg.input, io.CURVE), cfg.order)
    cls = curves.classify_curve(g)
    report = {"class": cls.value}
    if cls == curves.CurveClass.Type23:
        inv = curves.curve_invariants(g)
        report.update(kappa_sing=inv.kappa_sing, tau_sing=inv.tau_sing, sigma_sing=inv.sigma_sing)
    io.write_text(io.dumps(report), cfg.output, out)
    return 0


def _coeff_list(text):
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise io.SchemaError(f"expected comma separated numbers, got {text!r}") from None


def cmd_reconstruct(cfg: RunConfig, out):
    o = cfg.options
    span = tuple(_coeff_list(o.get("span") or "-0.5,0.5"))
    if len(span) != 2:
        raise io.SchemaError("--span needs two numbers", "--span")
    rec = curves.reconstruct_curve(_coeff_list(o["alpha"]), _coeff_list(o["beta"] or "0"),
                                   t_span=span, steps=int(o.get("steps") or 2000))
    rows = [[float(t), *map(float, p)] for t, p in zip(rec.ts, rec.points)]
    io.write_csv(rows, ["t", "x", "y", "z"], cfg.output, out)
    return 0


# -- parabola ---------------------------------------------------------------------------

def _vec(x):
    return None if x is None else [float(c) for c in x]


def cmd_parabola(cfg: RunConfig, out):
    obj = io.load_json(cfg.input, io.GERM)
    f, b = io.parse_germ(obj, cfg.order)
    p = parabola.curvature_parabola(f)
    report = {"kind": p.kind.value, "basepoint": _vec(p.basepoint), "direction": _vec(p.direction)}
    if p.quadratic_coeff is not None:
        report["quadratic_coeff"] = float(p.quadratic_coeff)
    report["umbilic_curvature"] = (None if p.kind == parabola.ParabolaKind.PARABOLA
                                   else parabola.umbilic_curvature(p))
    V = P = n = None
    if b is not None:
        V, P, dist = parabola.vertex_and_intersection(f, b)
        n = parabola.principal_normal(f, b)
        report.update(V=_vec(V), P=_vec(P), dist=dist)
    if cfg.options.get("svg"):
        io.write_text(parabola.parabola_svg(p, V, P, n), cfg.options["svg"])
    io.write_text(io.dumps(report), cfg.output, out)
    return 0


# -- ruled surfaces ---------------------------------------------------------------------

def _ruled_input(cfg):
    obj = io.load_json(cfg.input, io.RULED)
    return ruled.RuledInput.from_dict(obj)


def cmd_ruled_scan(cfg: RunConfig, out):
    inp = _ruled_input(cfg)
    reports = ruled.find_births(inp, include_endpoints=bool(cfg.options.get("endpoints")))
    if cfg.options.get("check"):
        surf = ruled.build_surface(inp, int(cfg.options.get("steps") or ruled.DEFAULT_STEPS))
        for r in reports:
            if r.is_generic_birth:
                c1, c2 = ruled.birth_cross_check(surf, r)
                r.diagnostics.update(c1=c1, c2=c2)
    io.write_text(io.dumps([r.to_dict() for r in reports]), cfg.output, out)
    if cfg.options.get("csv"):
        io.write_csv([list(map(float, row)) for row in ruled.singular_set(inp)], ["t", "v"],
                     cfg.options["csv"])
    return 0


def cmd_ruled_mesh(cfg: RunConfig, out):
    inp = _ruled_input(cfg)
    o = cfg.options
    surf = ruled.build_surface(inp, int(o.get("steps") or ruled.DEFAULT_STEPS))
    mesh = ruled.mesh_export(surf, int(o.get("nt") or 101), int(o.get("nv") or 41))
    if not cfg.output:
        raise io.SchemaError("ruled mesh needs --out", "--out")
    ruled.write_obj(mesh, cfg.output)
    out.write(f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} faces to {cfg.output}\n")
    return 0


# -- harness ---------------------------------------------------------------------------

def cmd_harness(cfg: RunConfig, out):
    draws = int(cfg.options.get("draws") or 100)
    rows = harness.run_harness(cfg.seed, draws, cfg.tol, int(cfg.options.get("jobs") or 1))
    out.write(harness.format_table(rows, cfg.tol))
    if cfg.output:
        io.write_csv([[r.invariant, r.max_error, r.worst_draw, r.draws,
                       "PASS" if r.passed else "FAIL", int(r.informational)] for r in rows],
                     ["invariant", "max_error", "worst_draw", "draws", "status", "reference_only"],
                     cfg.output)
    return 0 if all(r.passed for r in rows if not r.informational) else 1


HANDLERS = {
    "invariants": cmd_invariants, "reduce": cmd_reduce, "curve": cmd_curve_invariants,
    "reconstruct": cmd_reconstruct, "parabola": cmd_parabola, "ruled-scan": cmd_ruled_scan,
    "ruled-mesh": cmd_ruled_mesh, "harness": cmd_harness,
}


def run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return HANDLERS[config.command](config, out)
    except io.SchemaError as e:
        err.write(f"schema error: {e}\n")
        return 2
    except FileNotFoundError as e:
        err.write(f"schema error: {e}\n")
        return 2
    except GeometryError as e:
        err.write(f"{type(e).__name__}: {e}\n")
        return 3


# -- argument parsing --------------------------------------------------------------------

def _global_flags(suppress):
    # subcommands repeat the global flags; SUPPRESS keeps them from
    # overwriting values given before the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--tol", type=float, default=d(1e-6), help="agreement tolerance")
    g.add_argument("--order", type=int, default=d(None), help="jet truncation order")
    g.add_argument("--seed", type=int, default=d(0))
    g.add_argument("--out", default=d(None), help="output path (default stdout)")
    return g


def build_parser():
    common = _global_flags(True)
    p = argparse.ArgumentParser(prog="cuspidal", parents=[_global_flags(False)],
                                description="Invariants of cuspidal edges with boundary.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="boundary invariants")
    s.add_argument("input")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--numeric", dest="mode", action="store_const", const="numeric")
    g.add_argument("--closed", dest="mode", action="store_const", const="closed")
    g.add_argument("--both", dest="mode", action="store_const", const="both")
    s.add_argument("--csv", action="store_true", help="CSV table instead of JSON")
    s.set_defaults(mode="both")

    s = sub.add_parser("reduce", parents=[common], help="normal-form coefficients")
    s.add_argument("input")

    s = sub.add_parser("curve", parents=[common], help="singular space curves")
    csub = s.add_subparsers(dest="curve_command", required=True)
    c = csub.add_parser("invariants", parents=[common])
    c.add_argument("input")
    c = csub.add_parser("reconstruct", parents=[common])
    _reconstruct_args(c)

    s = sub.add_parser("reconstruct", parents=[common], help="same as 'curve reconstruct'")
    _reconstruct_args(s)

    s = sub.add_parser("parabola", parents=[common], help="curvature parabola")
    s.add_argument("input")
    s.add_argument("--svg", default=None, help="write an SVG picture of the normal plane")

    s = sub.add_parser("ruled", parents=[common], help="flat ruled surfaces")
    rsub = s.add_subparsers(dest="ruled_command", required=True)
    r = rsub.add_parser("scan", parents=[common])
    r.add_argument("input")
    r.add_argument("--csv", default=None, help="CSV file for the singular set")
    r.add_argument("--endpoints", action="store_true", help="also report minima at interval ends")
    r.add_argument("--check", action="store_true", help="jet cross-check of generic births")
    r.add_argument("--steps", type=int, default=None)
    r = rsub.add_parser("mesh", parents=[common])
    r.add_argument("input")
    r.add_argument("--nt", type=int, default=101)
    r.add_argument("--nv", type=int, default=41)
    r.add_argument("--steps", type=int, default=None)

    s = sub.add_parser("harness", parents=[common], help="closed form versus numeric sweep")
    s.add_argument("--draws", type=int, default=100)
    s.add_argument("--jobs", type=int, default=1)
    return p


def _reconstruct_args(c):
    c.add_argument("--alpha", required=True, help="polynomial coefficients of alpha, comma separated")
    c.add_argument("--beta", default="0", help="polynomial coefficients of beta")
    c.add_argument("--span", default="-0.5,0.5")
    c.add_argument("--steps", type=int, default=2000)


def config_from_args(ns) -> RunConfig:
    command = ns.command
    if command == "curve":
        command = "curve" if ns.curve_command == "invariants" else "reconstruct"
    elif command == "ruled":
        command = "ruled-" + ns.ruled_command
    skip = {"command", "curve_command", "ruled_command", "input", "out", "mode", "tol",
            "order", "seed"}
    options = {k: v for k, v in vars(ns).items() if k not in skip}
    return RunConfig(command, getattr(ns, "input", None), ns.out, getattr(ns, "mode", "both"),
                     ns.tol, ns.order, ns.seed, options)


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
