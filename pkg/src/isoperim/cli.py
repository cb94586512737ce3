"""Command-line front end.

Subcommands: domain-info, profile, check-conjecture, arcs-find,
perturb (roots|experiment), implicit-curve. Every command is deterministic
(identical config gives byte-identical output) and writes UTF-8.

Exit codes: 0 success/pass, 1 check completed but failed, 2 config error,
3 domain precondition violated, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import arcs as arcsmod

from . import perturbation as pertmod
from . import profile as profilemod
from .errors import (IsDisk, IsoperimError, NonConvex, NotClassA,
                     NotNormalized, NumericalError)
from .geometry import SupportCurve, classify, domain_from_spec

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_domain(args) -> SupportCurve:
    spec = None
    if getattr(args, "spec", None):
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    if getattr(args, "spec_json", None):
        spec = json.loads(args.spec_json)
    preset = getattr(args, "preset", None)
    if preset:  # flags win over the spec file
        params = {}
        if preset == "ellipse":
            a = getattr(args, "a", None)
            b = getattr(args, "b", None)
            if a is None or b is None:
                if spec and spec.get("preset") == "ellipse":
                    params = spec.get("params", {})
                a = a if a is not None else params.get("a")
                b = b if b is not None else params.get("b")
            if a is None or b is None:
                raise ValueError("ellipse preset needs --a and --b")
            spec = {"preset": "ellipse", "params": {"a": a, "b": b}}
        elif preset == "disk":
            radius = getattr(args, "radius", None)
            spec = {"preset": "disk",
                    "params": {"radius": radius if radius is not None else 1.0}}
        else:
            raise ValueError(f"unknown preset {preset!r}")
    if spec is None:
        raise ValueError("no domain given: use --preset or --spec")
    return domain_from_spec(spec)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, int(args.threads))
    env = os.environ.get("ISOPERIM_THREADS")
    return max(1, int(env)) if env else 1


def _add_domain_args(p):
    p.add_argument("--preset", choices=["disk", "ellipse"])
    p.add_argument("--a", type=float, help="ellipse semi-axis on x")
    p.add_argument("--b", type=float, help="ellipse semi-axis on y")
    p.add_argument("--radius", type=float, help="disk radius")
    p.add_argument("--spec", help="path to a JSON domain spec")
    p.add_argument("--spec-json", help="inline JSON domain spec")


def cmd_domain_info(args) -> int:
    curve = _load_domain(args)
    report = classify(curve)
    bound = float(np.sqrt(np.pi / report.area))
    payload = {
        "area": report.area,
        "perimeter": report.perimeter,
        "kappa_max": report.kappa_max,
        "kappa_min": report.kappa_min,
        "is_class_A": report.is_class_A,
        "is_disk": report.is_disk,
        "degenerate": report.degenerate,
        "vertex_thetas": list(report.vertex_thetas),
        "pestov_ionin": {
            "bound": bound,
            "satisfied": report.kappa_max >= bound - 1e-12,
            "strict": report.kappa_max > bound + 1e-12,
        },
    }
    _emit(_json_dump(payload), args.output)
    return EXIT_OK


def cmd_profile(args) -> int:
    curve = _load_domain(args)
    table = profilemod.symmetric_profile(curve, args.samples)
    _emit(table.to_csv(), args.output)
    return EXIT_OK


def cmd_check_conjecture(args) -> int:
    curve = _load_domain(args)
    report = profilemod.conjecture_check(curve, args.samples)
    _emit(_json_dump(report.to_dict()), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_arcs_find(args) -> int:
    curve = _load_domain(args)
    roots = arcsmod.scan_arc_roots(curve, args.s1, args.grid)
    out = []
    for s2 in roots:
        lo, hi = (args.s1, s2) if args.s1 < s2 else (s2, args.s1)
        arc = arcsmod.build_arc(curve, lo, hi)
        out.append({
            "s1": args.s1,
            "s2": s2,
            "kind": arc.kind,
            "curvature": arc.curvature,
            "radius": arc.radius,
            "length": arc.length,
            "enclosed_area": arc.enclosed_area,
            "contained": bool(arc.contained),
            "ortho_residual": arc.ortho_residual,
        })
    _emit(_json_dump(out), args.output)
    return EXIT_OK


def cmd_perturb_roots(args) -> int:
    roots = pertmod.find_mode_roots(args.n)
    payload = [{"n": r.n, "b": r.b, "theta": r.theta, "area": r.area}
               for r in roots]
    _emit(_json_dump(payload), args.output)
    return EXIT_OK


def cmd_perturb_experiment(args) -> int:
    f = pertmod.PerturbationField.mode(args.mode)
    if args.area is not None:
        area = args.area
    else:
        roots = pertmod.find_mode_roots(args.mode) if args.mode >= 2 else []
        area = roots[0].area if roots else np.pi / 2.0 - 1.0
    n_steps = max(3, args.s_steps)
    s_grid = tuple(args.s_max * (k + 1) / n_steps for k in range(n_steps))
    config = pertmod.ExperimentConfig(
        s_grid=s_grid,
        oracle=profilemod.OracleConfig(n_s1=args.grid, threads=_threads(args)),
        threads=_threads(args),
    )
    report = pertmod.profile_decrease_experiment(f, area, config)
    _emit(_json_dump(report.to_dict()), args.output)
    return EXIT_OK


def cmd_implicit_curve(args) -> int:
    pts = pertmod.implicit_curve_sample((args.xmin, args.xmax),
                                        (args.ymin, args.ymax),
                                        args.resolution)
    lines = ["x,y"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in pts]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoperim",
        description="Isoperimetric profiles of planar convex bodies "
                    "via free-boundary circular arcs")
    parser.add_argument("--threads", type=int,
                        help="worker threads for grid sweeps "
                             "(or ISOPERIM_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("domain-info", help="area, curvature extremes, symmetry class")
    _add_domain_args(p)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_domain_info)

    p = sub.add_parser("profile", help="symmetric-family profile table (CSV)")
    _add_domain_args(p)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("check-conjecture", help="sup L/L* against the unit disk")
    _add_domain_args(p)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_check_conjecture)

    p = sub.add_parser("arcs-find", help="perfect arcs from a boundary point")
    _add_domain_args(p)
    p.add_argument("--s1", type=float, required=True,
                   help="first endpoint (normal angle, radians)")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_arcs_find)

    p = sub.add_parser("perturb", help="perturbation analysis")
    psub = p.add_subparsers(dest="perturb_command", required=True)

    pr = psub.add_parser("roots", help="profile-critical half-angles of a mode")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--output", "-o")
    pr.set_defaults(fn=cmd_perturb_roots)

    pe = psub.add_parser("experiment", help="profile-decrease fit for cos(n u)")
    pe.add_argument("--mode", type=int, required=True)
    pe.add_argument("--area", type=float,
                    help="target area (default: the mode's critical area)")
    pe.add_argument("--s-max", type=float, default=5e-3)
    pe.add_argument("--s-steps", type=int, default=5)
    pe.add_argument("--grid", type=int, default=96)
    pe.add_argument("--output", "-o")
    pe.set_defaults(fn=cmd_perturb_experiment)

    p = sub.add_parser("implicit-curve",
                       help="zero set of the mode condition (CSV points)")
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=8.0)
    p.add_argument("--ymin", type=float, default=0.01)
    p.add_argument("--ymax", type=float, default=1.56)
    p.add_argument("--resolution", type=int, default=400)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_implicit_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "xmin", "absent") is None:
        args.xmin = -args.xmax
    try:
        return args.fn(args)
    except (json.JSONDecodeError, ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotClassA, NotNormalized, IsDisk, NonConvex) as exc:
        print(f"domain precondition: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalError, IsoperimError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
