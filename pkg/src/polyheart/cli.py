"""Command-line front end.

Subcommands cover the individual capabilities (heart, bounds, polar,
santalo, pde-verify, fourier-check) plus a combined report.  Output is a
versioned JSON document and optionally an SVG figure rendered purely
from that document, so a report file re-renders byte for byte.

Exit codes: 0 success, 1 invalid input, 2 internal inconsistency
(including verification checks that come back false).  Errors go to
stderr as one JSON object per failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bodies import parse_body_arg
from .bounds import (
    BodyStats,
    distance_bound_starshaped,
    distance_bounds_convex,
    distance_bounds_general,
    eigenvalue_upper_bounds,
    minimal_reciprocal_support_integral,
)
from .errors import (
    DenominatorTooSmall,
    InconsistentHeart,
    NoConvergence,
    PolyheartError,
    QuadratureUnstable,
)
from .folding import chord_midpoint, heart_ball_radius, heart_region
from .fourier import indicator_transform, midpoint_via_transform
from .geometry import chebyshev_center, shadow_interval
from .pde import full_verify
from .polar import polar_area_eigen_check, polar_area_lower_check, polar_polygon, santalo_point
from .svgout import render_report_svg

_INCONSISTENCY = (InconsistentHeart, NoConvergence, QuadratureUnstable, DenominatorTooSmall)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _body_section(poly, spec) -> dict:
    cheb = chebyshev_center(poly)
    return {
        "spec": spec,
        "vertices": poly.vertices.tolist(),
        "area": poly.area,
        "perimeter": poly.perimeter,
        "diameter": poly.diameter,
        "centroid": poly.centroid.tolist(),
        "incenter": cheb.center.tolist(),
        "inradius": cheb.radius,
    }


def _heart_section(poly, n_dirs: int):
    heart, profile = heart_region(poly, n_dirs)
    center, radius = heart_ball_radius(poly, profile, heart)
    section = {
        "kind": heart.kind,
        "vertices": heart.vertices.tolist(),
        "ball_center": center.tolist(),
        "ball_radius": radius,
        "n_dirs": n_dirs,
        "offset_min": float(profile.values.min()),
        "offset_max": float(profile.values.max()),
    }
    return heart, section


def _bounds_section(poly, lam1_numeric: float | None = None) -> dict:
    stats = BodyStats.from_polygon(poly)
    upper = eigenvalue_upper_bounds(stats, numeric=lam1_numeric)
    lam1 = upper.best
    general = distance_bounds_general(stats, lam1)
    convex = distance_bounds_convex(stats)
    w_val, w_center = minimal_reciprocal_support_integral(poly, return_center=True)
    star = distance_bound_starshaped(poly)
    return {
        "stats": {
            "area": stats.area,
            "perimeter": stats.perimeter,
            "diameter": stats.diameter,
            "inradius": stats.inradius,
        },
        "eigenvalue_upper": {
            "perimeter_over_inradius": upper.perimeter_over_inradius,
            "monotone": upper.monotone,
            "ball": upper.ball,
            "numeric": upper.numeric,
            "best": upper.best,
        },
        "lam1_used": lam1,
        "distance_general": {"precise": general.precise, "coarse": general.coarse},
        "distance_convex": {
            "precise": convex.precise,
            "coarse": convex.coarse,
            "improved": convex.improved,
        },
        "distance_star": star,
        "reciprocal_support": {"min_value": w_val, "minimizer": w_center.tolist()},
    }


def _polar_section(poly, tol: float, pde: dict | None = None) -> dict:
    sant = santalo_point(poly, tol=max(tol, 1e-12))
    body_at_sant = polar_polygon(poly, sant)
    lower = polar_area_lower_check(poly, poly.centroid)
    section = {
        "santalo": sant.tolist(),
        "polar_area_at_santalo": body_at_sant.body.area,
        "polar_area_at_centroid": polar_polygon(poly, poly.centroid).body.area,
        "lower_check": {"lhs": lower.lhs, "rhs": lower.rhs, "ok": lower.ok},
    }
    if pde is not None:
        eig = polar_area_eigen_check(poly, pde["hot_spot_limit"], pde["eigenvalue"])
        section["eigen_check"] = {"lhs": eig.lhs, "rhs": eig.rhs, "ok": eig.ok}
    return section


def _pde_section(poly, heart, args) -> dict:
    h = args.h
    if h is None:
        h = chebyshev_center(poly).radius / 50.0
    rep = full_verify(poly, h=h, heart=heart, n_dirs=args.dirs, t_end=args.tmax)
    return {
        "h": h,
        "n_nodes": rep.grid.interior_count,
        "eigenvalue": rep.eigen.eigenvalue,
        "residual": rep.eigen.residual,
        "hot_spot_limit": rep.eigen.location.tolist(),
        "track": [
            {"time": s.time, "location": s.location.tolist(), "peak": s.peak}
            for s in rep.samples
        ],
        "membership": {
            "ok": rep.membership.ok,
            "worst_gap": rep.membership.worst_gap,
            "slack": rep.membership.slack,
            "n_checked": rep.membership.n_checked,
        },
        "varadhan": {
            "ok": rep.varadhan.ok,
            "early_distance": rep.varadhan.early_distance,
            "inradius": rep.varadhan.inradius,
            "early_rel_err": rep.varadhan.early_rel_err,
            "late_gap": rep.varadhan.late_gap,
            "late_slack": rep.varadhan.late_slack,
        },
        "decay": {
            "ok": rep.decay.ok,
            "fitted_rate": rep.decay.fitted_rate,
            "eigenvalue": rep.decay.eigenvalue,
            "rel_err": rep.decay.rel_err,
        },
        "ok": rep.ok,
    }


def _fourier_section(poly, cutoff: float, seed: int) -> dict:
    area = poly.area
    t0 = complex(indicator_transform(poly, np.zeros(2)))
    rng = np.random.default_rng(seed)
    dirs = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    ang = rng.uniform(0.0, 2.0 * np.pi)
    dirs.append(np.array([np.cos(ang), np.sin(ang)]))
    checks = []
    for w in dirs:
        lo, hi = shadow_interval(poly, w)
        for frac in (0.35, 0.5, 0.65):
            y = lo + frac * (hi - lo)
            direct = chord_midpoint(poly, w, y)
            recon = midpoint_via_transform(poly, w, y, cutoff=cutoff)
            checks.append(
                {
                    "omega": w.tolist(),
                    "y": y,
                    "fourier": recon,
                    "direct": direct,
                    "abs_err": abs(recon - direct),
                }
            )
    return {
        "cutoff": cutoff,
        "area_check": {"transform": t0.real, "area": area, "abs_err": abs(t0 - area)},
        "midpoint_checks": checks,
        "max_abs_err": max(c["abs_err"] for c in checks),
    }


def _cmd_heart(poly, spec, args):
    heart, hsec = _heart_section(poly, args.dirs)
    report = {"body": _body_section(poly, spec), "heart": hsec}
    lines = [
        f"heart kind: {hsec['kind']}",
        f"heart vertices: {hsec['vertices']}",
        f"ball radius around centroid: {hsec['ball_radius']:.9g}",
    ]
    return report, lines, True


def _cmd_bounds(poly, spec, args):
    sec = _bounds_section(poly)
    report = {"body": _body_section(poly, spec), "bounds": sec}
    lines = [
        f"lambda1 upper (best): {sec['lam1_used']:.9g}",
        f"distance bounds: general precise {sec['distance_general']['precise']:.9g}, "
        f"coarse {sec['distance_general']['coarse']:.9g}",
        f"convex precise {sec['distance_convex']['precise']:.9g}, "
        f"coarse {sec['distance_convex']['coarse']:.9g}, "
        f"improved {sec['distance_convex']['improved']:.9g}",
        f"star-shaped {sec['distance_star']:.9g}",
    ]
    return report, lines, True


def _cmd_polar(poly, spec, args):
    center = poly.centroid
    pb = polar_polygon(poly, center)
    lower = polar_area_lower_check(poly, center)
    report = {
        "body": _body_section(poly, spec),
        "polar": {
            "center": center.tolist(),
            "polar_vertices": pb.body.vertices.tolist(),
            "polar_area": pb.body.area,
            "lower_check": {"lhs": lower.lhs, "rhs": lower.rhs, "ok": lower.ok},
        },
    }
    lines = [
        f"polar area at centroid: {pb.body.area:.9g}",
        f"area product check: lhs {lower.lhs:.9g} >= rhs {lower.rhs:.9g} "
        f"({'ok' if lower.ok else 'VIOLATED'})",
    ]
    return report, lines, lower.ok


def _cmd_santalo(poly, spec, args):
    sec = _polar_section(poly, args.tol)
    report = {"body": _body_section(poly, spec), "polar": sec}
    lines = [
        f"santalo point: {sec['santalo']}",
        f"polar area there: {sec['polar_area_at_santalo']:.9g}",
    ]
    return report, lines, sec["lower_check"]["ok"]


def _cmd_pde_verify(poly, spec, args):
    heart, hsec = _heart_section(poly, args.dirs)
    pde = _pde_section(poly, heart, args)
    report = {"body": _body_section(poly, spec), "heart": hsec, "pde": pde}
    lines = [
        f"lambda1 numeric: {pde['eigenvalue']:.9g} (residual {pde['residual']:.3g})",
        f"hot spot limit: {pde['hot_spot_limit']}",
        f"membership: {'ok' if pde['membership']['ok'] else 'FAILED'} "
        f"(worst gap {pde['membership']['worst_gap']:.3g}, slack {pde['membership']['slack']:.3g})",
        f"varadhan: {'ok' if pde['varadhan']['ok'] else 'FAILED'} "
        f"(early rel err {pde['varadhan']['early_rel_err']:.3g}, late gap {pde['varadhan']['late_gap']:.3g})",
        f"decay: {'ok' if pde['decay']['ok'] else 'FAILED'} "
        f"(rate {pde['decay']['fitted_rate']:.6g} vs {pde['decay']['eigenvalue']:.6g})",
    ]
    return report, lines, pde["ok"]


def _cmd_fourier_check(poly, spec, args):
    sec = _fourier_section(poly, args.fourier_cutoff, args.seed)
    report = {"body": _body_section(poly, spec), "fourier": sec}
    ok = sec["area_check"]["abs_err"] <= 1e-9 * max(1.0, poly.area)
    lines = [
        f"transform at zero: {sec['area_check']['transform']:.12g} vs area {poly.area:.12g}",
        f"max midpoint reconstruction error: {sec['max_abs_err']:.3g}",
    ]
    return report, lines, ok


def _cmd_report(poly, spec, args):
    heart, hsec = _heart_section(poly, args.dirs)
    pde = _pde_section(poly, heart, args)
    report = {
        "body": _body_section(poly, spec),
        "heart": hsec,
        "bounds": _bounds_section(poly, lam1_numeric=pde["eigenvalue"]),
        "polar": _polar_section(poly, args.tol, pde=pde),
        "pde": pde,
        "fourier": _fourier_section(poly, args.fourier_cutoff, args.seed),
    }
    checks_ok = (
        pde["ok"]
        and report["polar"]["lower_check"]["ok"]
        and report["polar"]["eigen_check"]["ok"]
    )
    lines = [
        f"heart kind: {hsec['kind']}, ball radius {hsec['ball_radius']:.9g}",
        f"lambda1 numeric: {pde['eigenvalue']:.9g}",
        f"verification: {'ok' if checks_ok else 'FAILED'}",
    ]
    return report, lines, checks_ok


_COMMANDS = {
    "heart": _cmd_heart,
    "bounds": _cmd_bounds,
    "polar": _cmd_polar,
    "santalo": _cmd_santalo,
    "pde-verify": _cmd_pde_verify,
    "fourier-check": _cmd_fourier_check,
    "report": _cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyheart",
        description="Hot-spot confinement toolkit for convex polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("--body", required=True,
                       help="generator shorthand (square, rectangle:2,1, halfdisc:1,0,64, "
                            "triangle:0,0,1,0,0,1, regular_ngon:6,1, ellipse_approx:2,1,256) "
                            "or a path to a JSON body file")
        p.add_argument("--dirs", type=int, default=720, help="direction count for the heart sweep")
        p.add_argument("--tol", type=float, default=1e-9, help="generic tolerance")
        p.add_argument("--h", type=float, default=None, help="grid spacing (default inradius/50)")
        p.add_argument("--tmax", type=float, default=None, help="heat-flow horizon")
        p.add_argument("--fourier-cutoff", type=float, default=400.0,
                       help="frequency cutoff for transform inversion")
        p.add_argument("--json", metavar="PATH", default=None, help="write the report JSON here")
        p.add_argument("--svg", metavar="PATH", default=None, help="write an SVG figure here")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    return parser


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": message}}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        poly, spec = parse_body_arg(args.body)
    except (PolyheartError, ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(1, type(exc).__name__, str(exc))
    try:
        report, lines, ok = _COMMANDS[args.command](poly, spec, args)
    except _INCONSISTENCY as exc:
        return _fail(2, type(exc).__name__, str(exc))
    except (PolyheartError, ValueError) as exc:
        return _fail(1, type(exc).__name__, str(exc))
    report = {"schema": 1, "tool": {"name": "polyheart", "version": __version__},
              "command": args.command, **_jsonable(report)}
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_report_svg(report))
    for line in lines:
        print(line)
    if not ok:
        return _fail(2, "VerificationFailed", "one or more consistency checks failed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
