"""``busemann`` command line.

Exit status: 0 success or pass, 1 a check failed (witness on stdout),
2 usage or invalid input, 3 numeric failure.  Results go to stdout unless
``--out`` names a file; relative ``--out`` paths resolve against
``$BUSEMANN_OUTPUT_DIR`` when it is set.  Files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__, embedding, homogeneity, norms
from .axioms import (ULGHParams, Verdict, check_ball_convexity, check_starlike, check_ulgh, extendibility_suite,
                     menger_suite, merge, params_from_region, region_inradius, ulgh_region, unique_extension_suite)
from .errors import BusemannError, ConvergenceError, RangeError, StageError
from .halfplane import export, ops, spheres
from .halfplane.geometry import GenericLevelSet, StadiumParabola, Vertical
from .space import HalfPlaneSpace, SpaceHandle, space_from_name

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
OUTPUT_ENV = "BUSEMANN_OUTPUT_DIR"
CSV_COMMANDS = {"geodesic", "sphere", "norm"}

_PAIR = re.compile(r"^-?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?,")


class UsageError(Exception):
    pass


def point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError(f"non-finite point {text!r}")
    return (x, y)


def positive(text: str) -> float:
    v = float(text)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def fraction(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a number in [0, 1], got {text!r}")
    return v


def count(lo: int):
    def parse(text: str) -> int:
        v = int(text)
        if v < lo:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {text!r}")
        return v
    return parse


# -- output -------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=1) + "\n"


def resolve_out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(args, text: str, stdout_always: bool = False) -> None:
    if args.out:
        write_atomic(resolve_out(args.out), text)
    if stdout_always or not args.out:
        sys.stdout.write(text)


def _fmt(args, default="json"):
    fmt = args.output or default
    if fmt == "csv" and args.command not in CSV_COMMANDS:
        raise UsageError(f"--output csv is only available for {', '.join(sorted(CSV_COMMANDS))}")
    return fmt


def _report_exit(verdict) -> int:
    return EXIT_FAIL if verdict is Verdict.FAIL else EXIT_OK


# -- commands -----------------------------------------------------------------


def cmd_dist(args, space: SpaceHandle) -> int:
    fmt = args.output
    if fmt == "csv":
        _fmt(args)
    d = space.distance(space.point(args.p), space.point(args.q)) if tuple(args.p) != tuple(args.q) else 0.0
    if fmt == "json":
        emit(args, dumps({"p": args.p, "q": args.q, "distance": d, "space": space.describe()}))
    else:
        emit(args, f"{d!r}\n")
    return EXIT_OK


def _geodesic_polyline(space, g, p, q, n):
    if isinstance(g, Vertical):
        lo, hi = min(p[1], q[1]), max(p[1], q[1])
        ys = np.geomspace(lo / 2.0, hi * 2.0, n)
        return np.column_stack([np.full(n, g.a), ys])
    if isinstance(g, StadiumParabola):
        return ops.parabola_polyline(g, n)
    if isinstance(g, GenericLevelSet):
        return ops.generic_geodesic_trace(space.norm, g.a, g.k, max(n, 32)).polyline
    # flat-plane line
    t = np.linspace(-1.0, 2.0, n)
    return np.array([space.point_at_arc(g, p, s * space.distance(p, q)) for s in t])


def cmd_geodesic(args, space) -> int:
    fmt = _fmt(args)
    p, q = space.point(args.p), space.point(args.q)
    g = space.geodesic_through(p, q)
    poly = _geodesic_polyline(space, g, p, q, args.n)
    if fmt == "csv":
        emit(args, export.polyline_csv(poly, "geodesic", [f"space: {space.name}", f"through: {p[0]!r},{p[1]!r} {q[0]!r},{q[1]!r}"]))
        return EXIT_OK
    if isinstance(space, HalfPlaneSpace):
        res = [ops.residual(space.norm, g, p), ops.residual(space.norm, g, q)]
        rep = export.geodesic_report(g, args.K, res)
        rep["polyline"] = poly.tolist()
    else:
        rep = {"variant": "Line", "base": list(g.base), "direction": list(g.u), "K": args.K, "residuals": [0.0, 0.0],
               "polyline": poly.tolist()}
    rep["distance"] = space.distance(p, q)
    emit(args, dumps(rep))
    return EXIT_OK


def _trace(args, space):
    if not isinstance(space, HalfPlaneSpace):
        raise UsageError("sphere traces need a half-plane space")
    return spheres.sphere_trace(space.norm, space.point(args.center), args.K, args.n)


def cmd_sphere(args, space) -> int:
    fmt = _fmt(args)
    tr = _trace(args, space)
    if fmt == "csv":
        emit(args, export.trace_csv(tr))
        return EXIT_OK
    emit(args, dumps({
        "center": tr.center, "K": tr.K, "lambda0": tr.lambda0, "poles": tr.poles, "rightmost": tr.rightmost(),
        "max_residual": tr.max_residual, "arcs": {k: a.points for k, a in tr.arcs.items()},
    }))
    return EXIT_OK


def cmd_tangents(args, space) -> int:
    _fmt(args)
    tr = _trace(args, space)
    out = {}
    for label, arc in tr.arcs.items():
        rows = []
        for pnt in arc.points:
            try:
                s = spheres.sphere_tangent_slope(tr, label.split("_")[0], pnt)
            except BusemannError:
                continue  # the two poles are shared end points with no one-sided arc slope
            rows.append({"point": pnt, "dydx": s.dydx, "dxdy": s.dxdy, "vertical": bool(s.vertical)})
        out[label] = rows
    emit(args, dumps({"center": tr.center, "K": tr.K, "lambda0": tr.lambda0, "arcs": out}))
    return EXIT_OK


def cmd_check_axioms(args, space) -> int:
    _fmt(args)
    kw = dict(n=args.n, seed=args.seed, center=args.center, radius=args.radius)
    reps = [menger_suite(space, **kw), extendibility_suite(space, **kw), unique_extension_suite(space, **kw)]
    total = merge("axioms", reps, args.seed, {"space": space.describe()})
    body = total.to_dict()
    body["reports"] = {r.name: r.to_dict() for r in reps}
    emit(args, dumps(body), stdout_always=True)
    return _report_exit(total.verdict)


def cmd_check_starlike(args, space) -> int:
    _fmt(args)
    rep = check_starlike(space, space.point(args.center), args.eps, space.point(args.viewpoint or args.center),
                         args.n, args.m, seed=args.seed)
    emit(args, dumps(rep.to_dict()), stdout_always=True)
    return _report_exit(rep.verdict)


def cmd_check_convexity(args, space) -> int:
    _fmt(args)
    rep = check_ball_convexity(space, space.point(args.center), args.K, args.trials, args.m, seed=args.seed)
    emit(args, dumps(rep.to_dict()), stdout_always=True)
    return _report_exit(rep.verdict)


def _explicit_params(args, space):
    vals = (args.delta, args.eps1, args.eps2, args.r)
    if all(v is None for v in vals):
        return None
    if any(v is None for v in vals):
        raise UsageError("--delta, --eps1, --eps2 and --r must be given together")
    return ULGHParams(space.point(args.c0), args.r, args.delta, args.eps1, args.eps2)


def _region_params(args, space):
    params = _explicit_params(args, space)
    if params is not None:
        return params
    if not (isinstance(space, HalfPlaneSpace) and space.norm.kind is norms.NormKind.STADIUM):
        raise UsageError("derived parameters need the stadium space; pass --delta --eps1 --eps2 --r")
    return params_from_region(space, args.K, c0=args.c0)


def cmd_ulgh(args, space) -> int:
    _fmt(args)
    body = {}
    stadium_like = isinstance(space, HalfPlaneSpace) and space.norm.kind is norms.NormKind.STADIUM
    if stadium_like:
        reg = ulgh_region(args.K)
        body["region"] = reg.to_dict()
        body["region"]["inradius"] = region_inradius(space, reg, args.c0)
    params = _region_params(args, space)
    body["params"] = params.to_dict()
    code = EXIT_OK
    if not args.no_check:
        rep = check_ulgh(space, params, grid=args.grid, n=args.n, m=args.m, seed=args.seed)
        body["report"] = rep.to_dict()
        code = _report_exit(rep.verdict)
    emit(args, dumps(body), stdout_always=True)
    return code


def _times(k):
    return np.linspace(0.0, 1.0, k)


def cmd_isotopy(args, space) -> int:
    _fmt(args)
    ts = _times(args.frames)
    rng = np.random.default_rng(args.seed)
    c = space.point(args.center)
    if args.kind == "sphere":
        phis = 2.0 * np.pi * np.arange(args.samples) / args.samples
        samples = [space.shoot(c, f, args.eps) for f in phis]
        # a quarter-turn path from the first sample
        path_pts = [space.shoot(c, f, args.eps) for f in np.linspace(0.0, args.turn * 2.0 * np.pi, 17)]
        path = homogeneity.SpherePath(space, c, args.eps, path_pts)
        fn = lambda t, p: homogeneity.sphere_isotopy(space, c, args.eps, path, t, p)
        fr = homogeneity.frames(fn, ts, samples)
        extra = {"path": [path(float(t)) for t in ts]}
    else:
        target = space.point(args.target)
        samples = [c, *space.random_in_ball(rng, c, args.eps, args.samples - 1)]
        if args.kind == "ball":
            fn = lambda t, p: homogeneity.ball_isotopy(space, c, args.eps, target, p, t)
        else:
            fn = lambda t, p: homogeneity.space_homeomorphism(space, c, target, p, t)
        fr = homogeneity.frames(fn, ts, samples)
        extra = {"target": target}
    body = {"kind": args.kind, "center": c, "eps": args.eps, "frames": [f.to_dict() for f in fr], **extra}
    emit(args, dumps(body))
    return EXIT_OK


def cmd_retract(args, space) -> int:
    _fmt(args)
    c = space.point(args.center)
    removed = space.shoot(c, args.removed_angle, args.r)
    phis = args.removed_angle + 2.0 * np.pi * (np.arange(1, args.samples + 1)) / (args.samples + 1)
    samples = [space.shoot(c, f, args.r) for f in phis]
    fn = lambda t, p: homogeneity.sphere_retract_flow(space, c, args.r, removed, p, t)
    fr = homogeneity.frames(fn, _times(args.frames), samples)
    body = {"center": c, "r": args.r, "removed": removed, "antipode": homogeneity.antipode(space, c, removed),
            "frames": [f.to_dict() for f in fr]}
    emit(args, dumps(body))
    return EXIT_OK


def cmd_embed(args, space) -> int:
    _fmt(args)
    params = _region_params(args, space)
    cfg = embedding.derive_embedding_params(params, args.eps0_fraction)
    res = embedding.build_net(space, cfg, pool=args.pool, seed=args.seed)
    body = res.to_dict()
    body["coverage"] = res.coverage
    body["params"] = params.to_dict()
    body["r1"], body["eps1p"] = cfg.r1, cfg.eps1p
    code = EXIT_OK
    if args.pairs:
        rep = embedding.injectivity_report(space, res, args.pairs, args.separation, args.seed)
        body["injectivity"] = rep.to_dict()
        code = _report_exit(rep.verdict)
    emit(args, dumps(body))
    return code


def cmd_norm(args, space) -> int:
    fmt = _fmt(args)
    model = space.norm if isinstance(space, HalfPlaneSpace) else norms.euclidean()
    if args.eval is not None:
        if fmt == "csv":
            raise UsageError("--eval produces JSON only")
        v = args.eval
        emit(args, dumps({"v": v, "F": model(v), "F_dual": norms.dual_norm_eval(model.dual, v), "kind": model.kind.value}))
        return EXIT_OK
    if args.curve == "dual":
        pts = norms.dual_unit_curve(model.dual, args.n)
    elif model.kind is norms.NormKind.SAMPLED:
        pts = model.indicatrix
    elif model.kind is norms.NormKind.STADIUM:
        pts = norms.sample_stadium_indicatrix(args.n)
    else:
        t = 2.0 * np.pi * np.arange(args.n) / args.n
        pts = np.column_stack([np.cos(t), np.sin(t)])
    label = "dual_unit_curve" if args.curve == "dual" else "indicatrix"
    if fmt == "csv":
        emit(args, export.polyline_csv(pts, label, [f"norm: {model.kind.value}"]))
    else:
        emit(args, dumps({"kind": model.kind.value, "curve": label, "points": pts}))
    return EXIT_OK


COMMANDS = {
    "dist": cmd_dist, "geodesic": cmd_geodesic, "sphere": cmd_sphere, "tangents": cmd_tangents,
    "check-axioms": cmd_check_axioms, "check-starlike": cmd_check_starlike, "check-convexity": cmd_check_convexity,
    "ulgh": cmd_ulgh, "isotopy": cmd_isotopy, "retract": cmd_retract, "embed": cmd_embed, "norm": cmd_norm,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", default="stadium", help="stadium, euclidean, hyperbolic or indicatrix:<path>")
    common.add_argument("--output", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="write the result to this file")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="busemann", description="Geometry and axiom checks for quasihyperbolic planes.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("dist", "distance between two points")
    s.add_argument("--p", type=point, required=True)
    s.add_argument("--q", type=point, required=True)

    s = add("geodesic", "the geodesic through two points")
    s.add_argument("--p", type=point, required=True)
    s.add_argument("--q", type=point, required=True)
    s.add_argument("--n", type=count(8), default=201)
    s.add_argument("--K", type=float, default=None, help="recorded in the JSON report")

    for name, help_ in (("sphere", "trace a stadium sphere"), ("tangents", "arc slopes along a traced sphere")):
        s = add(name, help_)
        s.add_argument("--center", type=point, default=(0.0, 1.0))
        s.add_argument("--K", type=positive, default=1.0)
        s.add_argument("--n", type=count(16), default=96)

    s = add("check-axioms", "Menger convexity, extendibility and unique extension")
    s.add_argument("--n", type=count(1), default=500)
    s.add_argument("--center", type=point, default=(0.0, 1.0))
    s.add_argument("--radius", type=positive, default=1.0)

    s = add("check-starlike", "starlikeness of a ball from a viewpoint")
    s.add_argument("--center", type=point, default=(0.0, 1.0))
    s.add_argument("--eps", type=positive, default=0.5)
    s.add_argument("--viewpoint", type=point, default=None)
    s.add_argument("--n", type=count(8), default=360)
    s.add_argument("--m", type=count(4), default=48)

    s = add("check-convexity", "search for a chord leaving a ball")
    s.add_argument("--center", type=point, default=(0.0, 1.0))
    s.add_argument("--K", type=positive, default=0.5)
    s.add_argument("--trials", type=count(0), default=400)
    s.add_argument("--m", type=count(4), default=64)

    for name, help_ in (("ulgh", "uniform local G-homogeneity region and check"), ("embed", "landmark embedding")):
        s = add(name, help_)
        s.add_argument("--K", type=positive, default=0.5)
        s.add_argument("--c0", type=point, default=(0.0, 1.0))
        for flag in ("--delta", "--eps1", "--eps2", "--r"):
            s.add_argument(flag, type=positive, default=None)
        if name == "ulgh":
            s.add_argument("--grid", type=count(1), default=3)
            s.add_argument("--n", type=count(8), default=120)
            s.add_argument("--m", type=count(4), default=32)
            s.add_argument("--no-check", action="store_true")
        else:
            s.add_argument("--pool", type=count(1000), default=1024)
            s.add_argument("--eps0-fraction", type=float, default=0.5)
            s.add_argument("--pairs", type=count(0), default=500)
            s.add_argument("--separation", type=positive, default=1e-3)

    s = add("isotopy", "frames of the homogeneity isotopies")
    s.add_argument("--kind", choices=("sphere", "ball", "space"), default="sphere")
    s.add_argument("--center", type=point, default=(0.0, 1.0))
    s.add_argument("--eps", type=positive, default=0.5, help="sphere or ball radius")
    s.add_argument("--target", type=point, default=(0.1, 1.1), help="image of the centre (ball, space)")
    s.add_argument("--turn", type=fraction, default=0.25, help="sphere path length in turns")
    s.add_argument("--frames", type=count(2), default=33)
    s.add_argument("--samples", type=count(2), default=16)

    s = add("retract", "retraction of a punctured sphere onto the antipode")
    s.add_argument("--center", type=point, default=(0.0, 1.0))
    s.add_argument("--r", type=positive, default=0.5)
    s.add_argument("--removed-angle", type=float, default=math.pi / 2)
    s.add_argument("--frames", type=count(2), default=17)
    s.add_argument("--samples", type=count(1), default=16)

    s = add("norm", "evaluate a norm or export its unit curves")
    s.add_argument("--eval", type=point, default=None, help="vector at which to evaluate F and F*")
    s.add_argument("--curve", choices=("indicatrix", "dual"), default="indicatrix")
    s.add_argument("--n", type=count(8), default=64)
    return ap


def _glue_negative_pairs(argv):
    """``--p -0.75,2`` -> ``--p=-0.75,2`` so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and _PAIR.match(argv[i + 1]) and argv[i + 1][0] == "-":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_negative_pairs(list(sys.argv[1:] if argv is None else argv))
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        space = space_from_name(args.space)
        return COMMANDS[args.command](args, space)
    except UsageError as exc:
        print(f"busemann: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, StageError, RangeError, ArithmeticError) as exc:
        print(f"busemann: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BusemannError, ValueError, OSError) as exc:
        print(f"busemann: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
