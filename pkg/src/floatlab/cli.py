"""floatlab command line.

Usage::

    floatlab ulam-test --body disk.json --delta 0.5
    floatlab theorem2 --body cube.json --assert-ball
    floatlab metronoid --body square.json --delta 0.5 --format csv

Every command reads a JSON body spec, runs one toolkit operation and
writes a report (JSON) or its sample table (CSV).  Exit status is 0 on
success, 2 when ``--assert`` is given and the verdict is negative, and 1
on errors, which are reported as a JSON object on stderr.
"""

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import chordchain, floating, metronoid, radon
from .errors import FloatlabError, ParseError
from .io import load_body, make_report, write_csv, write_report
from .shapes import default_directions

DEFAULT_TOL_VOLUME = 1e-12


def _directions(K, args):
    if args.u is not None:
        u = np.array(args.u, dtype=float)
        if len(u) != K.dim:
            raise ParseError(f"--u needs {K.dim} components", field="u")
        return (u / np.linalg.norm(u))[None, :]
    return default_directions(K.dim, args.directions)


def _vec_cols(prefix, d):
    return [f"{prefix}{i + 1}" for i in range(d)]


def _stats(values):
    v = np.asarray(values, dtype=float)
    return {"min": float(v.min()), "max": float(v.max()), "mean": float(v.mean())}


def cmd_cut(K, args):
    U = _directions(K, args)
    t = floating.cut_offsets(K, U, args.delta, rel_tol=args.tol_volume)
    rows = [list(u) + [ti] for u, ti in zip(U, t)]
    return _vec_cols("u", K.dim) + ["t"], rows, _stats(t), None


def cmd_cap(K, args):
    U = _directions(K, args)
    recs = floating.cap_records(K, U, args.delta, rel_tol=args.tol_volume)
    measure = floating.body_measure(K)
    rows = [list(r.u) + [r.offset, r.cap_moments.measure / measure] + list(r.cap_centroid) for r in recs]
    cols = _vec_cols("u", K.dim) + ["t", "fraction"] + _vec_cols("X", K.dim)
    summary = _stats([r[K.dim + 1] for r in rows])
    return cols, rows, summary, None


def cmd_floating_body(K, args):
    U = default_directions(K.dim, args.directions)
    fb = floating.floating_body(K, args.delta, U)
    rows = [list(v) for v in fb.body.vertices]
    summary = {"kind": fb.kind, "measure": fb.measure,
               "diameter": float(fb.body.diameter) if not fb.body.is_empty else 0.0,
               "verdict": fb.kind != "empty"}
    return _vec_cols("x", K.dim), rows, summary, summary["verdict"]


def cmd_critical_delta(K, args):
    U = default_directions(K.dim, args.directions)
    tol = args.threshold if args.threshold is not None else 1e-4
    dc = floating.critical_delta(K, U, tol)
    helly = 1.0 / (K.dim + 1)
    summary = {"delta_c": dc, "helly_bound": helly, "tol": tol, "verdict": dc > helly - tol}
    return ["delta_c"], [[dc]], summary, summary["verdict"]


def cmd_dupin(K, args):
    if args.u is not None:
        U = _directions(K, args)
    else:
        U = default_directions(K.dim, args.probes)
    res = [floating.dupin_tangency_residual(K, args.delta, u) for u in U]
    threshold = args.threshold if args.threshold is not None else 1e-3
    rows = [list(u) + [r] for u, r in zip(U, res)]
    summary = dict(_stats(res), threshold=threshold, verdict=max(res) < threshold)
    return _vec_cols("u", K.dim) + ["residual"], rows, summary, summary["verdict"]


def cmd_metronoid(K, args):
    U = default_directions(K.dim, args.directions)
    recs = floating.cap_records(K, U, args.delta, rel_tol=args.tol_volume)
    samples = metronoid.metronoid_boundary(K, args.delta, records=recs)
    X = np.array([s.point for s in samples])
    radius = np.linalg.norm(X - X.mean(axis=0), axis=1)
    summary = dict(_stats(radius))
    if K.dim == 2:
        phi = np.mod(np.arctan2(U[:, 1], U[:, 0]), 2.0 * np.pi)
        rows = [[p] + list(s.u) + list(s.point) for p, s in zip(phi, samples)]
        cols = ["phi"] + _vec_cols("u", 2) + _vec_cols("X", 2)
        if len(samples) >= 16:
            summary["gauss_map_residual"] = metronoid.gauss_map_residual(samples)
    else:
        rows = [list(s.u) + list(s.point) for s in samples]
        cols = _vec_cols("u", 3) + _vec_cols("X", 3)
    return cols, rows, summary, None


def cmd_curvature(K, args):
    if K.dim != 2:
        raise ValueError("curvature needs a planar body")
    phi, R, speed = metronoid.curvature_profile(K, args.delta, args.directions or 2048)
    rel = np.abs(speed - R) / R
    threshold = args.threshold if args.threshold is not None else 1e-2
    summary = dict(_stats(R), max_relative_gap=float(rel.max()), threshold=threshold,
                   verdict=bool(rel.max() < threshold))
    rows = [[p, r, s] for p, r, s in zip(phi, R, speed)]
    return ["phi", "radius", "speed"], rows, summary, summary["verdict"]


def cmd_ulam_test(K, args):
    U = default_directions(K.dim, args.directions)
    recs = floating.cap_records(K, U, args.delta, rel_tol=args.tol_volume)
    threshold = args.threshold if args.threshold is not None else metronoid.ULAM_THRESHOLD
    rep = metronoid.ulam_report(K, args.delta, tangents_per_direction=args.tangents,
                                threshold=threshold, records=recs)
    rows = [list(u) + list(v) + [m] for u, v, m in rep.samples]
    summary = rep.summary()
    summary["threshold"] = threshold
    return _vec_cols("u", K.dim) + _vec_cols("v", K.dim) + ["m"], rows, summary, rep.verdict


def cmd_radon(K, args):
    if K.dim != 3:
        raise ValueError("radon needs a 3D body")
    U = _directions(K, args)
    r4 = radon.radial_function(K) ** 4
    vals = [radon.spherical_radon(r4, u) for u in U]
    return _vec_cols("u", 3) + ["radon_r4"], [list(u) + [v] for u, v in zip(U, vals)], _stats(vals), None


def cmd_theorem2(K, args):
    U = default_directions(3, args.directions)
    threshold = args.threshold if args.threshold is not None else radon.BALL_THRESHOLD
    rep = radon.theorem2_report(K, U, args.tangents, threshold=threshold)
    rows = [list(u) + list(v) + [c] for u, v, c in rep.samples]
    summary = rep.summary()
    summary["threshold"] = threshold
    return _vec_cols("u", 3) + _vec_cols("v", 3) + ["C"], rows, summary, rep.verdict


def cmd_chord_chain(K, args):
    if K.dim != 2:
        raise ValueError("chord-chain needs a planar body")
    p0 = chordchain.boundary_point(K, args.start)
    st = chordchain.chain_run(K, args.radius, p0, args.steps, args.orientation)
    radii = st.radii
    defects = [0.0] + list(st.defects)
    rows = [[k, p[0], p[1], r, d] for k, (p, r, d) in enumerate(zip(st.points, radii, defects))]
    threshold = args.threshold if args.threshold is not None else 1e-9
    summary = {"closure_defect": float(st.closure_defect), "radius_spread": float(np.ptp(radii)),
               "period": chordchain.period(st), "angular_gap": chordchain.angular_gap(st.angles),
               "threshold": threshold, "verdict": bool(st.closure_defect < threshold)}
    return ["step", "x", "y", "radius", "defect"], rows, summary, summary["verdict"]


COMMANDS = {
    "cut": (cmd_cut, "cut offsets t(u, delta)"),
    "cap": (cmd_cap, "cap fractions and centroids"),
    "floating-body": (cmd_floating_body, "vertices of the convex floating body"),
    "critical-delta": (cmd_critical_delta, "largest delta with a non-empty floating body"),
    "dupin": (cmd_dupin, "Dupin tangency residuals"),
    "metronoid": (cmd_metronoid, "metronoid boundary samples"),
    "curvature": (cmd_curvature, "2D curvature identity of the metronoid"),
    "ulam-test": (cmd_ulam_test, "isotropy functional and Ulam verdict"),
    "radon": (cmd_radon, "spherical Radon transform of r_K^4"),
    "theorem2": (cmd_theorem2, "central-section moments and ball verdict"),
    "chord-chain": (cmd_chord_chain, "chord chain tangent to r S^1"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="floatlab", description="Convex floating bodies and metronoids.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--body", required=True, help="JSON body spec")
        p.add_argument("--delta", type=float, default=0.5)
        p.add_argument("--directions", type=int, default=None, help="direction count")
        p.add_argument("--tangents", type=int, default=metronoid.DEFAULT_TANGENTS)
        p.add_argument("--resolution", type=int, default=None, help="resolution for smooth kinds")
        p.add_argument("--tol-volume", type=float, default=DEFAULT_TOL_VOLUME)
        p.add_argument("--threshold", type=float, default=None, help="verdict threshold")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--assert", "--assert-ball", dest="assert_", action="store_true",
                       help="exit 2 when the verdict is negative")
        p.add_argument("--u", type=float, nargs="+", default=None, help="single direction")
        p.add_argument("--probes", type=int, default=8, help="directions probed by dupin")
        p.add_argument("--radius", type=float, default=1.0, help="chord-chain inner radius")
        p.add_argument("--steps", type=int, default=100)
        p.add_argument("--start", type=float, default=0.0, help="chord-chain start angle")
        p.add_argument("--orientation", type=int, choices=[-1, 1], default=1)
    return parser


def _config(args):
    keys = ["delta", "directions", "tangents", "resolution", "tol_volume", "threshold", "seed", "format"]
    cfg = {k: getattr(args, k) for k in keys}
    if args.command == "chord-chain":
        cfg.update(radius=args.radius, steps=args.steps, start=args.start, orientation=args.orientation)
    if args.u is not None:
        cfg["u"] = args.u
    if args.command == "dupin":
        cfg["probes"] = args.probes
    return cfg


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def run(args):
    """Execute a parsed command; returns the process exit status."""
    K = load_body(args.body, args.resolution, args.seed)
    fn = COMMANDS[args.command][0]
    cols, rows, summary, verdict = fn(K, args)
    with _output(args.out) as fh:
        if args.format == "csv":
            write_csv(cols, rows, fh)
        else:
            write_report(make_report(args.command, _config(args), K, cols, rows, summary), fh)
    if args.assert_ and verdict is False:
        return 2
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (FloatlabError, ValueError, OSError, RuntimeError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err.update(field=exc.field, line=exc.line)
        sys.stderr.write(json.dumps(err) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
