"""Command line interface.

Subcommands mirror the library: complex construction and spectra for
point clouds (rips, betti, laplacian), threshold sweeps with delimited
output and a rendered figure (curve, harmonic-track), combinatorial
inputs (hypergraph, digraph, hyperdigraph), and a self-contained demo
on bundled molecular data.  All numeric output uses a fixed %.10g
format; failures print a single "error: <category>: <message>" line to
stderr and exit nonzero.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complexes import betti_numbers, rips_complex, spectral_report
from .digraphs import path_betti, path_laplacian
from .hyperdigraphs import hyperdigraph_betti, hyperdigraph_laplacian
from .hypergraphs import (
    embedded_betti,
    hypergraph_laplacian,
    two_color_rips_hypergraph,
)
from .io import (
    CurveRecord,
    InputError,
    ParseError,
    emit_curves,
    fmt,
    format_generators,
    parse_combinatorial,
    parse_point_cloud,
)
from .linalg import Tolerance
from .persistence import (
    betti_curve,
    build_filtration,
    spectral_gap_curve,
    track_harmonics,
)

DATA_DIR = Path(__file__).parent / "data"


@dataclass
class RunConfig:
    """Resolved options of one CLI invocation.

    Thresholds are already scaled (a radius counts double) and, for
    sweep commands, expanded into a strictly increasing nonempty list.
    """

    command: str
    input: str = None
    output: str = None
    format: str = "csv"
    tol: Tolerance = field(default_factory=Tolerance)
    max_dim: int = 2
    closed_threshold: bool = False
    scale: str = "distance"
    threshold: float = None
    thresholds: list = None
    dim: int = None
    max_len: int = 3
    two_color: bool = False


def _resolve_thresholds(args, factor):
    """Thresholds from --thresholds or --range, scaled, in given order."""
    has_list = getattr(args, "thresholds", None) is not None
    has_range = getattr(args, "range", None) is not None
    if has_list == has_range:
        raise InputError("give exactly one of --thresholds or --range")
    if has_list:
        try:
            ts = [float(x) for x in args.thresholds.split(",") if x.strip()]
        except ValueError:
            raise InputError("bad threshold list %r" % args.thresholds)
    else:
        parts = args.range.split(":")
        if len(parts) != 3:
            raise InputError("--range needs start:stop:step")
        try:
            start, stop, step = (float(x) for x in parts)
        except ValueError:
            raise InputError("bad range %r" % args.range)
        if step <= 0:
            raise InputError("range step must be positive")
        ts = []
        k = 0
        while True:
            t = start + k * step
            if t > stop + 1e-9 * step:
                break
            ts.append(t)
            k += 1
    if not ts:
        raise InputError("no thresholds resolved")
    return [factor * t for t in ts]


def _config_from_args(args):
    cfg = RunConfig(command=args.command)
    cfg.input = getattr(args, "input", None)
    cfg.output = getattr(args, "output", None)
    cfg.format = getattr(args, "format", "csv")
    cfg.tol = Tolerance(rank_tol_factor=args.tol_rank, zero_eig_tol=args.tol_zero)
    cfg.max_dim = getattr(args, "max_dim", 2)
    cfg.closed_threshold = getattr(args, "closed_threshold", False)
    cfg.scale = getattr(args, "scale", "distance")
    factor = 2.0 if cfg.scale == "radius" else 1.0
    if getattr(args, "threshold", None) is not None:
        cfg.threshold = factor * args.threshold
    if cfg.command in ("curve", "harmonic-track"):
        cfg.thresholds = _resolve_thresholds(args, factor)
    cfg.dim = getattr(args, "dim", None)
    cfg.max_len = getattr(args, "max_len", 3)
    cfg.two_color = getattr(args, "two_color", False)
    return cfg


def _write(text, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _laplacian_text(report):
    eigs = " ".join(fmt(v) for v in report.eigenvalues)
    gap = fmt(report.spectral_gap) if report.spectral_gap is not None else ""
    return (
        "dim,%d\nbetti,%d\nspectral_gap,%s\neigenvalues,%s\n"
        % (report.dimension, report.betti, gap, eigs)
    )


def _betti_text(values):
    lines = ["dim,betti"]
    lines += ["%d,%d" % (p, b) for p, b in enumerate(values)]
    return "\n".join(lines) + "\n"


def _cloud_complex(cfg):
    cloud = parse_point_cloud(cfg.input)
    return rips_complex(cloud, cfg.threshold, cfg.max_dim, cfg.closed_threshold)


def cmd_rips(cfg):
    k = _cloud_complex(cfg)
    text = "%s\nHighest Dimension: %d\n" % ([list(s) for s in k], k.top_dim)
    return _write(text, cfg.output)


def cmd_betti(cfg):
    k = _cloud_complex(cfg)
    return _write(_betti_text(betti_numbers(k, cfg.tol)), cfg.output)


def cmd_laplacian(cfg):
    k = _cloud_complex(cfg)
    return _write(_laplacian_text(spectral_report(k, cfg.dim, cfg.tol)), cfg.output)


def _curve_records(f, tol):
    b0 = betti_curve(f, 0, tol)
    b1 = betti_curve(f, 1, tol)
    g0 = spectral_gap_curve(f, 0, tol)
    g1 = spectral_gap_curve(f, 1, tol)
    return [
        CurveRecord(threshold=t, betti0=v0, betti1=v1, gap0=w0, gap1=w1)
        for (t, v0), (_, v1), (_, w0), (_, w1) in zip(b0, b1, g0, g1)
    ]


def _sibling_png(output):
    return str(Path(output).with_suffix(".png"))


def cmd_curve(cfg):
    cloud = parse_point_cloud(cfg.input)
    f = build_filtration(cloud, cfg.thresholds, cfg.max_dim, cfg.closed_threshold)
    records = _curve_records(f, cfg.tol)
    text = emit_curves(records, cfg.output, cfg.format)
    if cfg.output:
        from .plots import plot_curves

        plot_curves(records, _sibling_png(cfg.output))
    else:
        sys.stdout.write(text)
    return 0


def cmd_harmonic_track(cfg):
    cloud = parse_point_cloud(cfg.input)
    f = build_filtration(cloud, cfg.thresholds, cfg.max_dim, cfg.closed_threshold)
    track = track_harmonics(f, cfg.dim, cfg.tol)
    lines = ["# harmonic track, degree %d" % cfg.dim]
    for i, t in enumerate(track.thresholds):
        lines.append("threshold %s: dimension %d" % (fmt(t), track.dims[i]))
        for tb, rows in track.births:
            if tb == t:
                lines.append("born:")
                lines.append(format_generators(track.bases[i], rows))
        for td, count, _ in track.deaths:
            if td == t:
                lines.append("died: %d" % count)
    text = "\n".join(lines) + "\n"
    code = _write(text, cfg.output)
    if cfg.output:
        from .plots import plot_track

        plot_track(track, _sibling_png(cfg.output))
    return code


def cmd_hypergraph(cfg):
    if cfg.two_color:
        cloud = parse_point_cloud(cfg.input)
        if cfg.threshold is None:
            raise InputError("--two-color needs --threshold")
        h = two_color_rips_hypergraph(
            cloud, cfg.threshold, cfg.max_dim, cfg.closed_threshold
        )
    else:
        h = parse_combinatorial(cfg.input, "hypergraph")
    if cfg.dim is not None:
        return _write(_laplacian_text(hypergraph_laplacian(h, cfg.dim, cfg.tol)), cfg.output)
    return _write(_betti_text(embedded_betti(h, cfg.tol)), cfg.output)


def cmd_digraph(cfg):
    g = parse_combinatorial(cfg.input, "digraph")
    if cfg.dim is not None:
        report = path_laplacian(g, cfg.dim, cfg.max_len, cfg.tol)
        return _write(_laplacian_text(report), cfg.output)
    return _write(_betti_text(path_betti(g, cfg.max_len, cfg.tol)), cfg.output)


def cmd_hyperdigraph(cfg):
    h = parse_combinatorial(cfg.input, "hyperdigraph")
    if cfg.dim is not None:
        return _write(_laplacian_text(hyperdigraph_laplacian(h, cfg.dim, cfg.tol)), cfg.output)
    return _write(_betti_text(hyperdigraph_betti(h, cfg.tol)), cfg.output)


def cmd_demo(cfg):
    """Run the bundled showcases; nothing here asserts, it just reports."""
    out_dir = Path(cfg.output) if cfg.output else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    print("== hexagon, side 2 ==")
    pts = np.array(
        [(2 * math.cos(math.pi * k / 3), 2 * math.sin(math.pi * k / 3)) for k in range(6)]
    )
    mid = 2 * math.sqrt(3) * 1.01
    f = build_filtration(pts, [2.1, mid, 4.1], max_dim=2)
    records = _curve_records(f, cfg.tol)
    for r in records:
        print(
            "t=%s: betti0=%d betti1=%d gap0=%s"
            % (fmt(r.threshold), r.betti0, r.betti1, fmt(r.gap0) if r.gap0 else "-")
        )
    h = two_color_rips_hypergraph(pts, mid)
    print("two-color hypergraph at t=%s: embedded betti %s" % (fmt(mid), embedded_betti(h, cfg.tol)))
    k = rips_complex(pts, mid)
    print("plain Rips at same threshold:   betti %s" % (betti_numbers(k, cfg.tol),))
    if out_dir is not None:
        from .plots import plot_curves

        emit_curves(records, out_dir / "hexagon.csv")
        plot_curves(records, out_dir / "hexagon.png")

    for name, bond_threshold in (("c20.xyz", 1.6), ("c60.xyz", 1.6)):
        print("== %s ==" % name)
        cloud = parse_point_cloud(DATA_DIR / name)
        k = rips_complex(cloud, bond_threshold, 2)
        n_edges = len(k.simplices_of_dim(1))
        print(
            "%d atoms, %d bonds below %s: betti %s"
            % (len(cloud), n_edges, fmt(bond_threshold), betti_numbers(k, cfg.tol))
        )
        if out_dir is not None and name == "c20.xyz":
            from .plots import plot_curves

            fc = build_filtration(cloud, [1.0, 1.6, 2.4, 3.0], max_dim=2)
            rc = _curve_records(fc, cfg.tol)
            emit_curves(rc, out_dir / "c20.csv")
            plot_curves(rc, out_dir / "c20.png")
    return 0


def _add_common(p):
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--tol-rank", type=float, default=1e-12,
                   help="relative singular value cutoff for ranks")
    p.add_argument("--tol-zero", type=float, default=1e-8,
                   help="absolute threshold for zero eigenvalues")


def _add_cloud(p, single_threshold):
    p.add_argument("--input", required=True, help="point cloud file (csv or xyz)")
    p.add_argument("--max-dim", type=int, default=2, help="top simplex dimension")
    p.add_argument("--closed-threshold", action="store_true",
                   help="include pairs at exactly the threshold distance")
    p.add_argument("--scale", choices=("distance", "radius"), default="distance",
                   help="interpret thresholds as distances or ball radii")
    if single_threshold:
        p.add_argument("--threshold", type=float, required=True)
    else:
        p.add_argument("--thresholds", help="comma separated threshold list")
        p.add_argument("--range", help="start:stop:step threshold sweep")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hodgetrack",
        description="homology, Laplacian spectra, and harmonic tracking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rips", help="print the Rips complex of a point cloud")
    _add_cloud(p, single_threshold=True)
    _add_common(p)
    p.set_defaults(func=cmd_rips)

    p = sub.add_parser("betti", help="Betti numbers of a Rips complex")
    _add_cloud(p, single_threshold=True)
    _add_common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("laplacian", help="Hodge Laplacian spectrum in one degree")
    _add_cloud(p, single_threshold=True)
    p.add_argument("--dim", type=int, required=True, help="chain degree p")
    _add_common(p)
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("curve", help="Betti and spectral gap curves over thresholds")
    _add_cloud(p, single_threshold=False)
    p.add_argument("--format", choices=("csv", "json-like"), default="csv")
    _add_common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("harmonic-track",
                       help="follow harmonic generators across thresholds")
    _add_cloud(p, single_threshold=False)
    p.add_argument("--dim", type=int, default=1, help="chain degree p")
    _add_common(p)
    p.set_defaults(func=cmd_harmonic_track)

    p = sub.add_parser("hypergraph", help="embedded homology of a hypergraph")
    p.add_argument("--input", required=True,
                   help="hyperedge file, or a point cloud with --two-color")
    p.add_argument("--two-color",
                   action="store_true",
                   help="build the two-colored Rips hypergraph of a point cloud")
    p.add_argument("--threshold", type=float, help="Rips threshold for --two-color")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--closed-threshold", action="store_true")
    p.add_argument("--scale", choices=("distance", "radius"), default="distance")
    p.add_argument("--dim", type=int, help="report the Laplacian in this degree")
    _add_common(p)
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("digraph", help="path homology of a directed graph")
    p.add_argument("--input", required=True, help="edge list file, one edge per line")
    p.add_argument("--max-len", type=int, default=3, help="maximum path length")
    p.add_argument("--dim", type=int, help="report the Laplacian in this degree")
    _add_common(p)
    p.set_defaults(func=cmd_digraph)

    p = sub.add_parser("hyperdigraph", help="homology of a directed hypergraph")
    p.add_argument("--input", required=True, help="directed hyperedge file")
    p.add_argument("--dim", type=int, help="report the Laplacian in this degree")
    _add_common(p)
    p.set_defaults(func=cmd_hyperdigraph)

    p = sub.add_parser("demo", help="run the bundled examples and print a summary")
    p.add_argument("--output", help="directory for csv/png artifacts")
    p.add_argument("--tol-rank", type=float, default=1e-12)
    p.add_argument("--tol-zero", type=float, default=1e-8)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return args.func(cfg)
    except ParseError as exc:
        print("error: parse: %s" % exc, file=sys.stderr)
        return 2
    except InputError as exc:
        print("error: input: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print("error: input: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: io: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
