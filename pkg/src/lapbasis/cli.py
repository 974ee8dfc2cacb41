"""Batch command line: compute bases, metrics, seeds, and spectra; export
CSV/PLY/JSON/PGM artifacts with a manifest for external plotting.

Every run writes a ``manifest.json`` listing each output file with its
sha256.  Numeric CSV output uses shortest round-trip decimals and fixed
orderings, so identical inputs give byte-identical files.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import basis as basis_mod
from . import metrics as metrics_mod
from . import seeds as seeds_mod
from .errors import LapBasisError
from .fields import BasisSet, ScalarField, field_values
from .filters import parse_filter, partial_fractions, exp_chebyshev_coefficients
from .ioutil import atomic_write_text, fmt, sha256_file
from .laplacian import assemble
from .mesh import load_mesh, save_ply, validate
from .numerics import matrix_data

SCHEME_FLAG = {"fem": "linear_fem", "cot": "voronoi_cotangent",
               "meanvalue": "mean_value"}
FORMATS = ("csv", "ply", "json", "pgm")


def _common(parser):
    parser.add_argument("--mesh", required=True, help="OFF/OBJ/PLY mesh file")
    parser.add_argument("--scheme", choices=sorted(SCHEME_FLAG), default="fem")
    parser.add_argument("--mass", choices=["lumped", "consistent"],
                        default="lumped")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--format", default="csv,json",
                        help="comma list from csv,ply,json,pgm")


def build_parser():
    p = argparse.ArgumentParser(
        prog="lapbasis",
        description="Laplacian spectral basis functions on triangle meshes",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="compute a basis family")
    _common(b)
    b.add_argument("family", choices=["harmonic", "hamiltonian", "eigen",
                                      "diffusion", "spectral", "green"])
    b.add_argument("--seeds", help="comma-separated vertex indices")
    b.add_argument("--seeds-file", help="text file, one index per line")
    b.add_argument("--fps", type=int, help="sample this many FPS seeds")
    b.add_argument("--seed", type=int, help="single seed vertex")
    b.add_argument("--start", type=int, help="FPS start vertex")
    b.add_argument("--t", type=float, default=0.1, help="diffusion scale")
    b.add_argument("--k", type=int, default=100, help="eigenpair count")
    b.add_argument("--r", type=int, default=5, help="rational degree")
    b.add_argument("--mu", type=float, default=1.0,
                   help="Hamiltonian potential weight")
    b.add_argument("--potential", help="CSV (vertex_id,value) potential")
    b.add_argument("--filter", dest="filter_text",
                   help="filter expression, e.g. exp:t=0.1 or rat:num=1;den=1,0,1")
    b.add_argument("--method", choices=["chebyshev", "truncated"],
                   default="chebyshev")
    b.add_argument("--role", choices=["harmonic", "diffusion", "general"],
                   default="harmonic", help="green kernel operator")

    m = sub.add_parser("metrics", help="pairwise comparison matrix")
    _common(m)
    m.add_argument("--metric", choices=["area", "conformal", "kernel"],
                   required=True)
    m.add_argument("--family", choices=["diffusion", "eigen"],
                   default="diffusion", help="fields generated in-process")
    m.add_argument("--fields-dir", help="read field CSVs from a prior run")
    m.add_argument("--seeds", help="comma-separated vertex indices")
    m.add_argument("--fps", type=int, default=100)
    m.add_argument("--start", type=int)
    m.add_argument("--t", type=float, default=1e-3)
    m.add_argument("--k", type=int, default=20)
    m.add_argument("--r", type=int, default=5)
    m.add_argument("--kernel-t", type=float, default=0.1,
                   help="diffusion scale of the kernel metric")
    m.add_argument("--normalize", action="store_true",
                   help="rescale fields to [0,1] before comparing")

    s = sub.add_parser("seeds", help="farthest point sampling")
    _common(s)
    s.add_argument("--fps", type=int, default=10)
    s.add_argument("--start", type=int)
    s.add_argument("--metric", choices=list(seeds_mod.METRIC_CHOICES),
                   default="euclidean")

    c = sub.add_parser("coverage", help="grow a basis until supports cover")
    _common(c)
    c.add_argument("--t", type=float, default=1.0)
    c.add_argument("--k0", type=int, default=10)
    c.add_argument("--start", type=int, help="FPS start vertex")
    c.add_argument("--tau", type=float, default=seeds_mod.DEFAULT_TAU)
    c.add_argument("--r", type=int, default=5)
    c.add_argument("--metric", choices=list(seeds_mod.METRIC_CHOICES),
                   default="euclidean")

    v = sub.add_parser("validate", help="mesh sanity report")
    _common(v)

    e = sub.add_parser("spectrum", help="smallest eigenvalues")
    _common(e)
    e.add_argument("--k", type=int, default=10)

    return p


# ---------------------------------------------------------------------------
# output helpers


class Run:
    """Collects output files and writes the manifest at the end."""

    def __init__(self, args):
        self.args = args
        self.outdir = args.out
        os.makedirs(self.outdir, exist_ok=True)
        self.outputs = []
        self.info = {}
        self.t0 = time.perf_counter()
        self.formats = [f.strip() for f in args.format.split(",") if f.strip()]
        for f in self.formats:
            if f not in FORMATS:
                raise ValueError(f"unknown format {f!r}")

    def path(self, name):
        return os.path.join(self.outdir, name)

    def add(self, path):
        self.outputs.append(path)
        return path

    def write_text(self, name, text):
        p = self.path(name)
        atomic_write_text(p, text)
        return self.add(p)

    def finish(self):
        params = {
            k: v for k, v in vars(self.args).items() if v is not None
        }
        manifest = {
            "command": self.args.command,
            "parameters": params,
            "timings": {"total_s": time.perf_counter() - self.t0,
                        **self.info.pop("timings", {})},
            **self.info,
            "outputs": [
                {"path": os.path.relpath(p, self.outdir),
                 "sha256": sha256_file(p)}
                for p in self.outputs
            ],
        }
        atomic_write_text(self.path("manifest.json"),
                          json.dumps(manifest, indent=2, default=str) + "\n")
        return self.path("manifest.json")


def _field_csv(run, name, f):
    fv = field_values(f)
    lines = ["vertex_id,value"]
    lines += [f"{i},{fmt(v)}" for i, v in enumerate(fv)]
    return run.write_text(name, "\n".join(lines) + "\n")


def _load_field_csv(path):
    values = []
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("vertex_id"):
            raise ValueError(f"{path}: expected a vertex_id,value header")
        for line in fh:
            if line.strip():
                _, v = line.split(",", 1)
                values.append(float(v))
    return ScalarField(np.array(values), tag=os.path.basename(path))


def _ramp_colors(values):
    """Affine blue-to-red ramp over [min, max] as 8-bit RGB."""
    v = np.asarray(values, dtype=float)
    lo, hi = v.min(), v.max()
    u = (v - lo) / (hi - lo) if hi > lo else np.zeros_like(v)
    r = np.rint(255 * u).astype(int)
    b = np.rint(255 * (1 - u)).astype(int)
    return np.column_stack([r, np.zeros_like(r), b])


def _field_ply(run, name, mesh, f):
    p = run.path(name)
    save_ply(mesh, p, colors=_ramp_colors(field_values(f)))
    return run.add(p)


def _export_fields(run, mesh, fields, stem):
    for i, f in enumerate(fields):
        tag = getattr(f, "tag", "")
        base = f"{stem}_{i:04d}"
        if "csv" in run.formats:
            _field_csv(run, base + ".csv", f)
        if "ply" in run.formats:
            _field_ply(run, base + ".ply", mesh, f)
        run.info.setdefault("fields", []).append(
            {"index": i, "tag": tag, "stem": base}
        )


def _parse_seed_args(args, mesh, op):
    if getattr(args, "seeds", None):
        return [int(x) for x in args.seeds.split(",")]
    if getattr(args, "seeds_file", None):
        return list(seeds_mod.load_seeds(args.seeds_file))
    if getattr(args, "fps", None):
        return list(
            seeds_mod.farthest_point_sampling(
                mesh, args.fps, start=getattr(args, "start", None), op=op
            )
        )
    if getattr(args, "seed", None) is not None:
        return [args.seed]
    raise ValueError("no seeds given: use --seeds, --seeds-file, --fps or --seed")


def _residual_summary(eig):
    Lm = matrix_data(eig.L)
    Bm = matrix_data(eig.B)
    R = Lm @ eig.vectors - Bm @ eig.vectors * eig.values
    num = np.linalg.norm(R, axis=0)
    den = np.maximum(np.linalg.norm(Lm @ eig.vectors, axis=0), 1e-30)
    return float((num / den).max())


# ---------------------------------------------------------------------------
# subcommands


def cmd_basis(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    t0 = time.perf_counter()
    op = assemble(mesh, scheme=SCHEME_FLAG[args.scheme], mass_mode=args.mass)
    run.info["timings"] = {"assemble_s": time.perf_counter() - t0}
    fam = args.family
    t1 = time.perf_counter()

    if fam == "eigen":
        eig = basis_mod.eigen_basis(op, args.k)
        run.info["solver"] = {"max_rel_residual": _residual_summary(eig)}
        spec = {"k": eig.k, "eigenvalues": [float(v) for v in eig.values]}
        run.write_text("spectrum.json", json.dumps(spec, indent=2) + "\n")
        _export_fields(run, mesh, basis_mod.eigen_fields(eig), "eigen")
    elif fam in ("harmonic", "hamiltonian"):
        seed_list = _parse_seed_args(args, mesh, op)
        if fam == "harmonic":
            bs = basis_mod.harmonic_basis(op, seed_list)
        else:
            if args.potential:
                V = _load_field_csv(args.potential)
            else:
                V = ScalarField(np.ones(mesh.n_vertices), tag="V=1")
            bs = basis_mod.hamiltonian_basis(op, V, args.mu, seed_list)
        _export_fields(run, mesh, bs, fam)
    elif fam == "diffusion":
        seed_list = _parse_seed_args(args, mesh, op)
        bs = basis_mod.diffusion_set(op, args.t, seed_list,
                                     method=args.method, r=args.r, k=args.k)
        run.info["path"] = (
            f"chebyshev r={args.r}" if args.method == "chebyshev"
            else f"truncated k={args.k}"
        )
        _export_fields(run, mesh, bs, "diffusion")
    elif fam == "spectral":
        if not args.filter_text:
            raise ValueError("basis spectral needs --filter")
        filt = parse_filter(args.filter_text)
        seed_list = _parse_seed_args(args, mesh, op)
        fields = []
        if args.method == "chebyshev" and filt.kind in ("exponential", "rational"):
            pf = partial_fractions(filt, args.r)
            run.info["path"] = (
                "chebyshev exact-rational" if filt.kind == "rational"
                else f"chebyshev table r={args.r}"
            )
            kernel = basis_mod.ChebyshevKernel(op, pf)
            for s in seed_list:
                delta = np.zeros(mesh.n_vertices)
                delta[s] = 1.0
                fields.append(ScalarField(
                    kernel.apply(delta),
                    tag=f"spectral[{filt.describe()},seed={s}]",
                ))
        else:
            eig = basis_mod.eigen_basis(op, min(args.k, mesh.n_vertices))
            run.info["path"] = f"truncated k={eig.k}"
            for s in seed_list:
                delta = np.zeros(mesh.n_vertices)
                delta[s] = 1.0
                fields.append(basis_mod.truncated_spectral(eig, filt, delta))
        bs = BasisSet(fields, "spectral", seeds=seed_list,
                      params={"filter": args.filter_text})
        _export_fields(run, mesh, bs, "spectral")
    elif fam == "green":
        seed_list = _parse_seed_args(args, mesh, op)
        filt = parse_filter(args.filter_text) if args.filter_text else None
        fields = [
            basis_mod.green_column(op, s, role=args.role, t=args.t,
                                   filt=filt, r=args.r)
            for s in seed_list
        ]
        bs = BasisSet(fields, "green", seeds=seed_list,
                      params={"role": args.role})
        _export_fields(run, mesh, bs, "green")
    run.info["timings"]["compute_s"] = time.perf_counter() - t1
    print(run.finish())
    return 0


def cmd_metrics(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    op = assemble(mesh, scheme=SCHEME_FLAG[args.scheme], mass_mode=args.mass)
    if args.fields_dir:
        paths = sorted(
            os.path.join(args.fields_dir, f)
            for f in os.listdir(args.fields_dir)
            if f.endswith(".csv") and f != "coverage_curve.csv"
        )
        fields = BasisSet([_load_field_csv(p) for p in paths], "file")
    elif args.family == "diffusion":
        seed_list = _parse_seed_args(args, mesh, op)
        fields = basis_mod.diffusion_set(op, args.t, seed_list, r=args.r)
    else:
        eig = basis_mod.eigen_basis(op, args.k)
        fields = basis_mod.eigen_fields(eig)
    kernel_apply = None
    if args.metric == "kernel":
        pf = exp_chebyshev_coefficients(args.r).scaled(args.kernel_t)
        kernel_apply = basis_mod.ChebyshevKernel(op, pf).apply
    cm = metrics_mod.comparison_matrix(
        op, fields, metric=args.metric, kernel_apply=kernel_apply,
        normalize=args.normalize,
    )
    base = f"metric_{args.metric}"
    p_csv = run.path(base + ".csv")
    metrics_mod.save_comparison_csv(cm, p_csv)
    run.add(p_csv)
    p_pgm = run.path(base + ".pgm")
    metrics_mod.save_comparison_pgm(cm, p_pgm)
    run.add(p_pgm)
    run.info["matrix"] = {"m": cm.m, "normalized": cm.normalized}
    print(run.finish())
    return 0


def cmd_seeds(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    op = assemble(mesh, scheme=SCHEME_FLAG[args.scheme], mass_mode=args.mass)
    ss = seeds_mod.farthest_point_sampling(
        mesh, args.fps, start=args.start, metric=args.metric, op=op
    )
    p = run.path("seeds.txt")
    seeds_mod.save_seeds(ss, p)
    run.add(p)
    run.info["seeds"] = {"method": ss.method, "start": ss.start,
                         "metric": ss.metric, "count": len(ss)}
    print(run.finish())
    return 0


def cmd_coverage(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    op = assemble(mesh, scheme=SCHEME_FLAG[args.scheme], mass_mode=args.mass)
    kernel = basis_mod.ChebyshevKernel(
        op, exp_chebyshev_coefficients(args.r).scaled(args.t)
    )

    def generator(s):
        return basis_mod.diffusion_basis(op, args.t, s, kernel=kernel, r=args.r)

    result = seeds_mod.coverage_loop(
        mesh, op, generator, k0=args.k0, tau=args.tau, metric=args.metric,
        start=args.start,
    )
    p = run.path("coverage_seeds.txt")
    seeds_mod.save_seeds(result.seeds, p)
    run.add(p)
    curve = seeds_mod.coverage_curve(result.basis, tau=args.tau)
    lines = ["k,fraction"]
    lines += [f"{i + 1},{fmt(v)}" for i, v in enumerate(curve)]
    run.write_text("coverage_curve.csv", "\n".join(lines) + "\n")
    report = {
        "iterations": result.iterations,
        "history": [float(h) for h in result.history],
        "tau": result.tau,
        "seed_count": len(result.seeds),
        "t": args.t,
    }
    run.write_text("coverage_report.json", json.dumps(report, indent=2) + "\n")
    print(run.finish())
    return 0


def cmd_validate(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    report = validate(mesh)
    run.write_text("mesh_report.json",
                   json.dumps(report.as_dict(), indent=2) + "\n")
    print(run.finish())
    return 0


def cmd_spectrum(args):
    run = Run(args)
    mesh = load_mesh(args.mesh)
    op = assemble(mesh, scheme=SCHEME_FLAG[args.scheme], mass_mode=args.mass)
    eig = basis_mod.eigen_basis(op, args.k)
    spec = {
        "k": eig.k,
        "scheme": op.scheme,
        "mass": op.mass_mode,
        "eigenvalues": [float(v) for v in eig.values],
        "max_rel_residual": _residual_summary(eig),
    }
    run.write_text("spectrum.json", json.dumps(spec, indent=2) + "\n")
    print(run.finish())
    return 0


COMMANDS = {
    "basis": cmd_basis,
    "metrics": cmd_metrics,
    "seeds": cmd_seeds,
    "coverage": cmd_coverage,
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (LapBasisError, OSError, ValueError, IndexError) as exc:
        print(f"lapbasis: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
