"""Command-line front end.

Subcommands: ``mesh`` (generate / convert geometries), ``solve`` (Steklov
spectrum + clustering + bound report), ``nodal`` (nodal graph exports for
one eigenfunction), ``robin`` (Robin / Dirichlet / Neumann spectra),
``verify`` (named acceptance suites) and ``graph-fuzz`` (randomized
embedded-graph property run).

Exit codes: 0 clean, 2 when a checker reported violations (or a suite
failed), 1 on errors.  Outputs are plain text / CSV / JSON written with
sorted keys and repr floats, so identical configurations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, assembly, maps, nodal, robin, solver, spectral, verify
from . import mesh as meshmod


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_geometry_args(parser):
    g = parser.add_argument_group("geometry (pick one)")
    g.add_argument("--disk", nargs=2, type=float, metavar=("R", "REF"),
                   help="graded disk: radius, refinement")
    g.add_argument("--polar-disk", nargs=3, type=float,
                   metavar=("R", "RINGS", "ANGULAR"),
                   help="uniform polar disk: radius, rings, angular count")
    g.add_argument("--annulus", nargs=3, type=float,
                   metavar=("RIN", "ROUT", "REF"))
    g.add_argument("--square", nargs=2, type=float, metavar=("SIDE", "REF"))
    g.add_argument("--mobius", nargs=3, type=float, metavar=("L", "W", "REF"))
    g.add_argument("--mesh", metavar="FILE", help="SMESH file to load")


def _resolve_geometry(args):
    if args.disk:
        return meshmod.make_disk(args.disk[0], int(args.disk[1]))
    if args.polar_disk:
        r, rings, ang = args.polar_disk
        return meshmod.make_polar_disk(r, int(rings), int(ang))
    if args.annulus:
        ri, ro, ref = args.annulus
        return meshmod.make_annulus(ri, ro, int(ref))
    if args.square:
        return meshmod.make_square(args.square[0], int(args.square[1]))
    if args.mobius:
        ln, w, ref = args.mobius
        return meshmod.make_mobius(ln, w, int(ref))
    if args.mesh:
        return meshmod.load_mesh(args.mesh)
    raise ValueError("no geometry given (see --help)")


def _resolve_density(mesh, spec):
    """const:<c>, cos:<eps> (1 + eps cos theta), or file (RHO section)."""
    if spec is None or spec == "const:1":
        return assembly.BoundaryDensity(mesh)
    kind, _, val = spec.partition(":")
    if kind == "const":
        c = float(val)
        n = len(mesh.boundary_nodes)
        return assembly.BoundaryDensity(mesh, c * np.ones(n))
    if kind == "cos":
        eps = float(val)
        pts = mesh.node_positions[mesh.boundary_nodes]
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        return assembly.BoundaryDensity(mesh, 1.0 + eps * np.cos(theta))
    if kind == "file":
        if mesh.density is None:
            raise ValueError("mesh file carries no RHO section")
        return assembly.BoundaryDensity(mesh, mesh.density)
    raise ValueError(f"unknown density spec '{spec}'")


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    print(f"wrote {path}")


def _clusters_payload(clusters):
    return [{"k": c.first_index, "value": c.value, "dim": c.dim,
             "spread": c.spread} for c in clusters]


def cmd_mesh(args):
    mesh = _resolve_geometry(args)
    topo = mesh.topology()
    print(f"nodes {mesh.n_nodes}  triangles {len(mesh.tri_nodes)}  "
          f"boundary nodes {len(mesh.boundary_nodes)}")
    print(f"chi {topo.euler_char}  l {topo.boundary_count}  "
          f"chibar {topo.reduced_euler}  orientable {topo.orientable}  "
          f"genus {topo.genus}")
    if args.out:
        density = None
        if args.rho and args.rho != "file":
            density = _resolve_density(mesh, args.rho).values
        meshmod.save_mesh(args.out, mesh, density)
        print(f"wrote {args.out}")
    return 0


def cmd_solve(args):
    mesh = _resolve_geometry(args)
    rho = _resolve_density(mesh, args.rho)
    system, dtn, spectrum = solver.compute_spectrum(mesh, rho, args.count)
    clusters = spectral.cluster_multiplicities(
        spectrum, rel_tol=args.rel_tol, abs_floor=args.abs_floor)
    os.makedirs(args.out, exist_ok=True)
    solver.write_spectrum_csv(os.path.join(args.out, "spectrum.csv"),
                              spectrum, clusters)
    print(f"wrote {os.path.join(args.out, 'spectrum.csv')}")
    payload = {
        "config": {"count": args.count, "rel_tol": args.rel_tol,
                   "abs_floor": args.abs_floor, "rho": args.rho or "const:1"},
        "clusters": _clusters_payload(clusters),
    }
    _write(os.path.join(args.out, "clusters.json"),
           json.dumps(payload, indent=2, sort_keys=True) + "\n")
    status = 0
    if args.check_bounds:
        report = spectral.check_bounds(clusters, mesh.topology())
        _write(os.path.join(args.out, "bounds.json"), report.to_json() + "\n")
        if not report.ok:
            print(f"{len(report.violations)} bound violations reported")
            status = 2
    if args.traces:
        solver.write_traces_txt(os.path.join(args.out, "traces.txt"), spectrum)
    return status


def cmd_nodal(args):
    mesh = _resolve_geometry(args)
    rho = _resolve_density(mesh, args.rho)
    count = max(args.count, args.index + 1)
    _, _, spectrum = solver.compute_spectrum(mesh, rho, count)
    if args.index >= len(spectrum):
        raise ValueError(f"index {args.index} out of range 0..{len(spectrum)-1}")
    clusters = spectral.cluster_multiplicities(spectrum)
    zero_tol = args.zero_tol or nodal.fem_zero_tol(mesh)
    radius = args.cluster_radius or nodal.default_cluster_radius(mesh)
    u = spectrum.extensions[:, args.index]

    graph = nodal.extract_nodal_graph(mesh, u, zero_tol, radius)
    reduced = nodal.reduce_graph(graph)
    topo = mesh.topology()
    bounds = nodal.domain_lower_bounds(reduced, topo)
    from .spectral import cluster_of_index
    k = cluster_of_index(clusters, args.index).first_index
    domains = reduced.f

    os.makedirs(args.out, exist_ok=True)
    _write(os.path.join(args.out, f"nodal_{args.index}.txt"),
           nodal.graph_to_text(graph))
    _write(os.path.join(args.out, f"nodal_{args.index}.svg"),
           nodal.graph_to_svg(graph))
    payload = {
        "config": {"index": args.index, "zero_tol": zero_tol,
                   "cluster_radius": radius},
        "summary": graph.summary(),
        "reduced": {"v": reduced.v, "e": reduced.e, "f": reduced.f,
                    "r": reduced.r, "loops": reduced.loops},
        "courant": {"k": k, "domains": domains, "bound": k + 1,
                    "pass": domains <= k + 1},
        "lower_bounds": {"margins": bounds.margins, "ok": bounds.ok,
                         "vacuous": bounds.vacuous},
        "warnings": graph.warnings,
    }
    _write(os.path.join(args.out, f"nodal_{args.index}.json"),
           json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if (domains <= k + 1 and bounds.ok) else 2


def cmd_robin(args):
    mesh = _resolve_geometry(args)
    nb = len(mesh.boundary_nodes)
    potential = None
    if args.potential:
        potential = float(args.potential) * np.ones(mesh.n_nodes)
    if mesh.potential is not None and args.potential is None:
        potential = mesh.potential
    if args.dirichlet:
        data = robin.RobinData.dirichlet(mesh, potential)
    elif args.robin_ratio is not None:
        data = robin.RobinData.robin(mesh, args.robin_ratio, potential)
    elif mesh.robin_ab is not None:
        data = robin.RobinData(mesh, potential,
                               mesh.robin_ab[:, 0], mesh.robin_ab[:, 1])
    else:
        data = robin.RobinData(mesh, potential)
    system, spectrum = robin.compute_robin_spectrum(mesh, data, args.count)
    clusters = spectral.cluster_multiplicities(spectrum)
    os.makedirs(args.out, exist_ok=True)
    lines = ["index,eigenvalue,cluster_id"]
    cluster_of = {}
    for cid, c in enumerate(clusters):
        for j in c.indices:
            cluster_of[j] = cid
    for j, val in enumerate(spectrum.eigenvalues):
        lines.append(f"{j},{float(val)!r},{cluster_of[j]}")
    _write(os.path.join(args.out, "robin_spectrum.csv"), "\n".join(lines) + "\n")
    status = 0
    if args.check_bounds:
        report = robin.check_robin_bounds(clusters, mesh.topology())
        payload = {"clusters": report.entries, "ok": report.ok}
        _write(os.path.join(args.out, "robin_bounds.json"),
               json.dumps(payload, indent=2, sort_keys=True) + "\n")
        if not report.ok:
            status = 2
    return status


def cmd_verify(args):
    names = None if (not args.suite or args.suite == ["all"]) else args.suite
    try:
        results = verify.run_verify(names)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 1
    print(verify.format_results(results))
    return 0 if all(r.passed for r in results) else 2


def cmd_graph_fuzz(args):
    ctx = verify.VerifyContext()
    passed, detail = verify.crit_graph_fuzz(
        ctx, n_random=args.cases, seed=args.seed, max_edges=args.max_edges)
    print(("PASS " if passed else "FAIL ") + detail)
    return 0 if passed else 2


def build_parser():
    p = _Parser(prog="steklov-lab",
                description="Spectral geometry lab for surfaces with boundary")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, rho=True):
        _add_geometry_args(sp)
        if rho:
            sp.add_argument("--rho", metavar="SPEC",
                            help="density: const:<c>, cos:<eps>, or file")
        sp.add_argument("--out", default=".", help="output directory")

    sp = sub.add_parser("mesh", help="generate or inspect a mesh")
    _add_geometry_args(sp)
    sp.add_argument("--rho", metavar="SPEC")
    sp.add_argument("--out", metavar="FILE", default=None,
                    help="write SMESH file here")
    sp.set_defaults(fn=cmd_mesh)

    sp = sub.add_parser("solve", help="Steklov spectrum and bound report")
    common(sp)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--rel-tol", type=float, default=1e-3,
                    help="cluster gap tolerance")
    sp.add_argument("--abs-floor", type=float, default=1e-9)
    sp.add_argument("--check-bounds", action="store_true")
    sp.add_argument("--traces", action="store_true",
                    help="also dump boundary traces")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("nodal", help="nodal graph of one eigenfunction")
    common(sp)
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--count", type=int, default=12)
    sp.add_argument("--zero-tol", type=float, default=None)
    sp.add_argument("--cluster-radius", type=float, default=None)
    sp.set_defaults(fn=cmd_nodal)

    sp = sub.add_parser("robin", help="Robin / Dirichlet / Neumann spectrum")
    common(sp, rho=False)
    sp.add_argument("--count", type=int, default=12)
    sp.add_argument("--dirichlet", action="store_true")
    sp.add_argument("--robin-ratio", type=float, default=None,
                    help="constant a/b on the boundary")
    sp.add_argument("--potential", type=float, default=None,
                    help="constant potential")
    sp.add_argument("--check-bounds", action="store_true")
    sp.set_defaults(fn=cmd_robin)

    sp = sub.add_parser("verify", help="run acceptance suites")
    sp.add_argument("suite", nargs="*",
                    help="suite names (default: all); see docs")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("graph-fuzz", help="embedded-graph property run")
    sp.add_argument("--cases", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=20240811)
    sp.add_argument("--max-edges", type=int, default=4)
    sp.set_defaults(fn=cmd_graph_fuzz)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
