"""End-to-end verification suites.

Each suite checks one advertised property of the lab at a pinned
tolerance and resolution and returns a pass/fail record; ``run_verify``
drives them by name.  Oracle values come from routes independent of the
finite-element path: separation of variables on the disk and annulus,
Bessel zeros for the Robin disk, explicit harmonic polynomials for the
nodal and expansion machinery, and exhaustive path enumeration for the
embedded-graph engine.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import assembly, maps, mesh as meshmod, nodal, robin, solver, spectral


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    inconclusive: bool = False

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        if self.inconclusive:
            status = "SKIP"
        return f"{status:4s}  {self.name:18s}  {self.detail}  [{self.seconds:.1f}s]"


class VerifyContext:
    """Caches meshes and spectra shared between suites."""

    def __init__(self):
        self._cache = {}

    def get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # pinned acceptance geometries -------------------------------------

    def disk_fem(self):
        return self.get("disk_fem", lambda: meshmod.make_polar_disk(1.0, 32, 160))

    def disk_spectrum(self, count=41):
        def build():
            return solver.compute_spectrum(self.disk_fem(), count=count)
        return self.get(("disk_spec", count), build)

    def annulus_fem(self):
        return self.get("annulus_fem", lambda: meshmod.make_annulus(0.5, 1.0, 16))

    def annulus_spectrum(self, count=41):
        def build():
            return solver.compute_spectrum(self.annulus_fem(), count=count)
        return self.get(("annulus_spec", count), build)

    def square_fem(self):
        return self.get("square_fem", lambda: meshmod.make_square(1.0, 96))

    def square_spectrum(self, count=45):
        def build():
            return solver.compute_spectrum(self.square_fem(), count=count)
        return self.get(("square_spec", count), build)

    def mobius_fem(self):
        return self.get("mobius_fem",
                        lambda: meshmod.make_mobius(2 * math.pi, 1.0, 16))

    def mobius_spectrum(self, count=20):
        def build():
            return solver.compute_spectrum(self.mobius_fem(), count=count)
        return self.get(("mobius_spec", count), build)

    def nodal_disk(self):
        return self.get("nodal_disk", lambda: meshmod.make_polar_disk(1.0, 20, 240))

    def robin_disk(self):
        return self.get("robin_disk", lambda: meshmod.make_disk(1.0, 25))

    def robin_square(self):
        return self.get("robin_square", lambda: meshmod.make_square(math.pi, 24))


# ---------------------------------------------------------------------------
# separation-of-variables oracles
# ---------------------------------------------------------------------------

def disk_steklov_oracle(radius, count):
    """Unit-weight Steklov spectrum of a round disk: 0, then k/R twice."""
    vals = [0.0]
    k = 1
    while len(vals) < count:
        vals.extend([k / radius, k / radius])
        k += 1
    return np.array(vals[:count])


def annulus_steklov_oracle(r_in, r_out, count, max_freq=60):
    """Steklov spectrum of a flat annulus with unit weight.

    Radial profiles are a + b log r (frequency 0) and a r^n + b r^-n;
    the boundary conditions turn each frequency into a 2x2 generalized
    eigenproblem whose finite eigenvalues enter (twice for n >= 1).
    """
    import scipy.linalg as dla
    vals = []
    A = np.array([[0.0, 1.0 / r_out], [0.0, -1.0 / r_in]])
    B = np.array([[1.0, math.log(r_out)], [1.0, math.log(r_in)]])
    for x in dla.eig(A, B, right=False):
        if np.isfinite(x) and abs(x.imag) <= 1e-9 * max(1.0, abs(x.real)):
            vals.append(max(float(x.real), 0.0))
    for n in range(1, max_freq + 1):
        A = np.array([[n * r_out ** (n - 1), -n * r_out ** (-n - 1)],
                      [-n * r_in ** (n - 1), n * r_in ** (-n - 1)]])
        B = np.array([[r_out ** n, r_out ** (-n)],
                      [r_in ** n, r_in ** (-n)]])
        for x in dla.eig(A, B, right=False):
            if np.isfinite(x) and abs(x.imag) <= 1e-9 * max(1.0, abs(x.real)) \
                    and x.real > -1e-12:
                vals.extend([float(x.real)] * 2)
    return np.sort(np.array(vals))[:count]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def crit_disk_spectrum(ctx):
    _, _, spec = ctx.disk_spectrum()
    oracle = disk_steklov_oracle(1.0, 11)
    ev = spec.eigenvalues[:11]
    abs0 = abs(ev[0])
    rel = np.abs(ev[1:] - oracle[1:]) / oracle[1:]
    passed = abs0 <= 1e-6 and rel.max() <= 1e-2
    return passed, (f"max rel err {rel.max():.2e} (tol 1e-02), "
                    f"|sigma0| {abs0:.1e} (tol 1e-06)")


def crit_annulus_spectrum(ctx):
    _, _, spec = ctx.annulus_spectrum()
    oracle = annulus_steklov_oracle(0.5, 1.0, 8)
    ev = spec.eigenvalues[:8]
    abs0 = abs(ev[0])
    rel = np.abs(ev[1:] - oracle[1:]) / oracle[1:]
    passed = abs0 <= 1e-6 and rel.max() <= 1e-2
    return passed, (f"max rel err {rel.max():.2e} (tol 1e-02), "
                    f"|sigma0| {abs0:.1e}")


def _steklov_cases(ctx):
    return [
        ("disk", ctx.disk_fem(), ctx.disk_spectrum()[2]),
        ("annulus", ctx.annulus_fem(), ctx.annulus_spectrum()[2]),
        ("mobius", ctx.mobius_fem(), ctx.mobius_spectrum()[2]),
        ("square", ctx.square_fem(), ctx.square_spectrum()[2]),
    ]


def crit_bounds(ctx):
    bad = []
    total = 0
    for name, mesh, spec in _steklov_cases(ctx):
        clusters = spectral.cluster_multiplicities(spec)
        report = spectral.check_bounds(clusters, mesh.topology(), max_k=15)
        total += len(report.entries)
        bad.extend((name, e) for e in report.violations)
    return not bad, f"{total} clusters checked on 4 surfaces, {len(bad)} violations"


def crit_courant(ctx):
    bad = []
    total = 0
    for name, mesh, spec in _steklov_cases(ctx):
        clusters = spectral.cluster_multiplicities(spec)
        rep = nodal.courant_check(spec, clusters, mesh)
        total += len(rep.entries)
        bad.extend((name, e) for e in rep.violations)
    for name, mesh, rspec in _robin_cases(ctx):
        clusters = spectral.cluster_multiplicities(rspec)
        rep = nodal.courant_check(rspec, clusters, mesh)
        total += len(rep.entries)
        bad.extend((name, e) for e in rep.violations)
    return not bad, f"{total} eigenfunctions, {len(bad)} violations of k+1"


def crit_pairing(ctx):
    mesh = ctx.disk_fem()
    _, _, spec = ctx.disk_spectrum()
    clusters = spectral.cluster_multiplicities(spec)
    rep = spectral.disk_pairing(spec, clusters, mesh.topology())
    gap_max = max(g[2] for g in rep.pair_gaps[:5])
    ok_round = rep.stable_from == 0 and gap_max < 1e-6

    def build():
        pts = mesh.node_positions[mesh.boundary_nodes]
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        rho = assembly.BoundaryDensity(mesh, 1.0 + 0.3 * np.cos(theta))
        return solver.compute_spectrum(mesh, rho, count=30)
    _, _, pspec = ctx.get("disk_perturbed", build)
    pclusters = spectral.cluster_multiplicities(pspec)
    dims_ok = all(c.dim <= 2 for c in pclusters if c.first_index >= 1)
    return ok_round and dims_ok, (
        f"round gaps max {gap_max:.1e} (tol 1e-06), perturbed dims "
        f"{[c.dim for c in pclusters][:8]}...")


def crit_weyl(ctx):
    details = []
    ok = True
    for name, mesh, spec in _steklov_cases(ctx)[:2]:
        sub = spec.eigenvalues[:40]
        rep = spectral.weyl_residual(sub, mesh.boundary_length())
        good = rep.max_residual <= 3.0 and rep.drift <= 1.5
        ok = ok and good
        details.append(f"{name}: max|R| {rep.max_residual:.2f} drift "
                       f"{rep.drift:.2f} slope {rep.slope:.3f} "
                       f"(cands {rep.slope_half:.3f}/{rep.slope_full:.3f})")
    return ok, "; ".join(details)


def crit_nodal_oracle(ctx):
    mesh = ctx.nodal_disk()
    pts = mesh.node_positions
    r = np.linalg.norm(pts, axis=1)
    th = np.arctan2(pts[:, 1], pts[:, 0])
    topo = mesh.topology()
    problems = []
    for n in range(1, 6):
        for trig, u in (("sin", r ** n * np.sin(n * th)),
                        ("cos", r ** n * np.cos(n * th))):
            tag = f"n={n}{trig}"
            dom = nodal.nodal_domains(mesh, u)
            if dom.count != 2 * n:
                problems.append(f"{tag}: {dom.count} domains")
            g = nodal.extract_nodal_graph(mesh, u)
            expect_iv = 1 if n >= 2 else 0
            if len(g.interior_vertices) != expect_iv:
                problems.append(f"{tag}: {len(g.interior_vertices)} vertices")
            elif expect_iv and g.interior_vertices[0].degree != 2 * n:
                problems.append(f"{tag}: degree {g.interior_vertices[0].degree}")
            if len(g.boundary_endpoints) != 2 * n or g.loop_count != 0:
                problems.append(f"{tag}: ends/loops off")
            est = nodal.estimate_order(mesh, u, (0.0, 0.0), 0.35, max_order=6)
            if est.order != n:
                problems.append(f"{tag}: order {est.order}")
            red = nodal.reduce_graph(g)
            if red.euler_characteristic() != 2:
                problems.append(f"{tag}: v-e+f {red.euler_characteristic()}")
            rep = nodal.domain_lower_bounds(red, topo)
            if not rep.ok:
                problems.append(f"{tag}: negative margin {rep.margins}")
            if n in (2, 3) and not rep.vacuous and min(
                    red.f - b for b in rep.vertex_bounds) != 0:
                problems.append(f"{tag}: expected equality margin")
    return not problems, (problems[0] if problems
                          else "10 fields: domains, graph, order, Euler all exact")


def crit_high_order(ctx):
    mesh = ctx.nodal_disk()
    pts = mesh.node_positions
    r = np.linalg.norm(pts, axis=1)
    th = np.arctan2(pts[:, 1], pts[:, 0])
    rng = np.random.default_rng(20240811)
    trials = 0
    worst_resid = 0.0
    problems = []
    for n in range(1, 5):
        deg = n + 2
        basis_fields = [np.ones(mesh.n_nodes)]
        for i in range(1, deg + 1):
            basis_fields.append(r ** i * np.cos(i * th))
            basis_fields.append(r ** i * np.sin(i * th))
        B = np.stack(basis_fields, axis=1)
        for _ in range(26):
            trials += 1
            coeffs = rng.standard_normal((B.shape[1], 2 * n))
            fields = [B @ coeffs[:, j] for j in range(2 * n)]
            res = nodal.high_order_combination(mesh, fields, (0.0, 0.0), n, 0.4)
            rel = res.residual / max(res.matrix_norm, 1e-300)
            worst_resid = max(worst_resid, rel)
            if rel > 1e-6:
                problems.append(f"n={n}: residual {rel:.1e}")
                continue
            combo = sum(a * f for a, f in zip(res.alpha, fields))
            est = nodal.estimate_order(mesh, combo, (0.0, 0.0), 0.4,
                                       max_order=n + 3)
            if est.order is None or est.order < n:
                problems.append(f"n={n}: order {est.order} < {n}")
    return not problems, (problems[0] if problems else
                          f"{trials} trials, worst residual {worst_resid:.1e} "
                          "(tol 1e-06)")


# -- embedded graph suite ---------------------------------------------------

def _brute_simple_paths(adj, start, goal_test, block=()):
    """All simple paths from start to nodes satisfying goal_test, avoiding
    ``block`` except at the start; yields edge-id tuples."""
    out = []
    blocked = set(block) - {start}

    def dfs(node, edges_used, nodes_used):
        if goal_test(node) and edges_used:
            out.append(tuple(edges_used))
            return  # boundary leaves have degree 1, nothing beyond
        for eid, nb in adj.get(node, ()):
            if eid in edges_used or nb in nodes_used or nb in blocked:
                continue
            dfs(nb, edges_used + [eid], nodes_used | {nb})

    dfs(start, [], {start})
    return out


def _brute_decompose(rs, x):
    """Exhaustive-path recomputation of the decomposition at x."""
    adj, endpoints = maps._split_graph(rs)
    xnode = ("i", int(x))
    comp = maps._component(adj, xnode)

    # circuit edges: edge on some simple cycle (loops included)
    circuit = set()
    for e, (a, b) in endpoints.items():
        if a not in comp:
            continue
        if a == b:
            circuit.add(e)
            continue

        def dfs(node, target, used_edges, used_nodes):
            if node == target:
                return True
            for eid, nb in adj.get(node, ()):
                if eid in used_edges or nb in used_nodes:
                    continue
                if dfs(nb, target, used_edges | {eid}, used_nodes | {nb}):
                    return True
            return False

        if dfs(a, b, {e}, {a}):
            circuit.add(e)

    circuit_nodes = set()
    for e in circuit:
        circuit_nodes.update(endpoints[e])
    gamma1 = set(circuit)
    for path in _brute_simple_paths(adj, xnode,
                                    lambda nd: nd in circuit_nodes):
        gamma1.update(path)

    g1_nodes = {xnode}
    for e in gamma1:
        g1_nodes.update(endpoints[e])
    gamma2 = set()
    for path in _brute_simple_paths(adj, xnode, lambda nd: nd[0] == "b",
                                    block=g1_nodes):
        if not any(e in gamma1 for e in path):
            gamma2.update(path)
    return frozenset(gamma1), frozenset(gamma2)


def _complement_components(rs, subgraph):
    """Components of (faces + deleted edges) by BFS; independent of the
    union-find path used by euler_defect."""
    sub = set(subgraph)
    deleted = [e for e in range(rs.n_edges) if e not in sub]
    n_f = rs.n_faces
    adj = {("f", i): [] for i in range(n_f)}
    for e in deleted:
        adj[("e", e)] = []
        d1, d2 = rs.edge_darts[e]
        for d in (d1, d2):
            f = ("f", int(rs.face_of_dart[d]))
            adj[("e", e)].append(f)
            adj[f].append(("e", e))
    seen = set()
    comps = 0
    for node in adj:
        if node in seen or node[0] != "f":
            continue
        comps += 1
        stack = [node]
        seen.add(node)
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return comps


def _check_tree(rs, dec):
    """Independent acyclicity/connectivity check of the boundary tree."""
    adj, endpoints = maps._split_graph(rs)
    nodes = set()
    for e in dec.tree_part:
        nodes.update(endpoints[e])
    if not dec.tree_part:
        return True
    nodes.add(("i", dec.x))
    # connected from x using only tree edges, and |E| = |V| - 1
    seen = {("i", dec.x)}
    stack = [("i", dec.x)]
    while stack:
        cur = stack.pop()
        for eid, nb in adj.get(cur, ()):
            if eid in dec.tree_part and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen == nodes and len(dec.tree_part) == len(nodes) - 1


def crit_graph_fuzz(ctx, n_random=10000, seed=20240811, max_edges=4):
    rng = np.random.default_rng(seed)
    problems = []

    for trial in range(n_random):
        rs = maps.random_rotation_system(rng, int(rng.integers(1, 8)))
        if not maps.degree_sum_check(rs):
            problems.append(f"trial {trial}: handshake failed")
            break
        edges = [e for e in range(rs.n_edges) if rng.random() < 0.5]
        if maps.euler_defect(rs, edges) < 0:
            problems.append(f"trial {trial}: negative defect")
            break
        unmarked = [v for v in range(rs.n_vertices) if v not in rs.marks]
        x = unmarked[int(rng.integers(0, len(unmarked)))]
        rep = maps.circuit_degree_check(rs, x)
        if not rep.rejected:
            if not rep.ok:
                problems.append(f"trial {trial}: bound violated")
                break
            dec = maps.decompose_at_vertex(rs, x)
            if not dec.degree_identity_ok or not dec.tree_count_ok:
                problems.append(f"trial {trial}: degree identities failed")
                break
            if not _check_tree(rs, dec):
                problems.append(f"trial {trial}: boundary part not a tree")
                break

    sweep_cases = sweep_checked = 0
    if not problems:
        for ne in range(1, max_edges + 1):
            for rs0 in maps.enumerate_vertex_rotations(ne):
                nv = rs0.n_vertices
                if nv < 2:
                    continue
                chi = rs0.surface_euler
                defect_pkg = maps.euler_defect(rs0, range(rs0.n_edges - 1))
                f_oracle = _complement_components(rs0, range(rs0.n_edges - 1))
                defect_oracle = (rs0.n_vertices - (rs0.n_edges - 1)
                                 + f_oracle - chi)
                if defect_pkg != defect_oracle or defect_pkg < 0:
                    problems.append(f"defect mismatch on {rs0.sigma.tolist()}")
                    break
                for n_marks in range(1, min(3, nv - 1) + 1):
                    for marks in itertools.combinations(range(nv), n_marks):
                        rsm = maps.RotationSystem(rs0.sigma, marks=marks)
                        for x in range(nv):
                            if x in marks:
                                continue
                            sweep_cases += 1
                            rep = maps.circuit_degree_check(rsm, x)
                            try:
                                dec = maps.decompose_at_vertex(rsm, x)
                            except maps.RotationSystemError:
                                dec = None
                            if dec is not None:
                                g1, g2 = _brute_decompose(rsm, x)
                                if (dec.circuit_part != g1
                                        or dec.tree_part != g2):
                                    problems.append(
                                        f"decomposition mismatch "
                                        f"{rs0.sigma.tolist()} {marks} x={x}")
                            if not rep.rejected:
                                sweep_checked += 1
                                if not rep.ok:
                                    problems.append(
                                        f"sweep violation {rs0.sigma.tolist()} "
                                        f"{marks} x={x}")
                        if problems:
                            break
                    if problems:
                        break
                if problems:
                    break
            if problems:
                break

    detail = (problems[0] if problems else
              f"{n_random} random + {sweep_cases} exhaustive cases "
              f"({sweep_checked} bound-checked), 0 violations")
    return not problems, detail


def crit_robin(ctx):
    from scipy.special import jn_zeros
    problems = []
    disk = ctx.robin_disk()

    def build_d():
        return robin.compute_robin_spectrum(
            disk, robin.RobinData.dirichlet(disk), count=12)
    sysd, specd = ctx.get("robin_disk_dirichlet", build_d)
    j01sq = jn_zeros(0, 1)[0] ** 2
    rel = abs(specd.eigenvalues[0] - j01sq) / j01sq
    if rel > 1e-2:
        problems.append(f"dirichlet disk bottom off by {rel:.1e}")

    def build_n():
        return robin.compute_robin_spectrum(disk, None, count=12)
    sysn, specn = ctx.get("robin_disk_neumann", build_n)

    def build_s():
        data = robin.RobinData(disk, potential=2.5 * np.ones(disk.n_nodes))
        return robin.compute_robin_spectrum(disk, data, count=12)
    _, specs = ctx.get("robin_disk_shift", build_s)
    shift_err = np.abs(specs.eigenvalues - specn.eigenvalues - 2.5).max()
    if shift_err > 1e-10:
        problems.append(f"potential shift error {shift_err:.1e}")

    square = ctx.robin_square()

    def build_sq():
        return robin.compute_robin_spectrum(square, None, count=12)
    _, specsq = ctx.get("robin_square_neumann", build_sq)
    rel_sq = abs(specsq.eigenvalues[1] - 1.0)
    if rel_sq > 1e-2:
        problems.append(f"pi-square first mode off by {rel_sq:.1e}")

    n_entries = 0
    for m, spec in ((disk, specd), (disk, specn), (square, specsq)):
        clusters = spectral.cluster_multiplicities(spec)
        rep = robin.check_robin_bounds(clusters, m.topology(), max_k=10)
        n_entries += len(rep.entries)
        if not rep.ok:
            problems.append("robin bound violation")
    return not problems, (problems[0] if problems else
                          f"bessel {rel:.1e}, square {rel_sq:.1e}, shift "
                          f"{shift_err:.1e}, {n_entries} bound entries clean")


def crit_quadruples(ctx):
    mesh = ctx.square_fem()
    _, _, spec = ctx.square_spectrum()
    rep = spectral.quadruple_check(spec, mesh)
    detail = (f"offset {rep.offset}, spreads "
              + "/".join(f"{s:.1e}" for s in rep.spreads[:5])
              + f", best decreasing run {rep.decreasing_run}")
    if not rep.conclusive:
        return False, "inconclusive (mesh too coarse)"
    return rep.ok, detail


def _robin_cases(ctx):
    crit_robin(ctx)  # ensure caches
    disk = ctx.robin_disk()
    square = ctx.robin_square()
    return [
        ("robin_disk_dirichlet", disk, ctx._cache["robin_disk_dirichlet"][1]),
        ("robin_disk_neumann", disk, ctx._cache["robin_disk_neumann"][1]),
        ("robin_square_neumann", square, ctx._cache["robin_square_neumann"][1]),
    ]


SUITES = {
    "disk-spectrum": crit_disk_spectrum,
    "annulus-spectrum": crit_annulus_spectrum,
    "bounds": crit_bounds,
    "courant": crit_courant,
    "pairing": crit_pairing,
    "weyl": crit_weyl,
    "nodal-oracle": crit_nodal_oracle,
    "high-order": crit_high_order,
    "graph-fuzz": crit_graph_fuzz,
    "robin": crit_robin,
    "quadruples": crit_quadruples,
}


def run_verify(names=None, ctx=None):
    """Run the named suites (all by default); returns CriterionResults."""
    if ctx is None:
        ctx = VerifyContext()
    if names is None:
        names = list(SUITES)
    elif isinstance(names, str):
        names = [names]
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(
                f"unknown suite '{name}'; available: {', '.join(sorted(SUITES))}")
        t0 = time.time()
        passed, detail = SUITES[name](ctx)
        results.append(CriterionResult(name, passed, detail, time.time() - t0))
    return results


def format_results(results):
    lines = [r.line() for r in results]
    n_bad = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - n_bad}/{len(results)} suites passed")
    return "\n".join(lines)
