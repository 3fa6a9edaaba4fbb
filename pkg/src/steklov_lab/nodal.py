"""Nodal sets of piecewise-linear fields as embedded graphs.

A field defined on the mesh nodes is linear on every triangle, so its
zero set is a union of straight segments (one per mixed-sign triangle),
plus whole edges and vertices where node values fall below the zero
tolerance.  The segment soup is chained into arcs; arc ends that are not
on the boundary are merged within ``cluster_radius`` into interior
vertices.  A point where 2n nodal rays meet (a zero of local order n)
appears either as a single exact-zero junction or as a tight cluster of
ends around the sub-tolerance blob, and the merge recovers a degree-2n
vertex in both situations.

Nodal domains are counted independently of the graph structure: every
mixed triangle is split by its zero segment into a positive and a
negative sub-region and same-sign sub-regions are joined across shared
edges; the count is the number of connected components.  The two code
paths (domain counting and graph extraction) are deliberately separate
so one can cross-check the other.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components


def fem_zero_tol(mesh):
    """Relative zero tolerance for solver eigenfunctions: 10 h^2."""
    return 10.0 * mesh.h_median ** 2


def default_cluster_radius(mesh):
    """Merge radius for interior vertices: three mesh cells."""
    return 3.0 * mesh.h_median


def sign_field(mesh, u, zero_tol=1e-9):
    """Per-node sign in {-1, 0, +1}; zero when |u| <= zero_tol * max|u|."""
    u = np.asarray(u, dtype=float)
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive")
    cut = zero_tol * np.max(np.abs(u))
    s = np.zeros(mesh.n_nodes, dtype=np.int8)
    s[u > cut] = 1
    s[u < -cut] = -1
    return s


# ---------------------------------------------------------------------------
# nodal domains
# ---------------------------------------------------------------------------

@dataclass
class NodalDomains:
    """Connected sign regions of a PL field.

    ``plus_labels[t]`` / ``minus_labels[t]`` give the component id of the
    positive / negative part of triangle ``t`` (-1 when absent).
    """

    count: int
    plus_labels: np.ndarray
    minus_labels: np.ndarray


def nodal_domains(mesh, u, zero_tol=1e-9):
    """Count the sign regions of the PL interpolant of ``u``.

    Mixed triangles are split along their zero segment; sub-regions of
    equal sign connect across a shared edge exactly when the edge carries
    points of that sign.  Raises when ``u`` is below tolerance everywhere.
    """
    s = sign_field(mesh, u, zero_tol)
    if not s.any():
        raise ValueError("field is below the zero tolerance everywhere")
    st = s[mesh.tri_nodes]
    has_plus = (st == 1).any(axis=1)
    has_minus = (st == -1).any(axis=1)
    n_tri = len(st)
    plus_id = np.full(n_tri, -1, dtype=np.int64)
    minus_id = np.full(n_tri, -1, dtype=np.int64)
    n_plus = int(has_plus.sum())
    plus_id[has_plus] = np.arange(n_plus)
    minus_id[has_minus] = n_plus + np.arange(int(has_minus.sum()))
    n_sub = n_plus + int(has_minus.sum())

    t1, t2, na, nb = mesh.interior_edges
    sa, sb = s[na], s[nb]
    rows, cols = [], []
    mask = (sa == 1) | (sb == 1)
    rows.append(plus_id[t1[mask]])
    cols.append(plus_id[t2[mask]])
    mask = (sa == -1) | (sb == -1)
    rows.append(minus_id[t1[mask]])
    cols.append(minus_id[t2[mask]])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    assert (rows >= 0).all() and (cols >= 0).all()
    graph = sp.coo_matrix((np.ones(len(rows)), (rows, cols)),
                          shape=(n_sub, n_sub))
    count, labels = connected_components(graph, directed=False)
    plus_labels = np.where(plus_id >= 0, labels[np.clip(plus_id, 0, None)], -1)
    minus_labels = np.where(minus_id >= 0, labels[np.clip(minus_id, 0, None)], -1)
    return NodalDomains(int(count), plus_labels, minus_labels)


# ---------------------------------------------------------------------------
# graph extraction
# ---------------------------------------------------------------------------

@dataclass
class NodalArc:
    """Polyline nodal arc; an end is ('interior', i), ('boundary', i),
    or None for a closed curve."""

    points: np.ndarray
    end1: tuple | None
    end2: tuple | None

    @property
    def closed(self):
        return self.end1 is None

    @property
    def is_loop(self):
        return self.closed or (self.end1 == self.end2
                               and self.end1[0] == "interior")


@dataclass
class InteriorVertex:
    position: np.ndarray
    degree: int
    order: int


@dataclass
class BoundaryEndpoint:
    position: np.ndarray
    component: int


class NodalGraph:
    """Embedded graph structure of the zero set of a PL field."""

    def __init__(self, mesh, u, zero_tol, arcs, interior_vertices,
                 boundary_endpoints, warnings=()):
        self.mesh = mesh
        self.u = u
        self.zero_tol = zero_tol
        self.arcs = arcs
        self.interior_vertices = interior_vertices
        self.boundary_endpoints = boundary_endpoints
        self.warnings = list(warnings)

    @property
    def loop_count(self):
        return sum(1 for a in self.arcs if a.is_loop)

    @property
    def empty(self):
        return not self.arcs and not self.interior_vertices

    def summary(self):
        return {
            "arcs": len(self.arcs),
            "interior_vertices": len(self.interior_vertices),
            "boundary_endpoints": len(self.boundary_endpoints),
            "loops": self.loop_count,
        }


def _single_linkage(points, radius):
    """Cluster indices of ``points`` with single-linkage threshold."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(points[i] - points[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    labels = [find(i) for i in range(n)]
    remap = {}
    out = []
    for lab in labels:
        if lab not in remap:
            remap[lab] = len(remap)
        out.append(remap[lab])
    return out, len(remap)


def extract_nodal_graph(mesh, u, zero_tol=1e-9, cluster_radius=None):
    """March the triangles and assemble the nodal graph of ``u``.

    Returns an empty graph (not an error) when ``u`` has no sign change.
    ``cluster_radius`` defaults to three mesh cells.
    """
    u = np.asarray(u, dtype=float)
    if cluster_radius is None:
        cluster_radius = default_cluster_radius(mesh)
    s = sign_field(mesh, u, zero_tol)

    pos = {}
    segments = set()
    warnings = []
    verts2 = mesh.vertices[:, :2]

    st = s[mesh.tri_nodes]
    tmin, tmax = st.min(axis=1), st.max(axis=1)
    n_all_zero = int(((tmin == 0) & (tmax == 0)).sum())
    if n_all_zero:
        warnings.append(f"{n_all_zero} triangles below zero tolerance")

    def vsite(nodes, chart, i):
        key = ("v", int(nodes[i]))
        if key not in pos:
            pos[key] = verts2[chart[i]].copy()
        return key

    def esite(nodes, chart, i, j):
        a, b = int(nodes[i]), int(nodes[j])
        key = ("e", (a, b) if a < b else (b, a))
        if key not in pos:
            ua, ub = u[nodes[i]], u[nodes[j]]
            t = ua / (ua - ub)
            pos[key] = verts2[chart[i]] + t * (verts2[chart[j]] - verts2[chart[i]])
        return key

    for t in np.flatnonzero(tmin != tmax):
        nodes = mesh.tri_nodes[t]
        chart = mesh.triangles[t]
        signs = st[t]
        zeros = [i for i in range(3) if signs[i] == 0]
        if len(zeros) == 0:
            ends = [esite(nodes, chart, i, j)
                    for i in range(3) for j in range(i + 1, 3)
                    if signs[i] * signs[j] < 0]
            if len(ends) == 2:
                segments.add(tuple(sorted(ends)))
        elif len(zeros) == 1:
            i, j = [k for k in range(3) if k not in zeros]
            if signs[i] * signs[j] < 0:
                segments.add(tuple(sorted((
                    vsite(nodes, chart, zeros[0]),
                    esite(nodes, chart, i, j)))))
        elif len(zeros) == 2:
            segments.add(tuple(sorted((
                vsite(nodes, chart, zeros[0]),
                vsite(nodes, chart, zeros[1])))))

    if not segments:
        return NodalGraph(mesh, u, zero_tol, [], [], [], warnings)

    adj = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    def on_boundary(site):
        kind, val = site
        if kind == "e":
            return val in mesh._boundary_edge_set
        return mesh.is_boundary_node(val)

    junctions = sorted(site for site, nbs in adj.items()
                       if len(nbs) != 2 and not on_boundary(site))
    vertex_of_site = {}
    members = []
    if junctions:
        jpos = np.array([pos[site] for site in junctions])
        labels, n_clusters = _single_linkage(jpos, cluster_radius)
        members = [[] for _ in range(n_clusters)]
        for site, lab in zip(junctions, labels):
            vertex_of_site[site] = lab
            members[lab].append(site)

    kept = []
    for a, b in sorted(segments):
        va, vb = vertex_of_site.get(a), vertex_of_site.get(b)
        if va is not None and va == vb:
            continue
        kept.append((a, b))
    adj = {}
    for a, b in kept:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    terminal = set(vertex_of_site)
    terminal.update(site for site in adj if on_boundary(site))

    arcs = []
    boundary_endpoints = []
    vertex_degree = [0] * len(members)

    def resolve(site):
        if site in vertex_of_site:
            vid = vertex_of_site[site]
            vertex_degree[vid] += 1
            return ("interior", vid)
        kind, val = site
        comp = (mesh.node_component[val[0]] if kind == "e"
                else mesh.node_component[val])
        boundary_endpoints.append(BoundaryEndpoint(pos[site].copy(), comp))
        return ("boundary", len(boundary_endpoints) - 1)

    used = set()

    def seg_key(a, b):
        return (a, b) if a <= b else (b, a)

    for t0 in sorted(terminal):
        for start in sorted(adj.get(t0, [])):
            k = seg_key(t0, start)
            if k in used:
                continue
            used.add(k)
            pts = [pos[t0]]
            prev, cur = t0, start
            while cur not in terminal:
                pts.append(pos[cur])
                nxt = [x for x in adj[cur] if x != prev][0]
                used.add(seg_key(cur, nxt))
                prev, cur = cur, nxt
            pts.append(pos[cur])
            arcs.append(NodalArc(np.array(pts), resolve(t0), resolve(cur)))

    # whatever is left consists of closed curves through degree-2 sites
    for a, b in sorted(kept):
        if seg_key(a, b) in used:
            continue
        used.add(seg_key(a, b))
        pts = [pos[a], pos[b]]
        prev, cur = a, b
        while cur != a:
            nxt = [x for x in adj[cur] if x != prev][0]
            used.add(seg_key(cur, nxt))
            prev, cur = cur, nxt
            pts.append(pos[cur])
        arcs.append(NodalArc(np.array(pts), None, None))

    interior_vertices = []
    for vid, group in enumerate(members):
        center = np.mean([pos[s_] for s_ in group], axis=0)
        deg = vertex_degree[vid]
        if deg < 4 or deg % 2 != 0:
            warnings.append(
                f"interior vertex {vid} has irregular degree {deg}")
        interior_vertices.append(InteriorVertex(center, deg, max(deg // 2, 0)))

    if len(arcs) > len(mesh.tri_nodes):
        raise AssertionError("nodal graph larger than the mesh; "
                             "extraction is inconsistent")
    return NodalGraph(mesh, u, zero_tol, arcs, interior_vertices,
                      boundary_endpoints, warnings)


# ---------------------------------------------------------------------------
# reduced graph
# ---------------------------------------------------------------------------

@dataclass
class ReducedNodalGraph:
    """Image of a nodal graph after collapsing boundary components.

    ``v`` counts interior vertices, occupied boundary components, and one
    anchor per closed curve; ``f`` is recomputed by the independent
    domain counter, so ``v - e + f`` is a genuine cross-check.
    """

    v: int
    e: int
    f: int
    r: int
    loops: int
    interior_vertices: list
    edges: list

    def euler_characteristic(self):
        return self.v - self.e + self.f


def reduce_graph(graph, mesh=None):
    """Collapse boundary components of a :class:`NodalGraph` to points."""
    mesh = mesh or graph.mesh
    used_components = sorted({be.component for be in graph.boundary_endpoints})
    comp_vertex = {c: i for i, c in enumerate(used_components)}
    n_int = len(graph.interior_vertices)

    edges = []
    closed = 0
    for arc in graph.arcs:
        if arc.closed:
            closed += 1
            edges.append(("anchor", "anchor"))
            continue

        def mapped(end):
            kind, idx = end
            if kind == "interior":
                return ("interior", idx)
            comp = graph.boundary_endpoints[idx].component
            return ("bcomp", comp_vertex[comp])

        edges.append((mapped(arc.end1), mapped(arc.end2)))

    if graph.empty:
        f = 1
        try:
            dom = nodal_domains(mesh, graph.u, graph.zero_tol)
            f = dom.count
        except ValueError:
            pass
    else:
        f = nodal_domains(mesh, graph.u, graph.zero_tol).count

    v = n_int + len(used_components) + closed
    e = len(graph.arcs)
    return ReducedNodalGraph(
        v=v, e=e, f=f, r=len(used_components), loops=graph.loop_count,
        interior_vertices=graph.interior_vertices, edges=edges)


@dataclass
class DomainBoundsReport:
    """Lower bounds on the face count from interior vertex orders."""

    f: int
    order_sum_bound: int
    vertex_bounds: list
    vacuous: bool

    @property
    def margins(self):
        out = [self.f - self.order_sum_bound]
        out.extend(self.f - b for b in self.vertex_bounds)
        return out

    @property
    def ok(self):
        return all(m >= 0 for m in self.margins)


def domain_lower_bounds(reduced, topology, orders=None):
    """Check ``f >= sum(ord - 1) + chibar`` and
    ``f >= 2 ord + 2 chibar - 2 l - 2`` for every interior vertex.

    ``orders`` defaults to the degree-based orders of the reduced graph.
    Report-only: violations show up as negative margins.
    """
    if orders is None:
        orders = [iv.order for iv in reduced.interior_vertices]
    chi_bar = topology.reduced_euler
    l = topology.boundary_count
    sum_bound = sum(o - 1 for o in orders) + chi_bar
    vertex_bounds = [2 * o + 2 * chi_bar - 2 * l - 2 for o in orders]
    return DomainBoundsReport(reduced.f, sum_bound, vertex_bounds,
                              vacuous=not orders)


# ---------------------------------------------------------------------------
# Courant check
# ---------------------------------------------------------------------------

@dataclass
class CourantReport:
    entries: list

    @property
    def ok(self):
        return all(e["pass"] for e in self.entries)

    @property
    def violations(self):
        return [e for e in self.entries if not e["pass"]]


def _worker_count():
    env = os.environ.get("STEKLOV_LAB_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def courant_check(spectrum, clusters, mesh, zero_tol=None, vectors=None):
    """Nodal-domain count of every eigenfunction against k + 1.

    ``k`` is the lowest index of the eigenvalue's cluster.  Runs the
    per-eigenfunction counts on a thread pool (``STEKLOV_LAB_THREADS``
    caps the workers).
    """
    from .spectral import cluster_of_index

    if zero_tol is None:
        zero_tol = fem_zero_tol(mesh)
    if vectors is None:
        vectors = spectrum.extensions
    n_modes = vectors.shape[1]

    def domains(j):
        return nodal_domains(mesh, vectors[:, j], zero_tol).count

    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        counts = list(pool.map(domains, range(n_modes)))

    entries = []
    for j in range(n_modes):
        k = cluster_of_index(clusters, j).first_index
        entries.append({
            "index": j,
            "k": k,
            "domains": counts[j],
            "bound": k + 1,
            "pass": counts[j] <= k + 1,
        })
    return CourantReport(entries)


# ---------------------------------------------------------------------------
# local expansion fits
# ---------------------------------------------------------------------------

def _harmonic_fit(mesh, u, x, fit_radius, max_order):
    """Least-squares expansion of ``u`` around ``x`` in the basis
    (r/R)^i cos(i theta), (r/R)^i sin(i theta), i <= max_order.

    Returns an (max_order + 1, 2) array of scaled coefficient pairs.
    """
    x = np.asarray(x, dtype=float)
    pts = mesh.node_positions[:, :2]
    d = np.linalg.norm(pts - x, axis=1)
    sel = np.flatnonzero(d <= fit_radius)
    n_min = 2 * (2 * max_order + 1)
    if len(sel) < n_min:
        raise ValueError(
            f"ill-conditioned fit: {len(sel)} samples inside radius "
            f"{fit_radius:g}, need at least {n_min}")
    p = pts[sel] - x
    r = np.linalg.norm(p, axis=1) / fit_radius
    theta = np.arctan2(p[:, 1], p[:, 0])
    cols = [np.ones(len(sel))]
    for i in range(1, max_order + 1):
        ri = r ** i
        cols.append(ri * np.cos(i * theta))
        cols.append(ri * np.sin(i * theta))
    A = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(A, np.asarray(u, dtype=float)[sel], rcond=None)
    out = np.zeros((max_order + 1, 2))
    out[0, 0] = coef[0]
    for i in range(1, max_order + 1):
        out[i, 0] = coef[2 * i - 1]
        out[i, 1] = coef[2 * i]
    return out


@dataclass
class OrderEstimate:
    """Vanishing order of a field at a point, with the fitted expansion.

    ``coefficients`` are in the radius-scaled basis; ``coefficient(i)``
    returns the unscaled pair (a_i, b_i) of r^i cos / r^i sin.
    """

    order: int | None
    magnitudes: np.ndarray
    coefficients: np.ndarray
    fit_radius: float
    n_samples: int

    def coefficient(self, i):
        return self.coefficients[i] / self.fit_radius ** i


def estimate_order(mesh, u, x, fit_radius, max_order=6, tau_rel=1e-3):
    """Estimate the local vanishing order of ``u`` at the interior point x.

    The order is the smallest i whose fitted coefficient pair exceeds
    ``tau_rel`` times the largest pair (on the fit-ball scale).
    """
    coeffs = _harmonic_fit(mesh, u, x, fit_radius, max_order)
    mags = np.hypot(coeffs[:, 0], coeffs[:, 1])
    top = mags.max()
    order = None
    if top > 0:
        order = int(np.flatnonzero(mags > tau_rel * top)[0])
    pts = mesh.node_positions[:, :2]
    n_samples = int((np.linalg.norm(pts - np.asarray(x, float), axis=1)
                     <= fit_radius).sum())
    return OrderEstimate(order, mags, coeffs, fit_radius, n_samples)


@dataclass
class CombinationResult:
    """Best coefficient vector wiping out all expansion terms below n."""

    alpha: np.ndarray
    residual: float
    matrix_norm: float
    flagged: bool
    coefficient_matrix: np.ndarray


def high_order_combination(mesh, basis, x, n, fit_radius, fit_order=None):
    """Combination of basis fields vanishing to order >= n at x.

    Builds the (2n - 1) x m matrix of fitted expansion coefficients of
    orders 0 .. n-1 and returns the unit vector minimizing its image.
    With m >= 2n basis fields the matrix cannot have full column rank,
    so the residual is zero up to fit accuracy; smaller bases are served
    best-effort and flagged.
    """
    m = len(basis)
    if m == 0:
        raise ValueError("empty basis")
    if n < 1:
        raise ValueError("order must be >= 1")
    if fit_order is None:
        fit_order = n + 3
    columns = []
    for u in basis:
        coeffs = _harmonic_fit(mesh, u, x, fit_radius, fit_order)
        rows = [coeffs[0, 0]]
        for i in range(1, n):
            rows.extend(coeffs[i])
        columns.append(rows)
    C = np.array(columns).T  # (2n-1, m)
    _, svals, Vt = np.linalg.svd(C)
    alpha = Vt[-1]
    residual = float(np.linalg.norm(C @ alpha))
    return CombinationResult(alpha, residual,
                             float(svals[0]) if len(svals) else 0.0,
                             flagged=m < 2 * n, coefficient_matrix=C)


# ---------------------------------------------------------------------------
# rotation family
# ---------------------------------------------------------------------------

@dataclass
class FamilyStep:
    t: float
    interior_vertices: int
    loops: int
    arcs: int
    boundary_endpoints: int


@dataclass
class FamilyReport:
    steps: list
    precondition_ok: bool
    expected_loops: int | None

    @property
    def constant(self):
        if not self.steps:
            return True
        first = (self.steps[0].interior_vertices, self.steps[0].loops,
                 self.steps[0].arcs)
        return all((s.interior_vertices, s.loops, s.arcs) == first
                   for s in self.steps)


def rotation_family(mesh, u0, u1, n, steps, zero_tol=1e-9,
                    cluster_radius=None, topology=None):
    """Track nodal graphs along ``u0 cos(n t) + u1 sin(n t)``, t in [0, pi).

    Emits one structural summary per step; the precondition flag records
    whether both input fields carry an interior vertex of order ``n`` at
    a common point.  When the topology is supplied the loop count
    ``l + 1 - chibar`` expected in the rigid case is reported alongside.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if cluster_radius is None:
        cluster_radius = default_cluster_radius(mesh)

    g0 = extract_nodal_graph(mesh, u0, zero_tol, cluster_radius)
    g1 = extract_nodal_graph(mesh, u1, zero_tol, cluster_radius)
    precondition_ok = False
    for iv0 in g0.interior_vertices:
        if iv0.order != n:
            continue
        for iv1 in g1.interior_vertices:
            if iv1.order == n and np.linalg.norm(
                    iv0.position - iv1.position) <= cluster_radius:
                precondition_ok = True

    out = []
    for j in range(steps):
        t = math.pi * j / steps
        ut = math.cos(n * t) * np.asarray(u0) + math.sin(n * t) * np.asarray(u1)
        g = extract_nodal_graph(mesh, ut, zero_tol, cluster_radius)
        out.append(FamilyStep(t, len(g.interior_vertices), g.loop_count,
                              len(g.arcs), len(g.boundary_endpoints)))
    expected = None
    if topology is not None:
        expected = topology.boundary_count + 1 - topology.reduced_euler
    return FamilyReport(out, precondition_ok, expected)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def graph_to_text(graph):
    """Plain-text dump: IV / BE / ARC records.

    Arc ends are ``I<k>`` (interior vertex), ``B<k>`` (boundary endpoint,
    in BE line order) or ``-`` for a closed curve.
    """
    lines = []
    for iv in graph.interior_vertices:
        lines.append(f"IV {iv.position[0]!r} {iv.position[1]!r} "
                     f"{iv.degree} {iv.order}")
    for be in graph.boundary_endpoints:
        lines.append(f"BE {be.component}")

    def ref(end):
        if end is None:
            return "-"
        kind, idx = end
        return ("I" if kind == "interior" else "B") + str(idx)

    for i, arc in enumerate(graph.arcs):
        lines.append(f"ARC {i} {ref(arc.end1)} {ref(arc.end2)} {len(arc.points)}")
        for p in arc.points:
            lines.append(f"{p[0]!r} {p[1]!r}")
    return "\n".join(lines) + "\n"


def graph_to_svg(graph, width=640):
    """Standalone SVG of the mesh boundary, nodal arcs and vertices."""
    mesh = graph.mesh
    pts = mesh.node_positions[:, :2]
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = max(hi[0] - lo[0], hi[1] - lo[1]) or 1.0
    pad = 0.05 * span
    scale = width / (span + 2 * pad)

    def xy(p):
        return ((p[0] - lo[0] + pad) * scale,
                (hi[1] - p[1] + pad) * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{width}" viewBox="0 0 {width} {width}">']
    for cycle in mesh.boundary_components:
        d = " ".join(f"{xy(pts[v])[0]:.2f},{xy(pts[v])[1]:.2f}" for v in cycle)
        out.append(f'<polygon points="{d}" fill="none" stroke="#999" '
                   'stroke-width="1"/>')
    for arc in graph.arcs:
        d = " ".join(f"{xy(p)[0]:.2f},{xy(p)[1]:.2f}" for p in arc.points)
        out.append(f'<polyline points="{d}" fill="none" stroke="#c00" '
                   'stroke-width="2"/>')
    for iv in graph.interior_vertices:
        cx, cy = xy(iv.position)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="#00c"/>')
    for be in graph.boundary_endpoints:
        cx, cy = xy(be.position)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="#080"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
