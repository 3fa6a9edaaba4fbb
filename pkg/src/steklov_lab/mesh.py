"""Triangulated compact surfaces with boundary.

Vertices live in a planar (or embedded 3D) chart.  An optional vertex
identification map glues chart vertices together, which is how the
non-orientable test surfaces are built from a flat strip.  All metric
quantities (areas, edge lengths, cotangents) are read from the chart
coordinates of each triangle, so gluing changes connectivity but never
the local geometry.

The module also provides the canonical generators (disk, annulus, square,
Moebius band) and a plain-text mesh file format, ``SMESH 1``::

    SMESH 1
    <n_vertices> <n_boundary_edges> <n_triangles>
    x y [z]          (one line per vertex)
    i j k            (one line per triangle, 0-based)
    RHO              (optional: n_vertices density values, one per line)
    GLUE             (optional: pairs "i j" identifying vertex i with j)
    ROBIN            (optional: per boundary vertex "a b", ascending id)
    POT              (optional: n_vertices potential values)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class MeshStructureError(ValueError):
    """A mesh violates a structural invariant (manifoldness, areas, ...)."""


class MeshFormatError(ValueError):
    """A mesh file cannot be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class TopologySummary:
    """Topological invariants of a connected surface with boundary."""

    euler_char: int
    boundary_count: int
    reduced_euler: int
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.reduced_euler != self.euler_char + self.boundary_count:
            raise ValueError("reduced Euler number must equal chi + l")


def _canonical_nodes(n_vertices, identifications):
    """Union-find over chart vertices; returns (node_of_vertex, n_nodes)."""
    parent = np.arange(n_vertices)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for i, j in identifications:
        if not (0 <= i < n_vertices and 0 <= j < n_vertices):
            raise MeshStructureError(f"identification ({i}, {j}) out of range")
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(n_vertices)])
    uniq, node_of_vertex = np.unique(roots, return_inverse=True)
    return node_of_vertex, len(uniq)


class SurfaceMesh:
    """Triangulated compact 2-manifold, possibly with glued chart vertices.

    Parameters
    ----------
    vertices : array_like, shape (V, 2) or (V, 3)
        Chart coordinates.  Every vertex must be used by some triangle.
    triangles : array_like, shape (T, 3)
        Vertex index triples, counter-clockwise in the chart.
    identifications : iterable of (int, int), optional
        Pairs of chart vertices to be glued into a single node.
    kind : str, optional
        Generator tag ("disk", "annulus", "square", "mobius"); loaders
        leave it as None.

    Notes
    -----
    Construction validates the manifold-with-boundary invariants: every
    edge lies in one or two triangles, boundary edges form disjoint simple
    cycles, all chart triangles have positive area, and gluing keeps the
    complex simplicial.  Instances are immutable after construction and
    safe to share between threads.
    """

    def __init__(self, vertices, triangles, identifications=None, kind=None):
        self.vertices = np.asarray(vertices, dtype=float)
        self.triangles = np.asarray(triangles, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] not in (2, 3):
            raise MeshStructureError("vertices must be (V, 2) or (V, 3)")
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise MeshStructureError("triangles must be (T, 3)")
        if self.triangles.size == 0:
            raise MeshStructureError("mesh has no triangles")
        nv = len(self.vertices)
        if self.triangles.min() < 0 or self.triangles.max() >= nv:
            raise MeshStructureError(
                f"triangle vertex index out of range (0..{nv - 1})")
        used = np.zeros(nv, dtype=bool)
        used[self.triangles] = True
        if not used.all():
            raise MeshStructureError(
                f"unused vertex {int(np.flatnonzero(~used)[0])}")

        pairs = [] if identifications is None else [tuple(map(int, p)) for p in identifications]
        self.identifications = tuple(pairs)
        self.node_of_vertex, self.n_nodes = _canonical_nodes(nv, pairs)
        self.tri_nodes = self.node_of_vertex[self.triangles]
        if (np.sort(self.tri_nodes, axis=1)[:, :-1]
                == np.sort(self.tri_nodes, axis=1)[:, 1:]).any():
            bad = int(np.flatnonzero(
                (np.sort(self.tri_nodes, axis=1)[:, :-1]
                 == np.sort(self.tri_nodes, axis=1)[:, 1:]).any(axis=1))[0])
            raise MeshStructureError(
                f"triangle {bad} degenerates to an edge after identification")

        # representative chart position per node (first chart occurrence)
        self.node_positions = np.empty((self.n_nodes, self.vertices.shape[1]))
        first = np.full(self.n_nodes, -1, dtype=np.int64)
        for v in range(nv - 1, -1, -1):
            first[self.node_of_vertex[v]] = v
        self.node_positions[:] = self.vertices[first]

        self.tri_areas = _triangle_areas(self.vertices, self.triangles)
        scale = float(np.max(np.abs(self.vertices - self.vertices.mean(axis=0))))
        if (self.tri_areas <= 1e-14 * max(scale, 1.0) ** 2).any():
            bad = int(np.argmin(self.tri_areas))
            raise MeshStructureError(
                f"triangle {bad} has non-positive area {self.tri_areas[bad]:g}")

        self._build_edges()
        self._build_boundary()
        self.kind = kind
        self.density = None
        self.robin_ab = None
        self.potential = None
        self._topology = None
        self._interior_edge_arrays = None

    # -- connectivity -------------------------------------------------

    def _build_edges(self):
        tri = self.tri_nodes
        raw = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
        tri_of_raw = np.tile(np.arange(len(tri)), 3)
        raw_sorted = np.sort(raw, axis=1)
        edges, inverse, counts = np.unique(
            raw_sorted, axis=0, return_inverse=True, return_counts=True)
        if (counts > 2).any():
            a, b = edges[int(np.flatnonzero(counts > 2)[0])]
            raise MeshStructureError(
                f"edge ({a}, {b}) belongs to {int(counts.max())} triangles "
                "(duplicated triangle or non-manifold gluing)")
        edge_tris = np.full((len(edges), 2), -1, dtype=np.int64)
        slot = np.zeros(len(edges), dtype=np.int64)
        order = np.argsort(inverse, kind="stable")
        for r in order:
            e = inverse[r]
            edge_tris[e, slot[e]] = tri_of_raw[r]
            slot[e] += 1
        self.edges = edges
        self.edge_tris = edge_tris
        self.edge_counts = counts

        # chart edge lengths, taken from the first incident triangle
        self.edge_lengths = np.empty(len(edges))
        for e, (a, b) in enumerate(edges):
            t = edge_tris[e, 0]
            self.edge_lengths[e] = self._chart_edge_length(t, a, b)
        self.h_median = float(np.median(self.edge_lengths))

    def _chart_edge_length(self, t, a, b):
        nodes = self.tri_nodes[t]
        chart = self.triangles[t]
        pa = self.vertices[chart[list(nodes).index(a)]]
        pb = self.vertices[chart[list(nodes).index(b)]]
        return float(np.linalg.norm(pa - pb))

    def _build_boundary(self):
        bmask = self.edge_counts == 1
        self.boundary_edge_ids = np.flatnonzero(bmask)
        bedges = self.edges[bmask]
        bnodes = np.unique(bedges)
        self.boundary_nodes = bnodes
        self._is_boundary = np.zeros(self.n_nodes, dtype=bool)
        self._is_boundary[bnodes] = True
        self.interior_nodes = np.flatnonzero(~self._is_boundary)

        adj = {int(v): [] for v in bnodes}
        for a, b in bedges:
            adj[int(a)].append(int(b))
            adj[int(b)].append(int(a))
        for v, nb in adj.items():
            if len(nb) != 2:
                raise MeshStructureError(
                    f"boundary node {v} has {len(nb)} incident boundary edges; "
                    "boundary must be a union of disjoint simple cycles")

        components = []
        seen = set()
        for start in sorted(adj):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            prev, cur = None, start
            while True:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                if nxt == start:
                    break
                cycle.append(nxt)
                seen.add(nxt)
                prev, cur = cur, nxt
            components.append(cycle)
        components.sort(key=min)
        self.boundary_components = components
        self.node_component = {}
        for label, cycle in enumerate(components):
            for v in cycle:
                self.node_component[v] = label

        self.boundary_edge_nodes = bedges
        self.boundary_edge_lengths = self.edge_lengths[bmask]
        self.boundary_edge_component = np.array(
            [self.node_component[int(a)] for a, _ in bedges], dtype=np.int64)
        self._boundary_edge_set = {tuple(e) for e in bedges.tolist()}

    def is_boundary_node(self, v):
        return bool(self._is_boundary[v])

    @property
    def interior_edges(self):
        """Arrays (t1, t2, na, nb) over edges shared by two triangles."""
        if self._interior_edge_arrays is None:
            mask = self.edge_counts == 2
            self._interior_edge_arrays = (
                self.edge_tris[mask, 0], self.edge_tris[mask, 1],
                self.edges[mask, 0], self.edges[mask, 1])
        return self._interior_edge_arrays

    def boundary_length(self, density=None):
        """Total weighted boundary length, trapezoid rule on edges."""
        if density is None:
            return float(self.boundary_edge_lengths.sum())
        rho = np.asarray(density, dtype=float)
        a = rho[self.boundary_edge_nodes[:, 0]]
        b = rho[self.boundary_edge_nodes[:, 1]]
        return float((self.boundary_edge_lengths * (a + b) / 2).sum())

    # -- topology -------------------------------------------------------

    def _connected(self):
        t1, t2, _, _ = self.interior_edges
        n = len(self.tri_nodes)
        import scipy.sparse as sp
        from scipy.sparse.csgraph import connected_components
        g = sp.coo_matrix((np.ones(len(t1)), (t1, t2)), shape=(n, n))
        ncomp, _ = connected_components(g, directed=False)
        return ncomp == 1

    def _orientable(self):
        # propagate a consistent orientation across shared edges
        t1, t2, na, nb = self.interior_edges
        n_tri = len(self.tri_nodes)
        incident = [[] for _ in range(n_tri)]

        def direction(t, a, b):
            nodes = self.tri_nodes[t]
            for i in range(3):
                if nodes[i] == a and nodes[(i + 1) % 3] == b:
                    return 1
                if nodes[i] == b and nodes[(i + 1) % 3] == a:
                    return -1
            raise AssertionError("edge not found in triangle")

        for k in range(len(t1)):
            d1 = direction(t1[k], na[k], nb[k])
            d2 = direction(t2[k], na[k], nb[k])
            # consistent orientation wants opposite traversal directions
            rel = -d1 * d2
            incident[t1[k]].append((t2[k], rel))
            incident[t2[k]].append((t1[k], rel))

        flip = np.zeros(n_tri, dtype=np.int8)
        for start in range(n_tri):
            if flip[start]:
                continue
            flip[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for u, rel in incident[t]:
                    want = flip[t] * rel
                    if flip[u] == 0:
                        flip[u] = want
                        stack.append(u)
                    elif flip[u] != want:
                        return False
        return True

    def topology(self):
        """Compute the :class:`TopologySummary` of the surface.

        Raises
        ------
        MeshStructureError
            If the surface is closed (no boundary) or disconnected.
        """
        if self._topology is not None:
            return self._topology
        if len(self.boundary_nodes) == 0:
            raise MeshStructureError("surface has empty boundary")
        if not self._connected():
            raise MeshStructureError("mesh is disconnected")
        v = self.n_nodes
        e = len(self.edges)
        f = len(self.tri_nodes)
        chi = v - e + f
        l = len(self.boundary_components)
        orientable = self._orientable()
        chi_bar = chi + l
        genus = (2 - chi_bar) // 2 if orientable else 2 - chi_bar
        self._topology = TopologySummary(chi, l, chi_bar, orientable, genus)
        return self._topology


def _triangle_areas(vertices, triangles):
    p = vertices[triangles]
    u = p[:, 1] - p[:, 0]
    v = p[:, 2] - p[:, 0]
    if vertices.shape[1] == 2:
        return (u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]) / 2.0
    return np.linalg.norm(np.cross(u, v), axis=1) / 2.0


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _zip_rings(inner_ids, outer_ids, inner_ang, outer_ang):
    """Triangulate the strip between two concentric vertex rings.

    Both rings are walked once in increasing angle; at each step the
    pointer with the smaller next angle advances, which yields a valid
    CCW triangulation for arbitrary ring sizes.
    """
    p, q = len(inner_ids), len(outer_ids)
    two_pi = 2 * math.pi

    def ia(m):
        return inner_ang[m % p] + two_pi * (m // p)

    def oa(m):
        return outer_ang[m % q] + two_pi * (m // q)

    tris = []
    i = k = 0
    while i < p or k < q:
        if k < q and (i == p or oa(k + 1) <= ia(i + 1)):
            tris.append((outer_ids[k % q], outer_ids[(k + 1) % q],
                         inner_ids[i % p]))
            k += 1
        else:
            tris.append((inner_ids[(i + 1) % p], inner_ids[i % p],
                         outer_ids[k % q]))
            i += 1
    return tris


def make_disk(radius, refinement):
    """Graded triangulation of a round disk.

    Ring ``j`` (of ``refinement`` rings) carries ``6 j`` vertices at radius
    ``radius * j / refinement``; boundary vertices sit exactly on the
    circle.  Total vertex count is ``1 + 3 n (n + 1)``.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = int(refinement)
    if n < 1:
        raise ValueError("refinement must be >= 1")
    verts = [(0.0, 0.0)]
    rings = [[0]]
    angles = [[0.0]]
    for j in range(1, n + 1):
        m = 6 * j
        r = radius * j / n
        ang = [2 * math.pi * i / m for i in range(m)]
        ids = list(range(len(verts), len(verts) + m))
        verts.extend((r * math.cos(a), r * math.sin(a)) for a in ang)
        rings.append(ids)
        angles.append(ang)
    tris = [(0, rings[1][i], rings[1][(i + 1) % 6]) for i in range(6)]
    for j in range(1, n):
        tris.extend(_zip_rings(rings[j], rings[j + 1], angles[j], angles[j + 1]))
    return SurfaceMesh(verts, tris, kind="disk")


def make_polar_disk(radius, rings, angular):
    """Disk on a uniform polar grid: every ring carries ``angular`` vertices.

    Triangles near the center are thin, so this mesh is meant for sampling
    synthetic fields (its vertex rays hit many rational angles), not for
    solving.
    """
    if radius <= 0 or rings < 1 or angular < 3:
        raise ValueError("need radius > 0, rings >= 1, angular >= 3")
    verts = [(0.0, 0.0)]
    ang = [2 * math.pi * i / angular for i in range(angular)]
    ring_ids = [[0]]
    for j in range(1, rings + 1):
        r = radius * j / rings
        ids = list(range(len(verts), len(verts) + angular))
        verts.extend((r * math.cos(a), r * math.sin(a)) for a in ang)
        ring_ids.append(ids)
    tris = [(0, ring_ids[1][i], ring_ids[1][(i + 1) % angular])
            for i in range(angular)]
    for j in range(1, rings):
        inner, outer = ring_ids[j], ring_ids[j + 1]
        for i in range(angular):
            a, b = inner[i], inner[(i + 1) % angular]
            c, d = outer[i], outer[(i + 1) % angular]
            tris.append((a, c, d))
            tris.append((a, d, b))
    return SurfaceMesh(verts, tris, kind="disk")


def make_annulus(inner, outer, refinement):
    """Structured annulus with ``refinement`` radial layers.

    The angular count is chosen so cells are roughly isotropic at the mid
    radius.  Boundary component 0 is the inner circle, 1 the outer one.
    """
    if not (0 < inner < outer):
        raise ValueError("need 0 < inner < outer")
    nr = int(refinement)
    if nr < 1:
        raise ValueError("refinement must be >= 1")
    dr = (outer - inner) / nr
    m = max(8, int(math.ceil(math.pi * (inner + outer) / dr)))
    verts = []
    for j in range(nr + 1):
        r = inner + dr * j
        for i in range(m):
            a = 2 * math.pi * i / m
            verts.append((r * math.cos(a), r * math.sin(a)))
    tris = []
    for j in range(nr):
        for i in range(m):
            a = j * m + i
            b = j * m + (i + 1) % m
            c = (j + 1) * m + (i + 1) % m
            d = (j + 1) * m + i
            tris.append((a, c, b))
            tris.append((a, d, c))
    return SurfaceMesh(verts, tris, kind="annulus")


def make_square(side, refinement):
    """Criss-cross triangulation of a square (keeps the full D4 symmetry)."""
    if side <= 0:
        raise ValueError("side must be positive")
    n = int(refinement)
    if n < 1:
        raise ValueError("refinement must be >= 1")
    h = side / n
    verts = [(i * h, j * h) for j in range(n + 1) for i in range(n + 1)]
    centers = {}
    for j in range(n):
        for i in range(n):
            centers[(i, j)] = len(verts)
            verts.append(((i + 0.5) * h, (j + 0.5) * h))

    def vid(i, j):
        return j * (n + 1) + i

    tris = []
    for j in range(n):
        for i in range(n):
            c = centers[(i, j)]
            a, b = vid(i, j), vid(i + 1, j)
            d, e = vid(i + 1, j + 1), vid(i, j + 1)
            tris.extend([(a, b, c), (b, d, c), (d, e, c), (e, a, c)])
    return SurfaceMesh(verts, tris, kind="square")


def make_mobius(length, width, refinement):
    """Flat Moebius band: a strip with its short edges glued with a flip.

    ``refinement`` is the cell count across the width and must be even so
    the flip maps grid vertices to grid vertices.  The metric is the flat
    chart metric of the strip.
    """
    if length <= 0 or width <= 0:
        raise ValueError("length and width must be positive")
    ny = int(refinement)
    if ny < 2 or ny % 2 != 0:
        raise ValueError("refinement must be an even integer >= 2")
    nx = max(3, int(round(length / width)) * ny)
    hx, hy = length / nx, width / ny

    def vid(ix, iy):
        return ix * (ny + 1) + iy

    verts = [(ix * hx, iy * hy) for ix in range(nx + 1) for iy in range(ny + 1)]
    tris = []
    for ix in range(nx):
        for iy in range(ny):
            a, b = vid(ix, iy), vid(ix + 1, iy)
            c, d = vid(ix + 1, iy + 1), vid(ix, iy + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    glue = [(vid(nx, iy), vid(0, ny - iy)) for iy in range(ny + 1)]
    return SurfaceMesh(verts, tris, identifications=glue, kind="mobius")


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def load_mesh(path):
    """Read an ``SMESH 1`` file; returns a validated :class:`SurfaceMesh`.

    Optional RHO / ROBIN / POT sections are attached to the mesh as the
    ``density`` (per boundary node), ``robin_ab`` (per boundary node pair)
    and ``potential`` (per node) arrays.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()

    def tokens(idx):
        if idx >= len(lines):
            raise MeshFormatError("unexpected end of file", idx + 1)
        return lines[idx].split()

    i = 0
    while i < len(lines) and not lines[i].strip():
        i += 1
    head = tokens(i)
    if head[:2] != ["SMESH", "1"]:
        raise MeshFormatError("expected header 'SMESH 1'", i + 1)
    i += 1
    counts = tokens(i)
    if len(counts) != 3:
        raise MeshFormatError("expected counts 'V E_b T'", i + 1)
    try:
        nv, nbe, nt = (int(c) for c in counts)
    except ValueError:
        raise MeshFormatError("counts must be integers", i + 1) from None
    i += 1

    verts = []
    for k in range(nv):
        t = tokens(i + k)
        if len(t) not in (2, 3):
            raise MeshFormatError("vertex needs 2 or 3 coordinates", i + k + 1)
        try:
            verts.append([float(x) for x in t])
        except ValueError:
            raise MeshFormatError("bad vertex coordinate", i + k + 1) from None
    if verts and any(len(v) != len(verts[0]) for v in verts):
        raise MeshFormatError("mixed 2D/3D vertex lines", i + 1)
    i += nv

    tris = []
    for k in range(nt):
        t = tokens(i + k)
        if len(t) != 3:
            raise MeshFormatError("triangle needs 3 indices", i + k + 1)
        try:
            tri = [int(x) for x in t]
        except ValueError:
            raise MeshFormatError("bad triangle index", i + k + 1) from None
        if any(ix < 0 or ix >= nv for ix in tri):
            raise MeshFormatError(
                f"triangle references missing vertex {max(tri)}", i + k + 1)
        tris.append(tri)
    i += nt

    rho = glue = robin = pot = None
    while i < len(lines):
        line = lines[i].strip()
        if not line:
            i += 1
            continue
        section = line.split()[0].upper()
        i += 1
        if section == "RHO":
            rho = []
            for k in range(nv):
                try:
                    rho.append(float(tokens(i + k)[0]))
                except ValueError:
                    raise MeshFormatError("bad density value", i + k + 1) from None
            i += nv
        elif section == "GLUE":
            glue = []
            while i < len(lines) and lines[i].strip() and \
                    not lines[i].split()[0].isalpha():
                t = tokens(i)
                if len(t) != 2:
                    raise MeshFormatError("GLUE pair needs 2 indices", i + 1)
                glue.append((int(t[0]), int(t[1])))
                i += 1
        elif section == "ROBIN":
            robin = []
            while i < len(lines) and lines[i].strip() and \
                    not lines[i].split()[0].isalpha():
                t = tokens(i)
                if len(t) != 2:
                    raise MeshFormatError("ROBIN line needs 'a b'", i + 1)
                robin.append((float(t[0]), float(t[1])))
                i += 1
        elif section == "POT":
            pot = []
            for k in range(nv):
                try:
                    pot.append(float(tokens(i + k)[0]))
                except ValueError:
                    raise MeshFormatError("bad potential value", i + k + 1) from None
            i += nv
        else:
            raise MeshFormatError(f"unknown section '{section}'", i)

    mesh = SurfaceMesh(verts, tris, identifications=glue)
    if nbe != len(mesh.boundary_edge_nodes):
        raise MeshFormatError(
            f"header declares {nbe} boundary edges, mesh has "
            f"{len(mesh.boundary_edge_nodes)}")
    if rho is not None:
        node_rho = np.zeros(mesh.n_nodes)
        node_rho[mesh.node_of_vertex] = rho  # representative wins on glue
        mesh.density = node_rho[mesh.boundary_nodes]
    if robin is not None:
        if len(robin) != len(mesh.boundary_nodes):
            raise MeshFormatError(
                f"ROBIN section has {len(robin)} lines, mesh has "
                f"{len(mesh.boundary_nodes)} boundary vertices")
        mesh.robin_ab = np.array(robin)
    if pot is not None:
        node_pot = np.zeros(mesh.n_nodes)
        node_pot[mesh.node_of_vertex] = pot
        mesh.potential = node_pot
    return mesh


def save_mesh(path, mesh, density=None):
    """Write an ``SMESH 1`` file (chart vertices plus GLUE pairs)."""
    lines = ["SMESH 1"]
    lines.append(f"{len(mesh.vertices)} {len(mesh.boundary_edge_nodes)} "
                 f"{len(mesh.triangles)}")
    for p in mesh.vertices:
        lines.append(" ".join(repr(float(x)) for x in p))
    for t in mesh.triangles:
        lines.append(f"{t[0]} {t[1]} {t[2]}")
    if density is not None:
        rho_nodes = np.zeros(mesh.n_nodes)
        rho_nodes[mesh.boundary_nodes] = density
        lines.append("RHO")
        for v in range(len(mesh.vertices)):
            lines.append(repr(float(rho_nodes[mesh.node_of_vertex[v]])))
    if mesh.identifications:
        lines.append("GLUE")
        for a, b in mesh.identifications:
            lines.append(f"{a} {b}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
