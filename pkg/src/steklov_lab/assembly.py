"""Piecewise-linear discretization of the Steklov eigenvalue problem.

Two forms are assembled over the mesh nodes: the Dirichlet energy
(cotangent stiffness matrix K, constants in its kernel) and the weighted
boundary mass (diagonal matrix M from the trapezoid rule on boundary
edges, so ``trace M = integral of rho ds`` over the polygonal boundary).
The discrete problem is then ``K u = sigma M u``.

Assembly is a single vectorized accumulation in a fixed order, so the
result is reproducible bit for bit.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp


class BoundaryDensity:
    """Non-negative weight per boundary node (the measure density).

    Values are aligned with ``mesh.boundary_nodes`` (ascending node ids).
    The density must be positive on at least one full boundary edge,
    otherwise the eigenvalue problem has empty mass support.
    """

    def __init__(self, mesh, values=None):
        self.mesh = mesh
        n = len(mesh.boundary_nodes)
        if values is None:
            vals = np.ones(n)
        else:
            vals = np.asarray(values, dtype=float)
            if vals.shape != (n,):
                raise ValueError(
                    f"expected {n} boundary values, got shape {vals.shape}")
        if (vals < 0).any():
            raise ValueError("density must be non-negative")
        node_vals = np.zeros(mesh.n_nodes)
        node_vals[mesh.boundary_nodes] = vals
        a = node_vals[mesh.boundary_edge_nodes[:, 0]]
        b = node_vals[mesh.boundary_edge_nodes[:, 1]]
        if not ((a > 0) & (b > 0)).any():
            raise ValueError("density vanishes on every boundary edge")
        self.values = vals
        self.node_values = node_vals

    @classmethod
    def from_function(cls, mesh, fn):
        """Sample ``fn(x, y[, z])`` at the boundary node positions."""
        pts = mesh.node_positions[mesh.boundary_nodes]
        return cls(mesh, np.array([fn(*p) for p in pts]))

    def scaled(self, c):
        return BoundaryDensity(self.mesh, c * self.values)


class SteklovSystem:
    """Assembled forms of the discrete Steklov problem.

    Attributes
    ----------
    stiffness : csr_matrix
        Symmetric PSD Dirichlet energy over all nodes.
    boundary_mass : ndarray
        Diagonal of the boundary mass, zero on interior nodes.
    boundary_index, interior_index : ndarray
        Ascending node-id split.
    """

    def __init__(self, mesh, stiffness, boundary_mass):
        self.mesh = mesh
        self.stiffness = stiffness
        self.boundary_mass = boundary_mass
        self.boundary_index = mesh.boundary_nodes
        self.interior_index = mesh.interior_nodes


def assemble_stiffness(mesh):
    """Cotangent stiffness matrix of the linear elements (csr, symmetric).

    Per triangle the exact integral of grad(hat_i) . grad(hat_j); the
    cotangent form only uses chart-local quantities, so glued meshes are
    handled transparently.  Row sums vanish (constants are in the kernel).
    """
    p = mesh.vertices[mesh.triangles]
    e0 = p[:, 2] - p[:, 1]
    e1 = p[:, 0] - p[:, 2]
    e2 = p[:, 1] - p[:, 0]
    areas = mesh.tri_areas
    if (areas <= 0).any():
        raise ValueError("degenerate triangle in mesh")
    inv = 1.0 / (2.0 * areas)
    cots = np.stack([
        -(e1 * e2).sum(axis=1) * inv,
        -(e2 * e0).sum(axis=1) * inv,
        -(e0 * e1).sum(axis=1) * inv,
    ], axis=1)

    tri = mesh.tri_nodes
    rows, cols, vals = [], [], []
    # corner k is opposite the edge (k+1, k+2)
    for k in range(3):
        i = tri[:, (k + 1) % 3]
        j = tri[:, (k + 2) % 3]
        w = cots[:, k] / 2.0
        rows.extend([i, j, i, j])
        cols.extend([j, i, i, j])
        vals.extend([-w, -w, w, w])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    n = mesh.n_nodes
    K = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    K.sum_duplicates()
    return K


def local_stiffness(points):
    """3x3 element stiffness of a single chart triangle (for testing)."""
    import steklov_lab.mesh as _mesh
    m = _mesh.SurfaceMesh(points, [(0, 1, 2)])
    return assemble_stiffness(m).toarray()


def assemble_boundary_mass(mesh, rho=None):
    """Lumped boundary mass diagonal from the trapezoid rule.

    Each boundary edge of length h with endpoint densities (ra, rb)
    contributes h*ra/2 and h*rb/2 to its endpoints.  Returns the full
    diagonal (zeros on interior nodes).
    """
    if rho is None:
        rho = BoundaryDensity(mesh)
    diag = np.zeros(mesh.n_nodes)
    a = mesh.boundary_edge_nodes[:, 0]
    b = mesh.boundary_edge_nodes[:, 1]
    h = mesh.boundary_edge_lengths
    np.add.at(diag, a, h * rho.node_values[a] / 2.0)
    np.add.at(diag, b, h * rho.node_values[b] / 2.0)
    return diag


def lumped_area_mass(mesh):
    """Lumped interior mass diagonal: one third of each triangle area
    to each of its corners."""
    diag = np.zeros(mesh.n_nodes)
    for k in range(3):
        np.add.at(diag, mesh.tri_nodes[:, k], mesh.tri_areas / 3.0)
    return diag


def build_steklov_system(mesh, rho=None):
    """Assemble stiffness and boundary mass into a :class:`SteklovSystem`."""
    if rho is None:
        rho = BoundaryDensity(mesh)
    K = assemble_stiffness(mesh)
    M = assemble_boundary_mass(mesh, rho)
    return SteklovSystem(mesh, K, M)


def rayleigh_quotient(system, u):
    """(u' K u) / (u' M u); ``inf`` when u has no boundary mass."""
    u = np.asarray(u, dtype=float)
    num = float(u @ (system.stiffness @ u))
    den = float(u @ (system.boundary_mass * u))
    if den <= 0.0:
        return math.inf
    return num / den


def export_triplets(matrix, path):
    """Dump a sparse matrix as text lines ``i j value`` (debug aid)."""
    coo = sp.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w") as fh:
        for k in order:
            fh.write(f"{coo.row[k]} {coo.col[k]} {coo.data[k]!r}\n")
