"""Robin / Dirichlet / Neumann eigenproblems for -Laplace + potential.

The bilinear form is the Dirichlet energy plus a lumped potential term
plus, on boundary vertices with ``b != 0``, a lumped boundary term with
weight a/b (from eliminating the normal derivative via a u + b du/dnu =
0).  Vertices with ``b = 0`` are Dirichlet and are removed from the
system; mixed boundaries come out of the per-vertex split.  The mass
matrix is the lumped (one third per corner) area mass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as dla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import assemble_stiffness, lumped_area_mass

_DENSE_LIMIT = 2600


class RobinData:
    """Potential and boundary operator coefficients.

    ``boundary_a`` / ``boundary_b`` are aligned with
    ``mesh.boundary_nodes``; they may not vanish simultaneously at a
    vertex.  Defaults give the free (Neumann) problem with zero
    potential.
    """

    def __init__(self, mesh, potential=None, boundary_a=None, boundary_b=None):
        self.mesh = mesh
        n = mesh.n_nodes
        nb = len(mesh.boundary_nodes)
        self.potential = (np.zeros(n) if potential is None
                          else np.asarray(potential, dtype=float))
        if self.potential.shape != (n,):
            raise ValueError(f"potential must have {n} entries")
        self.boundary_a = (np.zeros(nb) if boundary_a is None
                           else np.asarray(boundary_a, dtype=float))
        self.boundary_b = (np.ones(nb) if boundary_b is None
                           else np.asarray(boundary_b, dtype=float))
        if self.boundary_a.shape != (nb,) or self.boundary_b.shape != (nb,):
            raise ValueError(f"boundary coefficients must have {nb} entries")
        if ((self.boundary_a == 0) & (self.boundary_b == 0)).any():
            raise ValueError("(a, b) = (0, 0) at a boundary vertex")

    @classmethod
    def dirichlet(cls, mesh, potential=None):
        nb = len(mesh.boundary_nodes)
        return cls(mesh, potential, np.ones(nb), np.zeros(nb))

    @classmethod
    def neumann(cls, mesh, potential=None):
        return cls(mesh, potential)

    @classmethod
    def robin(cls, mesh, ratio, potential=None):
        """Constant a/b = ratio on the whole boundary."""
        nb = len(mesh.boundary_nodes)
        return cls(mesh, potential, ratio * np.ones(nb), np.ones(nb))

    @property
    def dirichlet_nodes(self):
        return self.mesh.boundary_nodes[self.boundary_b == 0]


@dataclass
class RobinSystem:
    """Reduced stiffness-like form and lumped mass over retained nodes."""

    matrix: sp.csr_matrix
    mass: np.ndarray
    retained: np.ndarray
    n_nodes: int


def assemble_robin(mesh, data):
    """Assemble the Robin problem; Dirichlet vertices are eliminated."""
    K = assemble_stiffness(mesh)
    area = lumped_area_mass(mesh)
    diag = area * data.potential

    robin_diag = np.zeros(mesh.n_nodes)
    ab = np.zeros(mesh.n_nodes)
    bmask = np.zeros(mesh.n_nodes, dtype=bool)
    bvals = np.zeros(mesh.n_nodes)
    bmask[mesh.boundary_nodes] = data.boundary_b != 0
    ab[mesh.boundary_nodes[data.boundary_b != 0]] = (
        data.boundary_a[data.boundary_b != 0]
        / data.boundary_b[data.boundary_b != 0])
    for a_node, b_node, h in zip(mesh.boundary_edge_nodes[:, 0],
                                 mesh.boundary_edge_nodes[:, 1],
                                 mesh.boundary_edge_lengths):
        for node in (a_node, b_node):
            if bmask[node]:
                robin_diag[node] += h / 2.0 * ab[node]

    A = (K + sp.diags(diag + robin_diag)).tocsr()
    dirichlet = set(int(v) for v in data.dirichlet_nodes)
    retained = np.array([v for v in range(mesh.n_nodes)
                         if v not in dirichlet], dtype=np.int64)
    A = A[np.ix_(retained, retained)].tocsr()
    M = area[retained]
    return RobinSystem(A, M, retained, mesh.n_nodes)


@dataclass
class RobinSpectrum:
    """Ascending eigenpairs; vectors are zero on Dirichlet vertices."""

    eigenvalues: np.ndarray
    extensions: np.ndarray      # (n_nodes, count), mass-orthonormal

    def __len__(self):
        return len(self.eigenvalues)


def solve_robin(system, count):
    """First ``count`` eigenpairs of the Robin pencil, ascending.

    Small systems go through the dense symmetric solver; larger ones use
    shift-invert Lanczos below a certified lower bound of the spectrum,
    with a fixed starting vector so results are reproducible.
    """
    n = len(system.retained)
    if count < 1 or count > n:
        raise ValueError(f"count must be in 1..{n}")
    d = np.sqrt(system.mass)
    if n <= _DENSE_LIMIT:
        T = system.matrix.toarray() / np.outer(d, d)
        T = (T + T.T) / 2.0
        w, Y = dla.eigh(T)
        w, Y = w[:count], Y[:, :count]
    else:
        A = system.matrix
        # generalized Gershgorin lower bound for the pencil (A, M)
        absA = abs(A)
        radii = np.asarray(absA.sum(axis=1)).ravel() - abs(A.diagonal())
        lb = float(np.min((A.diagonal() - radii) / system.mass))
        sigma = lb - 1.0
        Dinv = sp.diags(1.0 / d)
        T = (Dinv @ A @ Dinv).tocsc()
        v0 = np.ones(n) / np.sqrt(n)
        w, Y = spla.eigsh(T, k=count, sigma=sigma, which="LM", v0=v0)
        order = np.argsort(w)
        w, Y = w[order], Y[:, order]
    vectors = Y / d[:, None]
    full = np.zeros((system.n_nodes, count))
    full[system.retained] = vectors
    return RobinSpectrum(w.copy(), full)


def compute_robin_spectrum(mesh, data=None, count=12):
    """Assemble and solve in one go; returns (system, spectrum)."""
    if data is None:
        data = RobinData(mesh)
    system = assemble_robin(mesh, data)
    return system, solve_robin(system, count)


@dataclass
class RobinBoundReport:
    entries: list
    chi_bar: int

    @property
    def ok(self):
        return all(e["pass"] for e in self.entries)

    @property
    def violations(self):
        return [e for e in self.entries if not e["pass"]]


def check_robin_bounds(clusters, topology, max_k=None):
    """Multiplicity bound 2 (2 - chibar) + 2 k + 1 for Robin clusters.

    The bound depends only on the topology, not on the potential or the
    boundary operator.  Report-only, like the Steklov checker.
    """
    chi_bar = topology.reduced_euler
    entries = []
    for c in clusters:
        k = c.first_index
        if k < 1 or (max_k is not None and k > max_k):
            continue
        bound = 2 * (2 - chi_bar) + 2 * k + 1
        entries.append({
            "k": k,
            "m": c.dim,
            "value": c.value,
            "bound_in1": bound,
            "pass": c.dim <= bound,
        })
    return RobinBoundReport(entries, chi_bar)
