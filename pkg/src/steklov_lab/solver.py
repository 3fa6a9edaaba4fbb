"""Boundary reduction and eigensolve for the discrete Steklov problem.

The stiffness matrix is reduced to the boundary nodes by a Schur
complement, S = K_BB - K_BI K_II^{-1} K_IB, which is the discrete
operator sending boundary values to the normal derivative of their
harmonic extension.  The generalized problem (S, M) is then solved
densely after a symmetric scaling by the positive boundary masses;
boundary nodes with zero mass are reduced away by a second Schur step,
which is exactly the Neumann condition on weightless boundary pieces.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as dla
import scipy.sparse as sp
import scipy.sparse.linalg as spla


class DtnMatrix:
    """Dense boundary reduction of the stiffness matrix.

    Holds the symmetrized Schur complement over ``boundary_index`` plus
    the interior factorization needed to extend boundary data
    harmonically into the mesh.
    """

    def __init__(self, matrix, boundary_index, interior_index,
                 interior_solve, k_ib, n_nodes):
        self.matrix = matrix
        self.boundary_index = boundary_index
        self.interior_index = interior_index
        self._interior_solve = interior_solve
        self._k_ib = k_ib
        self.n_nodes = n_nodes

    def extend(self, trace):
        """Harmonic extension of boundary data to all nodes.

        ``trace`` may be a vector over the boundary nodes or a matrix
        with one column per field.
        """
        trace = np.asarray(trace, dtype=float)
        squeeze = trace.ndim == 1
        tb = trace.reshape(len(self.boundary_index), -1)
        full = np.zeros((self.n_nodes, tb.shape[1]))
        full[self.boundary_index] = tb
        if len(self.interior_index):
            rhs = self._k_ib @ tb
            full[self.interior_index] = -self._interior_solve(rhs)
        return full[:, 0] if squeeze else full


def schur_dtn(system):
    """Schur-complement the stiffness matrix onto the boundary nodes.

    Raises
    ------
    ValueError
        If the interior block is singular (a connected component of the
        mesh has no boundary node).
    """
    K = system.stiffness.tocsc()
    bi = system.boundary_index
    ii = system.interior_index
    K_bb = K[np.ix_(bi, bi)].toarray()
    if len(ii) == 0:
        S = K_bb
        interior_solve = None
        k_ib = None
    else:
        K_ii = K[np.ix_(ii, ii)].tocsc()
        k_ib = K[np.ix_(ii, bi)].tocsr()
        try:
            lu = spla.splu(K_ii)
        except RuntimeError as exc:
            raise ValueError(
                "interior stiffness block is singular; the mesh has a "
                "component without boundary") from exc
        if np.min(np.abs(lu.U.diagonal())) < 1e-14 * np.max(np.abs(lu.U.diagonal())):
            raise ValueError(
                "interior stiffness block is numerically singular")
        interior_solve = lu.solve
        X = lu.solve(k_ib.toarray())
        S = K_bb - k_ib.T @ X

    scale = np.max(np.abs(S)) or 1.0
    asym = np.max(np.abs(S - S.T)) / scale
    if asym > 1e-10:
        raise RuntimeError(
            f"Schur complement asymmetry {asym:.2e} exceeds tolerance")
    S = (S + S.T) / 2.0
    return DtnMatrix(S, bi, ii, interior_solve, k_ib, system.mesh.n_nodes)


def harmonic_extension(dtn, trace):
    """Extend boundary data into the interior (see :meth:`DtnMatrix.extend`)."""
    return dtn.extend(trace)


class Spectrum:
    """Ascending eigenpairs of the boundary pencil (S, M).

    ``traces`` has one column per mode over the boundary nodes and is
    M-orthonormal; ``extensions`` are the discretely harmonic extensions
    over all nodes.  Immutable; modes inside a numerically degenerate
    cluster carry an arbitrary orthonormal basis.
    """

    def __init__(self, eigenvalues, traces, extensions, boundary_index):
        self.eigenvalues = eigenvalues
        self.traces = traces
        self.extensions = extensions
        self.boundary_index = boundary_index

    def __len__(self):
        return len(self.eigenvalues)


def solve_steklov(dtn, mass, count):
    """First ``count`` generalized eigenpairs of (S, M), ascending.

    ``mass`` is the boundary mass diagonal, either over all nodes or over
    the boundary nodes.  Boundary nodes with zero mass are removed by a
    further Schur complement (Neumann pieces); ``count`` may not exceed
    the number of positive-mass nodes.
    """
    S = dtn.matrix
    nb = len(dtn.boundary_index)
    mass = np.asarray(mass, dtype=float)
    if mass.shape == (dtn.n_nodes,):
        mass = mass[dtn.boundary_index]
    if mass.shape != (nb,):
        raise ValueError("mass diagonal has wrong length")
    if (mass < 0).any():
        raise ValueError("boundary mass must be non-negative")

    support = np.flatnonzero(mass > 0)
    if len(support) == 0:
        raise ValueError("boundary mass has empty support")
    if count > len(support):
        raise ValueError(
            f"requested {count} eigenpairs but mass support has dimension "
            f"{len(support)}")

    if len(support) == nb:
        S_red = S
    else:
        zero = np.flatnonzero(mass == 0)
        S_zz = S[np.ix_(zero, zero)]
        S_zp = S[np.ix_(zero, support)]
        W = dla.solve(S_zz, S_zp, assume_a="pos")
        S_red = S[np.ix_(support, support)] - S_zp.T @ W

    d = np.sqrt(mass[support])
    T = S_red / np.outer(d, d)
    T = (T + T.T) / 2.0
    w, Y = dla.eigh(T)
    w = w[:count]
    Y = Y[:, :count]

    traces = np.zeros((nb, count))
    traces[support] = Y / d[:, None]
    if len(support) < nb:
        traces[np.flatnonzero(mass == 0)] = -W @ traces[support]
    extensions = dtn.extend(traces)
    return Spectrum(w.copy(), traces, extensions, dtn.boundary_index)


def compute_spectrum(mesh, rho=None, count=20):
    """Assemble, reduce and solve; returns (system, dtn, spectrum)."""
    from .assembly import build_steklov_system
    system = build_steklov_system(mesh, rho)
    dtn = schur_dtn(system)
    spectrum = solve_steklov(dtn, system.boundary_mass, count)
    return system, dtn, spectrum


def write_spectrum_csv(path, spectrum, clusters=None):
    """CSV export ``index,eigenvalue,cluster_id`` (deterministic bytes)."""
    cluster_of = {}
    if clusters is not None:
        for cid, c in enumerate(clusters):
            for j in range(c.first_index, c.first_index + c.dim):
                cluster_of[j] = cid
    lines = ["index,eigenvalue,cluster_id"]
    for j, val in enumerate(spectrum.eigenvalues):
        lines.append(f"{j},{float(val)!r},{cluster_of.get(j, '')}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_traces_txt(path, spectrum):
    """Plain-text trace matrix: one row per boundary node."""
    with open(path, "w") as fh:
        fh.write(f"# boundary_nodes {len(spectrum.boundary_index)} "
                 f"modes {len(spectrum)}\n")
        for i, node in enumerate(spectrum.boundary_index):
            row = " ".join(repr(float(x)) for x in spectrum.traces[i])
            fh.write(f"{node} {row}\n")
