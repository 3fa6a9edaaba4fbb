import math

import numpy as np
import pytest

from steklov_lab import (
    BoundaryDensity,
    SurfaceMesh,
    build_steklov_system,
    compute_spectrum,
    harmonic_extension,
    make_annulus,
    make_disk,
    rayleigh_quotient,
    schur_dtn,
    solve_steklov,
)
from steklov_lab.solver import write_spectrum_csv

import oracles


def test_no_interior_schur_is_stiffness():
    # two-triangle square: every vertex is on the boundary
    mesh = SurfaceMesh([(0, 0), (1, 0), (1, 1), (0, 1)],
                       [(0, 1, 2), (0, 2, 3)])
    system = build_steklov_system(mesh)
    dtn = schur_dtn(system)
    assert np.allclose(dtn.matrix, system.stiffness.toarray())
    w = np.linalg.eigvalsh(dtn.matrix)
    assert w.min() > -1e-12


def test_dtn_kills_constants(disk_fem, disk_spec):
    system, dtn, _ = disk_spec
    scale = np.abs(dtn.matrix).max()
    assert np.abs(dtn.matrix.sum(axis=1)).max() < 1e-8 * scale
    assert np.abs(dtn.matrix - dtn.matrix.T).max() < 1e-10 * scale


def test_disk_spectrum_against_separation_of_variables(disk_spec):
    _, _, spec = disk_spec
    expected = oracles.DISK_FIRST_11
    assert np.allclose(oracles.disk_eigenvalues(1.0, 11), expected)
    assert abs(spec.eigenvalues[0]) < 1e-6
    rel = np.abs(spec.eigenvalues[1:11] - expected[1:]) / expected[1:]
    assert rel.max() < 1e-2


def test_annulus_spectrum_against_radial_oracle(annulus_spec):
    _, _, spec = annulus_spec
    expected = oracles.ANNULUS_05_1_FIRST_8
    recomputed = oracles.annulus_eigenvalues(0.5, 1.0, 8)
    assert np.allclose(recomputed, expected, rtol=1e-9)
    assert abs(spec.eigenvalues[0]) < 1e-6
    rel = np.abs(spec.eigenvalues[1:8] - expected[1:]) / expected[1:]
    assert rel.max() < 1e-2


def test_ground_state_is_constant(disk_spec):
    _, _, spec = disk_spec
    u0 = spec.extensions[:, 0]
    assert np.abs(u0 - u0.mean()).max() < 1e-6 * np.abs(u0.mean())


def test_traces_mass_orthonormal(disk_spec):
    system, _, spec = disk_spec
    M = system.boundary_mass[spec.boundary_index]
    G = spec.traces.T @ (M[:, None] * spec.traces)
    assert np.abs(G - np.eye(len(spec))).max() < 1e-8


def test_extensions_discretely_harmonic(disk_spec):
    system, _, spec = disk_spec
    res = system.stiffness @ spec.extensions
    scale = np.abs(spec.extensions).max()
    assert np.abs(res[system.interior_index]).max() < 1e-8 * scale


def test_eigenpair_rayleigh_consistency(disk_spec):
    system, _, spec = disk_spec
    for j in (1, 4, 9):
        rq = rayleigh_quotient(system, spec.extensions[:, j])
        assert rq == pytest.approx(spec.eigenvalues[j], rel=1e-8)


def test_density_scaling_covariance():
    mesh = make_disk(1.0, 10)
    rho = BoundaryDensity(mesh)
    _, _, s1 = compute_spectrum(mesh, rho, count=8)
    _, _, s2 = compute_spectrum(mesh, rho.scaled(3.7), count=8)
    assert np.allclose(s2.eigenvalues[1:], s1.eigenvalues[1:] / 3.7,
                       rtol=1e-10)


def test_convergence_rate_on_disk():
    # halving the mesh size reduces the error of sigma_1 by 3x..5x
    errs = []
    for n in (10, 20):
        _, _, spec = compute_spectrum(make_disk(1.0, n), count=3)
        errs.append(abs(spec.eigenvalues[1] - 1.0))
    ratio = errs[0] / errs[1]
    assert 3.0 < ratio < 5.0


def test_harmonic_extension_of_constant(disk_spec):
    _, dtn, _ = disk_spec
    ext = harmonic_extension(dtn, np.full(len(dtn.boundary_index), 2.5))
    assert np.abs(ext - 2.5).max() < 1e-10


def test_harmonic_extension_of_linear_trace(disk_fem, disk_spec):
    _, dtn, _ = disk_spec
    x = disk_fem.node_positions[:, 0]
    ext = harmonic_extension(dtn, x[dtn.boundary_index])
    h = disk_fem.h_median
    assert np.abs(ext - x).max() < 10 * h ** 2


def test_extension_maximum_principle(disk_spec):
    _, dtn, _ = disk_spec
    trace = np.zeros(len(dtn.boundary_index))
    trace[0] = 1.0
    ext = harmonic_extension(dtn, trace)
    interior = ext[dtn.interior_index]
    assert interior.min() > -1e-10 and interior.max() < 1.0 + 1e-10


def test_zero_mass_boundary_stretch_reduces_support():
    # weightless inner circle behaves like a free (Neumann) boundary piece
    mesh = make_annulus(0.5, 1.0, 6)
    vals = np.ones(len(mesh.boundary_nodes))
    inner = np.array([mesh.node_component[int(v)] == 0
                      for v in mesh.boundary_nodes])
    vals[inner] = 0.0
    system = build_steklov_system(mesh, BoundaryDensity(mesh, vals))
    dtn = schur_dtn(system)
    spec = solve_steklov(dtn, system.boundary_mass, count=6)
    assert abs(spec.eigenvalues[0]) < 1e-8
    assert (np.diff(spec.eigenvalues) > -1e-12).all()
    # traces exist on the whole boundary, including the weightless circle
    assert spec.traces.shape[0] == len(mesh.boundary_nodes)
    system_full = build_steklov_system(mesh)
    spec_full = solve_steklov(dtn, system_full.boundary_mass, count=6)
    assert not np.allclose(spec_full.eigenvalues[1], spec.eigenvalues[1])


def test_count_exceeding_support_rejected(disk_spec):
    system, dtn, _ = disk_spec
    with pytest.raises(ValueError, match="support"):
        solve_steklov(dtn, system.boundary_mass,
                      count=len(dtn.boundary_index) + 1)


def test_spectrum_csv_deterministic(tmp_path, disk_spec):
    _, _, spec = disk_spec
    from steklov_lab import cluster_multiplicities
    clusters = cluster_multiplicities(spec)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_spectrum_csv(p1, spec, clusters)
    write_spectrum_csv(p2, spec, clusters)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[0] == "index,eigenvalue,cluster_id"
