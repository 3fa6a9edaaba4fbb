import math

import numpy as np
import pytest

from steklov_lab import (
    BoundaryDensity,
    SurfaceMesh,
    assemble_boundary_mass,
    assemble_stiffness,
    build_steklov_system,
    make_annulus,
    make_disk,
    make_square,
    rayleigh_quotient,
)
from steklov_lab.assembly import local_stiffness


def test_right_triangle_local_stiffness():
    # hand integration of the constant gradients of the hat functions
    K = local_stiffness([(0, 0), (1, 0), (0, 1)])
    expected = np.array([[1.0, -0.5, -0.5],
                         [-0.5, 0.5, 0.0],
                         [-0.5, 0.0, 0.5]])
    assert np.allclose(K, expected)


def test_equilateral_local_stiffness():
    s3 = math.sqrt(3.0)
    K = local_stiffness([(0, 0), (1, 0), (0.5, s3 / 2)])
    assert np.allclose(np.diag(K), 1 / s3)
    off = K[~np.eye(3, dtype=bool)]
    assert np.allclose(off, -1 / (2 * s3))


def test_stiffness_row_sums_vanish():
    mesh = make_annulus(0.5, 1.0, 3)
    K = assemble_stiffness(mesh)
    assert np.abs(K @ np.ones(mesh.n_nodes)).max() < 1e-12


def test_stiffness_rigid_motion_invariant():
    mesh = make_disk(1.0, 4)
    K0 = assemble_stiffness(mesh).toarray()
    c, s = math.cos(0.7), math.sin(0.7)
    R = np.array([[c, -s], [s, c]])
    moved = SurfaceMesh(mesh.vertices @ R.T + np.array([3.0, -2.0]),
                        mesh.triangles)
    K1 = assemble_stiffness(moved).toarray()
    assert np.allclose(K0, K1, atol=1e-12)


def test_linear_field_energy_exact_on_square():
    # piecewise-linear gradients reproduce linear fields exactly
    mesh = make_square(1.0, 7)
    K = assemble_stiffness(mesh)
    u = mesh.node_positions[:, 0]
    assert u @ (K @ u) == pytest.approx(1.0, rel=1e-12)


def test_boundary_mass_sums_to_perimeter():
    for n in (3, 6, 12):
        mesh = make_disk(1.0, n)
        M = assemble_boundary_mass(mesh)
        m = len(mesh.boundary_nodes)
        assert M.sum() == pytest.approx(2 * m * math.sin(math.pi / m), rel=1e-12)
    assert M.sum() == pytest.approx(2 * math.pi, rel=1e-3)


def test_trapezoid_rule_per_edge():
    # edges of the triangle: bottom (len 2), hypotenuse (2 sqrt 2), left (2)
    mesh = SurfaceMesh([(0, 0), (2, 0), (0, 2)], [(0, 1, 2)])
    rho = BoundaryDensity(mesh, np.array([1.0, 3.0, 0.0]))
    M = assemble_boundary_mass(mesh, rho)
    # each incident edge of length h adds h * rho(v) / 2 at vertex v, so
    # the bottom edge alone contributes (1, 3) to its endpoints
    assert M[0] == pytest.approx(2 * 1.0 / 2 + 2 * 1.0 / 2)
    assert M[1] == pytest.approx(2 * 3.0 / 2 + 2 * math.sqrt(2) * 3.0 / 2)
    assert M[2] == 0.0


def test_boundary_mass_zero_rows_on_unweighted_circle():
    mesh = make_annulus(0.5, 1.0, 3)
    vals = np.ones(len(mesh.boundary_nodes))
    inner = np.array([mesh.node_component[int(v)] == 0
                      for v in mesh.boundary_nodes])
    vals[inner] = 0.0
    M = assemble_boundary_mass(mesh, BoundaryDensity(mesh, vals))
    inner_nodes = [v for v in mesh.boundary_nodes
                   if mesh.node_component[int(v)] == 0]
    outer_nodes = [v for v in mesh.boundary_nodes
                   if mesh.node_component[int(v)] == 1]
    assert np.all(M[inner_nodes] == 0.0)
    assert np.all(M[outer_nodes] > 0.0)


def test_boundary_mass_linear_in_density():
    mesh = make_disk(1.0, 4)
    rho = BoundaryDensity(mesh, np.linspace(0.5, 2.0, len(mesh.boundary_nodes)))
    M1 = assemble_boundary_mass(mesh, rho)
    M2 = assemble_boundary_mass(mesh, rho.scaled(3.5))
    assert np.allclose(M2, 3.5 * M1)


def test_all_zero_density_rejected():
    mesh = make_disk(1.0, 3)
    with pytest.raises(ValueError):
        BoundaryDensity(mesh, np.zeros(len(mesh.boundary_nodes)))
    with pytest.raises(ValueError):
        BoundaryDensity(mesh, -np.ones(len(mesh.boundary_nodes)))


def test_rayleigh_quotient_cases():
    mesh = make_disk(1.0, 6)
    system = build_steklov_system(mesh)
    assert rayleigh_quotient(system, np.ones(mesh.n_nodes)) == 0.0
    spike = np.zeros(mesh.n_nodes)
    spike[mesh.interior_nodes[0]] = 1.0
    assert rayleigh_quotient(system, spike) == math.inf
