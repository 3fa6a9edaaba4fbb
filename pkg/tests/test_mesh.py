import numpy as np
import pytest

from steklov_lab import (
    MeshFormatError,
    MeshStructureError,
    SurfaceMesh,
    load_mesh,
    make_annulus,
    make_disk,
    make_mobius,
    make_polar_disk,
    make_square,
    save_mesh,
)


def test_single_triangle_topology():
    mesh = SurfaceMesh([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])
    t = mesh.topology()
    assert (t.euler_char, t.boundary_count, t.reduced_euler) == (1, 1, 2)
    assert t.orientable and t.genus == 0


@pytest.mark.parametrize("refinement", [1, 3, 7])
def test_disk_topology_stable_under_refinement(refinement):
    t = make_disk(1.0, refinement).topology()
    assert (t.euler_char, t.boundary_count, t.reduced_euler) == (1, 1, 2)
    assert t.orientable


@pytest.mark.parametrize("refinement", [2, 4, 8])
def test_annulus_topology(refinement):
    t = make_annulus(0.5, 1.0, refinement).topology()
    assert (t.euler_char, t.boundary_count, t.reduced_euler) == (0, 2, 2)
    assert t.orientable and t.genus == 0


@pytest.mark.parametrize("refinement", [2, 4, 8])
def test_mobius_topology(refinement):
    t = make_mobius(2 * np.pi, 1.0, refinement).topology()
    assert (t.euler_char, t.boundary_count, t.reduced_euler) == (0, 1, 1)
    assert not t.orientable
    assert t.genus == 1


def test_square_topology():
    t = make_square(1.0, 5).topology()
    assert (t.euler_char, t.boundary_count) == (1, 1)


def test_boundary_vertices_on_circle():
    mesh = make_disk(1.0, 5)
    r = np.linalg.norm(mesh.node_positions[mesh.boundary_nodes], axis=1)
    assert np.abs(r - 1.0).max() < 1e-12


def test_disk_boundary_count_increases_with_refinement():
    counts = [len(make_disk(1.0, n).boundary_nodes) for n in (1, 2, 3, 4)]
    assert counts == sorted(counts) and len(set(counts)) == 4


def test_disk_area_covers_inscribed_polygon():
    mesh = make_disk(1.0, 10)
    m = len(mesh.boundary_nodes)
    polygon = 0.5 * m * np.sin(2 * np.pi / m)
    assert mesh.tri_areas.sum() == pytest.approx(polygon, rel=1e-12)


def test_annulus_inner_boundary_length():
    mesh = make_annulus(0.5, 1.0, 4)
    inner = mesh.boundary_edge_lengths[mesh.boundary_edge_component == 0]
    assert inner.sum() == pytest.approx(np.pi, rel=1e-2)
    outer = mesh.boundary_edge_lengths[mesh.boundary_edge_component == 1]
    assert outer.sum() == pytest.approx(2 * np.pi, rel=1e-2)


def test_thin_annulus_valid():
    mesh = make_annulus(0.9, 1.0, 4)
    assert (mesh.tri_areas > 0).all()
    assert mesh.topology().boundary_count == 2


def test_annulus_rejects_bad_radii():
    with pytest.raises(ValueError):
        make_annulus(1.0, 0.5, 4)


def test_mobius_rejects_degenerate_width():
    with pytest.raises(ValueError):
        make_mobius(2 * np.pi, 0.0, 8)
    with pytest.raises(ValueError):
        make_mobius(2 * np.pi, 1.0, 7)  # odd refinement cannot be glued


def test_polar_disk_topology():
    t = make_polar_disk(1.0, 6, 24).topology()
    assert (t.euler_char, t.boundary_count) == (1, 1)


def test_closed_surface_rejected():
    # tetrahedron boundary: a closed surface has no Steklov problem here
    verts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    tris = [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)]
    mesh = SurfaceMesh(verts, tris)
    with pytest.raises(MeshStructureError, match="empty boundary"):
        mesh.topology()


def test_nonmanifold_edge_named():
    verts = [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 1)]
    tris = [(0, 1, 2), (0, 1, 3), (0, 1, 4)]
    with pytest.raises(MeshStructureError, match=r"edge \(0, 1\)"):
        SurfaceMesh(verts, tris)


def test_duplicate_triangle_rejected():
    verts = [(0, 0), (1, 0), (0, 1)]
    with pytest.raises(MeshStructureError):
        SurfaceMesh(verts, [(0, 1, 2), (0, 1, 2)])


def test_zero_area_triangle_rejected():
    with pytest.raises(MeshStructureError, match="area"):
        SurfaceMesh([(0, 0), (1, 0), (2, 0)], [(0, 1, 2)])


def test_mobius_metric_is_chart_local():
    # boundary length must equal twice the strip length despite gluing
    mesh = make_mobius(2 * np.pi, 1.0, 8)
    assert mesh.boundary_length() == pytest.approx(4 * np.pi, rel=1e-12)


# -- file format -----------------------------------------------------------

def test_save_load_roundtrip(tmp_path):
    mesh = make_annulus(0.5, 1.0, 3)
    rho = np.linspace(1.0, 2.0, len(mesh.boundary_nodes))
    path = tmp_path / "annulus.smesh"
    save_mesh(path, mesh, density=rho)
    loaded = load_mesh(path)
    t1, t2 = mesh.topology(), loaded.topology()
    assert t1 == t2
    assert np.allclose(loaded.node_positions, mesh.node_positions)
    assert np.allclose(loaded.density, rho)


def test_save_load_glued_mesh(tmp_path):
    mesh = make_mobius(2 * np.pi, 1.0, 4)
    path = tmp_path / "mobius.smesh"
    save_mesh(path, mesh)
    loaded = load_mesh(path)
    assert loaded.topology() == mesh.topology()
    assert loaded.n_nodes == mesh.n_nodes


def test_load_reports_missing_vertex(tmp_path):
    path = tmp_path / "bad.smesh"
    path.write_text("SMESH 1\n3 3 1\n0 0\n1 0\n0 1\n0 1 9\n")
    with pytest.raises(MeshFormatError, match="missing vertex"):
        load_mesh(path)


def test_load_reports_duplicate_triangle(tmp_path):
    path = tmp_path / "dup.smesh"
    path.write_text("SMESH 1\n3 3 2\n0 0\n1 0\n0 1\n0 1 2\n0 1 2\n")
    with pytest.raises(MeshStructureError):
        load_mesh(path)


def test_load_reports_bad_header(tmp_path):
    path = tmp_path / "hdr.smesh"
    path.write_text("MESH 2\n")
    with pytest.raises(MeshFormatError, match="line 1"):
        load_mesh(path)


def test_load_valid_disk_file(tmp_path):
    mesh = make_disk(1.0, 2)
    path = tmp_path / "disk.smesh"
    save_mesh(path, mesh)
    assert load_mesh(path).topology().boundary_count == 1


def test_load_robin_and_potential_sections(tmp_path):
    path = tmp_path / "robin.smesh"
    path.write_text(
        "SMESH 1\n3 3 1\n0 0\n1 0\n0 1\n0 1 2\n"
        "ROBIN\n1 0\n0 1\n1 1\nPOT\n0.5\n0.5\n0.5\n")
    mesh = load_mesh(path)
    assert mesh.robin_ab.shape == (3, 2)
    assert np.allclose(mesh.potential, 0.5)
