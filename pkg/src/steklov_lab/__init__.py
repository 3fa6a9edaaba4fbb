"""Spectral geometry lab for surfaces with boundary.

Computes Steklov (and Robin/Dirichlet/Neumann) eigenpairs on triangulated
surfaces, clusters numerical multiplicities, extracts nodal graphs, and
checks the multiplicity / nodal-domain / asymptotic bounds these spectra
satisfy.  See the ``verify`` module for the end-to-end suites and ``cli``
for the command-line surface.
"""

from .mesh import (
    MeshFormatError,
    MeshStructureError,
    SurfaceMesh,
    TopologySummary,
    load_mesh,
    make_annulus,
    make_disk,
    make_mobius,
    make_polar_disk,
    make_square,
    save_mesh,
)
from .assembly import (
    BoundaryDensity,
    SteklovSystem,
    assemble_boundary_mass,
    assemble_stiffness,
    build_steklov_system,
    lumped_area_mass,
    rayleigh_quotient,
)
from .solver import (
    DtnMatrix,
    Spectrum,
    compute_spectrum,
    harmonic_extension,
    schur_dtn,
    solve_steklov,
)
from .spectral import (
    BoundReport,
    MultiplicityCluster,
    check_bounds,
    cluster_multiplicities,
    disk_pairing,
    multiplicity_bounds,
    quadruple_check,
    weyl_residual,
)
from .nodal import (
    NodalGraph,
    ReducedNodalGraph,
    courant_check,
    domain_lower_bounds,
    estimate_order,
    extract_nodal_graph,
    high_order_combination,
    nodal_domains,
    reduce_graph,
    rotation_family,
    sign_field,
)
from .maps import (
    RotationSystem,
    RotationSystemError,
    VertexDecomposition,
    circuit_degree_check,
    decompose_at_vertex,
    degree_sum_check,
    euler_defect,
    face_count,
    parse_rotation_system,
    random_rotation_system,
    rotation_system_to_text,
)
from .robin import (
    RobinData,
    RobinSpectrum,
    RobinSystem,
    assemble_robin,
    check_robin_bounds,
    compute_robin_spectrum,
    solve_robin,
)
from .verify import run_verify

__version__ = "0.1.0"
