import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from steklov_lab import (
    compute_spectrum,
    make_annulus,
    make_disk,
    make_mobius,
    make_polar_disk,
    make_square,
)


@pytest.fixture(scope="session")
def disk_fem():
    # uniform angular count keeps the rotation symmetry exact, so the
    # double eigenvalues stay numerically degenerate
    return make_polar_disk(1.0, 32, 160)


@pytest.fixture(scope="session")
def disk_spec(disk_fem):
    return compute_spectrum(disk_fem, count=41)


@pytest.fixture(scope="session")
def annulus_fem():
    return make_annulus(0.5, 1.0, 16)


@pytest.fixture(scope="session")
def annulus_spec(annulus_fem):
    return compute_spectrum(annulus_fem, count=41)


@pytest.fixture(scope="session")
def square_fem():
    return make_square(1.0, 40)


@pytest.fixture(scope="session")
def square_spec(square_fem):
    return compute_spectrum(square_fem, count=24)


@pytest.fixture(scope="session")
def mobius_fem():
    return make_mobius(2 * np.pi, 1.0, 16)


@pytest.fixture(scope="session")
def mobius_spec(mobius_fem):
    return compute_spectrum(mobius_fem, count=20)


@pytest.fixture(scope="session")
def nodal_disk():
    # every nodal ray of r^n sin/cos(n theta), n <= 5, passes through
    # vertices of this grid (240 divides all the required angles)
    return make_polar_disk(1.0, 20, 240)


@pytest.fixture(scope="session")
def graded_disk():
    return make_disk(1.0, 25)
