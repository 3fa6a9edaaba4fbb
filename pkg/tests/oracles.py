"""Independent reference values for the test suite.

Everything here is computed by a route that never touches the package's
finite elements or eigensolvers: closed forms, 2x2 determinant quadratics
for the annulus radial profiles, and Bessel zeros from scipy.special.
The frozen constants below were produced by these same functions and are
asserted against them, so a regression in either side is caught.
"""

import math

import numpy as np

# Steklov spectrum of the unit disk with unit weight: 0, then k twice.
DISK_FIRST_11 = np.array([0.0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5], dtype=float)

# Steklov spectrum of the (0.5, 1) annulus with unit weight; from
# annulus_eigenvalues below (radial profiles a r^n + b r^-n, a + b log r).
ANNULUS_05_1_FIRST_8 = np.array([
    0.0,
    0.438447187191,
    0.438447187191,
    1.513203773589,
    1.513203773589,
    2.757088745365,
    2.757088745365,
    3.910023396770,
])

# squared Bessel zeros (Dirichlet / Neumann disk eigenvalues)
J0_1_SQ = 5.783185962946783      # first zero of J0, squared
J1_1_SQ = 14.681970642123895     # first zero of J1, squared
JP1_1_SQ = 3.3899577166718897    # first zero of J1', squared
JP2_1_SQ = 9.328363213746359     # first zero of J2', squared


def disk_eigenvalues(radius, count):
    vals = [0.0]
    k = 1
    while len(vals) < count:
        vals += [k / radius] * 2
        k += 1
    return np.array(vals[:count])


def _frequency_pencil(r_in, r_out, n):
    if n == 0:
        A = np.array([[0.0, 1.0 / r_out], [0.0, -1.0 / r_in]])
        B = np.array([[1.0, math.log(r_out)], [1.0, math.log(r_in)]])
    else:
        A = np.array([[n * r_out ** (n - 1), -n * r_out ** (-n - 1)],
                      [-n * r_in ** (n - 1), n * r_in ** (-n - 1)]])
        B = np.array([[r_out ** n, r_out ** (-n)],
                      [r_in ** n, r_in ** (-n)]])
    return A, B


def annulus_eigenvalues(r_in, r_out, count, max_freq=40):
    """Steklov eigenvalues of a flat annulus, unit weight.

    Per frequency the pencil det(A - s B) = 0 is a plain quadratic in s,
    solved in closed form (no eigensolver involved).
    """
    vals = []
    for n in range(max_freq + 1):
        A, B = _frequency_pencil(r_in, r_out, n)
        det_a = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        det_b = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
        mix = (A[0, 0] * B[1, 1] + A[1, 1] * B[0, 0]
               - A[0, 1] * B[1, 0] - A[1, 0] * B[0, 1])
        roots = np.roots([det_b, -mix, det_a])
        for s in roots.real[np.abs(roots.imag) < 1e-9]:
            if s > -1e-12:
                vals.extend([max(float(s), 0.0)] * (1 if n == 0 else 2))
    return np.sort(np.array(vals))[:count]


def neumann_square_eigenvalues(side, count):
    """Neumann Laplace eigenvalues of a square: (pi/side)^2 (m^2 + n^2)."""
    scale = (math.pi / side) ** 2
    vals = sorted(scale * (m * m + n * n)
                  for m in range(12) for n in range(12))
    return np.array(vals[:count])


def harmonic_field(mesh, n, trig="sin"):
    """Vertex samples of r^n sin/cos(n theta) on a planar mesh."""
    pts = mesh.node_positions[:, :2]
    r = np.linalg.norm(pts, axis=1)
    th = np.arctan2(pts[:, 1], pts[:, 0])
    fn = np.sin if trig == "sin" else np.cos
    return r ** n * fn(n * th)
