"""Multiplicity clustering and spectral bound / asymptotics checks.

Numerical multiplicities are read off by greedy gap clustering of the
ascending eigenvalues.  For a cluster whose lowest member has index k
(k >= 1), two bounds are checked against the cluster dimension m:

* genus bound:      m <= 2 (2 - chibar) + 2 k + 1
* boundary bound:   m <= 2 (2 - chibar) + 2 l + k,
  sharpened by one when k is even or when the surface is not a disk.

A violation at finite resolution indicates a clustering or solver
artifact, never a disproof, so the checkers report and keep going.
The asymptotic checks cover the linear growth of the counting function
(bounded residuals against a fitted slope), the eventual pairing of disk
eigenvalues, and the near-quadruple clustering in the tail of a square's
spectrum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MultiplicityCluster:
    """A maximal group of numerically coincident eigenvalues."""

    first_index: int
    value: float
    dim: int
    spread: float = 0.0

    @property
    def indices(self):
        return range(self.first_index, self.first_index + self.dim)


def _eigenvalues_of(spectrum):
    if hasattr(spectrum, "eigenvalues"):
        return np.asarray(spectrum.eigenvalues, dtype=float)
    return np.asarray(spectrum, dtype=float)


def cluster_multiplicities(spectrum, rel_tol=1e-3, abs_floor=1e-9):
    """Greedy gap clustering of an ascending spectrum.

    Consecutive eigenvalues belong to the same cluster when their gap is
    at most ``rel_tol * max(|value|, abs_floor)``.  Returns a list of
    :class:`MultiplicityCluster` partitioning the input.
    """
    if rel_tol <= 0 or abs_floor <= 0:
        raise ValueError("tolerances must be positive")
    ev = _eigenvalues_of(spectrum)
    if len(ev) == 0:
        return []
    if (np.diff(ev) < -abs_floor).any():
        raise ValueError("spectrum must be ascending")
    clusters = []
    start = 0
    for j in range(1, len(ev) + 1):
        if j == len(ev) or ev[j] - ev[j - 1] > rel_tol * max(abs(ev[j]), abs_floor):
            members = ev[start:j]
            clusters.append(MultiplicityCluster(
                first_index=start,
                value=float(members.mean()),
                dim=j - start,
                spread=float(members.max() - members.min())))
            start = j
    return clusters


def cluster_of_index(clusters, j):
    """The cluster containing eigenvalue index ``j``."""
    for c in clusters:
        if c.first_index <= j < c.first_index + c.dim:
            return c
    raise IndexError(f"index {j} not covered by clusters")


def multiplicity_bounds(chi_bar, l, k, is_disk):
    """(genus bound, boundary bound, strictness flag) for index k >= 1."""
    b1 = 2 * (2 - chi_bar) + 2 * k + 1
    b2 = 2 * (2 - chi_bar) + 2 * l + k
    strict = (k % 2 == 0) or (not is_disk)
    if strict:
        b2 -= 1
    return b1, b2, strict


@dataclass
class BoundReport:
    """Per-cluster bound checks plus the topology they were made with."""

    entries: list
    chi: int
    l: int
    chi_bar: int
    is_disk: bool

    @property
    def ok(self):
        return all(e["pass"] for e in self.entries)

    @property
    def violations(self):
        return [e for e in self.entries if not e["pass"]]

    def to_json(self, indent=2):
        payload = {
            "topology": {"chi": self.chi, "l": self.l, "chi_bar": self.chi_bar,
                         "is_disk": self.is_disk},
            "clusters": self.entries,
            "ok": self.ok,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)


def check_bounds(clusters, topology, is_disk=None, max_k=None):
    """Check every cluster with lowest index k >= 1 against both bounds.

    ``is_disk`` defaults to what the topology says.  Violations are
    recorded, not raised; see :class:`BoundReport`.
    """
    chi = topology.euler_char
    l = topology.boundary_count
    chi_bar = topology.reduced_euler
    if is_disk is None:
        is_disk = (chi_bar == 2 and l == 1 and topology.orientable)
    entries = []
    for c in clusters:
        k = c.first_index
        if k < 1:
            continue
        if max_k is not None and k > max_k:
            continue
        b1, b2, strict = multiplicity_bounds(chi_bar, l, k, is_disk)
        entries.append({
            "k": k,
            "m": c.dim,
            "value": c.value,
            "bound_in1": b1,
            "bound_in2": b2,
            "strict": strict,
            "pass": c.dim <= b1 and c.dim <= b2,
        })
    return BoundReport(entries, chi, l, chi_bar, is_disk)


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------

@dataclass
class WeylReport:
    """Counting-function residuals against the fitted linear growth."""

    lam: np.ndarray
    counts: np.ndarray
    slope: float
    intercept: float
    residuals: np.ndarray
    slope_half: float        # candidate (1/2pi) * weighted length
    slope_full: float        # candidate (1/pi)  * weighted length
    drift: float             # |linear trend of residuals| over the top half

    @property
    def max_residual(self):
        return float(np.max(np.abs(self.residuals)))

    def to_csv_lines(self):
        lines = ["lambda,count,residual"]
        for lam, n, r in zip(self.lam, self.counts, self.residuals):
            lines.append(f"{float(lam)!r},{int(n)},{float(r)!r}")
        return lines


def weyl_residual(spectrum, boundary_weighted_length):
    """Fit ``N(lambda) ~ c lambda + d`` and report the residuals.

    The counting function (strictly-below count, with multiplicity) is
    evaluated at midpoints between consecutive distinct spectral levels;
    degenerate gaps of width zero would sample N exactly at its jump
    points, so they carry no midpoint.  The affine fit absorbs the
    bounded mean offset of N, leaving the fluctuation as the residual.
    Both candidate slopes built from the weighted boundary length are
    reported for comparison, nothing is asserted about them.
    """
    ev = _eigenvalues_of(spectrum)
    if len(ev) < 20:
        raise ValueError("need at least 20 eigenvalues")
    levels = [float(ev[0])]
    for v in ev[1:]:
        if v - levels[-1] > 1e-9 * max(abs(float(v)), 1.0):
            levels.append(float(v))
    levels = np.array(levels)
    mids = (levels[:-1] + levels[1:]) / 2.0
    counts = np.searchsorted(ev, mids, side="left").astype(float)
    slope, intercept = (float(x) for x in np.polyfit(mids, counts, 1))
    residuals = counts - (slope * mids + intercept)

    half = len(mids) // 2
    lam_top, res_top = mids[half:], residuals[half:]
    t = np.polyfit(lam_top, res_top, 1)
    drift = abs(float(t[0])) * (lam_top[-1] - lam_top[0])

    L = float(boundary_weighted_length)
    return WeylReport(mids, counts.astype(int), slope, intercept, residuals,
                      L / (2 * np.pi), L / np.pi, drift)


@dataclass
class PairingReport:
    """Eventual pairing of a disk spectrum."""

    stable_from: int          # smallest K with dim <= 2 for every k > K
    pair_gaps: list           # (k, gap, relative gap) over leading pairs
    dims: list

    @property
    def all_paired(self):
        return self.stable_from == 0


def disk_pairing(spectrum, clusters, topology, n_pairs=5):
    """Pairing report for a disk spectrum.

    Requires disk topology.  ``stable_from`` is the largest eigenvalue
    index carried by a cluster of dimension > 2 (0 when none exists past
    the constant), and the report lists the gaps ``sigma_{2k} -
    sigma_{2k-1}`` for k up to ``n_pairs``.
    """
    if not (topology.reduced_euler == 2 and topology.boundary_count == 1
            and topology.orientable):
        raise ValueError("pairing analysis requires a disk")
    ev = _eigenvalues_of(spectrum)
    stable_from = 0
    for c in clusters:
        if c.first_index >= 1 and c.dim > 2:
            stable_from = max(stable_from, c.first_index + c.dim - 1)
    gaps = []
    for k in range(1, n_pairs + 1):
        if 2 * k >= len(ev):
            break
        gap = float(ev[2 * k] - ev[2 * k - 1])
        gaps.append((k, gap, gap / max(abs(ev[2 * k]), 1e-300)))
    return PairingReport(stable_from, gaps, [c.dim for c in clusters])


@dataclass
class QuadrupleReport:
    """Within-block spreads of a square spectrum grouped in fours."""

    offset: int
    spreads: list             # relative spread per consecutive 4-block
    block_means: list
    decreasing_run: int       # longest run of strictly decreasing spreads
    conclusive: bool

    @property
    def ok(self):
        return self.conclusive and self.decreasing_run >= 3


def quadruple_check(spectrum, mesh, max_index=None, min_vertices=1000):
    """Group the resolved tail of a square spectrum into 4-blocks.

    The block offset (0..3 after dropping the zero eigenvalue) is chosen
    to minimize the mean relative spread; the verdict is the longest run
    of strictly decreasing spreads.  Meshes below ``min_vertices`` give
    an inconclusive (but not failing) report.
    """
    if getattr(mesh, "kind", None) != "square":
        raise ValueError("quadruple analysis requires a square mesh")
    ev = _eigenvalues_of(spectrum)
    if max_index is None:
        max_index = min(len(ev) - 1, len(mesh.boundary_nodes) // 6)
    tail = ev[1:max_index + 1]
    conclusive = mesh.n_nodes >= min_vertices and len(tail) >= 12

    best = None
    for offset in range(4):
        blocks = [tail[offset + 4 * b: offset + 4 * b + 4]
                  for b in range((len(tail) - offset) // 4)]
        blocks = [b for b in blocks if len(b) == 4]
        if len(blocks) < 3:
            continue
        spreads = [float((b.max() - b.min()) / b.mean()) for b in blocks]
        means = [float(b.mean()) for b in blocks]
        score = float(np.mean(spreads))
        if best is None or score < best[0]:
            best = (score, offset, spreads, means)
    if best is None:
        return QuadrupleReport(0, [], [], 0, False)
    _, offset, spreads, means = best

    run = best_run = 1
    for i in range(1, len(spreads)):
        run = run + 1 if spreads[i] < spreads[i - 1] else 1
        best_run = max(best_run, run)
    return QuadrupleReport(offset, spreads, means, best_run, conclusive)
