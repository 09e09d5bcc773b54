"""Chord chains: chords of ``K`` tangent to the circle ``r S^1`` at their midpoints.

From a boundary point ``p`` the tangent line to ``r S^1`` touches it at
``m``; the chord through ``p`` with midpoint ``m`` ends at ``q = 2m - p``.
When ``K`` is a disk about the origin this rotates ``p`` by ``2 theta``
with ``cos(theta) = r / |p|``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InsideDisk
from .geometry import boundary_distance


@dataclass(frozen=True)
class Circle:
    """A centred disk with an exact boundary distance."""

    radius: float

    def boundary_distance(self, points):
        p = np.atleast_2d(points)
        return np.abs(np.linalg.norm(p, axis=1) - self.radius)


def _defects(K, points):
    if isinstance(K, Circle):
        return K.boundary_distance(points)
    return boundary_distance(K, points)


def chord_step(p, r, orientation=1):
    """Return ``(m, q)`` for one chord from ``p`` tangent to ``r S^1``.

    ``orientation=+1`` takes the counter-clockwise tangent.
    """
    p = np.asarray(p, dtype=float)
    rho = float(np.hypot(p[0], p[1]))
    if rho <= r:
        raise InsideDisk(f"|p| = {rho} does not exceed r = {r}")
    theta = np.arccos(r / rho)
    a = np.arctan2(p[1], p[0]) + np.sign(orientation) * theta
    m = r * np.array([np.cos(a), np.sin(a)])
    return m, 2.0 * m - p


@dataclass
class ChainState:
    points: list = field(default_factory=list)
    midpoints: list = field(default_factory=list)
    defects: list = field(default_factory=list)

    @property
    def radii(self):
        return np.linalg.norm(np.array(self.points), axis=1)

    @property
    def angles(self):
        p = np.array(self.points)
        return np.arctan2(p[:, 1], p[:, 0])

    @property
    def closure_defect(self):
        return max(self.defects) if self.defects else 0.0


def chain_run(K, r, p0, steps, orientation=1):
    """Iterate ``chord_step`` from ``p0 ∈ ∂K`` for ``steps`` chords.

    Points are not projected back onto ``∂K``; each step records
    ``dist(q, ∂K)`` and ``closure_defect`` is the largest of these.
    """
    p = np.asarray(p0, dtype=float)
    if _defects(K, p)[0] > 1e-9:
        raise ValueError("p0 is not on the boundary of K")
    state = ChainState([p])
    for _ in range(steps):
        m, p = chord_step(p, r, orientation)
        state.points.append(p)
        state.midpoints.append(m)
    if steps:
        state.defects = list(_defects(K, np.array(state.points[1:])))
    return state


def angular_gap(angles):
    """Largest gap between sorted angles on the circle, in radians."""
    a = np.sort(np.mod(angles, 2.0 * np.pi))
    return float(np.max(np.diff(np.append(a, a[0] + 2.0 * np.pi))))


def period(state, tol=1e-9):
    """Smallest ``k > 0`` with ``p_k = p_0`` within ``tol``, or ``None``."""
    p0 = state.points[0]
    for k, p in enumerate(state.points[1:], start=1):
        if np.linalg.norm(p - p0) < tol:
            return k
    return None


def boundary_point(K, angle):
    """Point where the ray from the origin at ``angle`` leaves ``K``."""
    xi = np.array([np.cos(angle), np.sin(angle)])
    if isinstance(K, Circle):
        return K.radius * xi
    n = K.edge_normals
    d = np.einsum("ij,ij->i", n, K.vertices)
    if np.any(d <= 0):
        raise ValueError("origin is not interior to K")
    s = n @ xi
    return xi * np.min(d[s > 0] / s[s > 0])
