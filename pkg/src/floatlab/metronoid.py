"""Metronoid samples, the isotropy functional and the Ulam diagnostic."""

from dataclasses import dataclass

import numpy as np

from .errors import TooFewSamples
from .floating import body_measure, cap_record, cap_records, check_delta
from .shapes import default_directions

#: default relative spread below which a body counts as Ulam-consistent
ULAM_THRESHOLD = 1e-2
DEFAULT_TANGENTS = 16


@dataclass(frozen=True)
class MetronoidSample:
    u: np.ndarray
    point: np.ndarray


def section_isotropy(record, v):
    """Centred second moment of the section of ``record`` along tangent(s) ``v``."""
    frame, sm = record.section_frame, record.section_moments
    c = np.atleast_2d(v) @ frame.basis.T
    raw = np.einsum("ki,ij,kj->k", c, sm.second_moment, c)
    mean = c @ sm.centroid
    return raw - sm.measure * mean * mean


def isotropy_moment(K, delta, u, v):
    """``int_{K∩H} <x,v>^2 dx - <g(K∩H), v>^2 vol(K∩H)`` for the cut plane ``H`` with normal ``u``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if abs(u @ v) > 1e-10 * np.linalg.norm(u) * np.linalg.norm(v):
        raise ValueError("tangent v must be orthogonal to u")
    return float(section_isotropy(cap_record(K, u, delta), v)[0])


def tangent_grid(record, k=DEFAULT_TANGENTS):
    """Tangent directions at angles ``j pi / k`` in the section frame (one in 2D)."""
    basis = record.section_frame.basis
    if len(basis) == 1:
        return basis.copy()
    a = np.pi * np.arange(k) / k
    return np.cos(a)[:, None] * basis[0] + np.sin(a)[:, None] * basis[1]


def metronoid_boundary(K, delta, directions=None, records=None):
    """One cap centroid per direction."""
    if records is None:
        U = default_directions(K.dim) if directions is None else directions
        records = cap_records(K, U, delta)
    return [MetronoidSample(r.u, r.cap_centroid) for r in records]


def sample_arrays(samples):
    return np.array([s.u for s in samples]), np.array([s.point for s in samples])


def gauss_map_residual(samples):
    """Worst ``|<tangent, u>|`` along a closed planar sample curve.

    Tangents are central differences of consecutive samples, which must
    be ordered by the angle of ``u`` with gaps below 0.05 rad.
    """
    if len(samples) < 16:
        raise TooFewSamples(f"need at least 16 samples, got {len(samples)}")
    U, X = sample_arrays(samples)
    if U.shape[1] != 2:
        raise ValueError("gauss_map_residual needs planar samples")
    ang = np.arctan2(U[:, 1], U[:, 0])
    gaps = np.mod(np.diff(np.append(ang, ang[0])), 2.0 * np.pi)
    if np.any(gaps >= 0.05) or np.any(gaps <= 0.0):
        raise ValueError("samples must be ordered by angle with gaps below 0.05 rad")
    tang = np.roll(X, -1, axis=0) - np.roll(X, 1, axis=0)
    tang /= np.linalg.norm(tang, axis=1)[:, None]
    return float(np.max(np.abs(np.einsum("ij,ij->i", tang, U))))


def curvature_radius_2d(K, delta, phi):
    """Radius of curvature of the metronoid boundary at normal angle ``phi``.

    Equals the centred section moment along ``T = (-sin phi, cos phi)``
    divided by ``delta area(K)``.
    """
    if K.dim != 2:
        raise ValueError("curvature_radius_2d needs a planar body")
    u = np.array([np.cos(phi), np.sin(phi)])
    v = np.array([-np.sin(phi), np.cos(phi)])
    return isotropy_moment(K, delta, u, v) / (delta * K.area)


def curvature_profile(K, delta, count=2048):
    """Curvature radius against the metronoid's finite-difference speed.

    Returns ``(phi, radius, speed)`` on ``count`` equispaced angles, with
    ``speed = |X(phi + h) - X(phi - h)| / (2 h)``.
    """
    delta = check_delta(delta)
    phi = 2.0 * np.pi * np.arange(count) / count
    U = np.column_stack([np.cos(phi), np.sin(phi)])
    recs = cap_records(K, U, delta)
    scale = delta * K.area
    radius = np.array([section_isotropy(r, r.section_frame.basis)[0] for r in recs]) / scale
    X = np.array([r.cap_centroid for r in recs])
    h = 2.0 * np.pi / count
    speed = np.linalg.norm(np.roll(X, -1, axis=0) - np.roll(X, 1, axis=0), axis=1) / (2.0 * h)
    return phi, radius, speed


@dataclass(frozen=True)
class UlamReport:
    """Isotropy functional on a direction/tangent grid.

    ``values[i, j]`` is the functional for ``directions[i]`` and
    ``tangents[i, j]``.
    """

    delta: float
    directions: np.ndarray
    tangents: np.ndarray
    values: np.ndarray
    body_measure: float
    threshold: float = ULAM_THRESHOLD

    @property
    def samples(self):
        for i, u in enumerate(self.directions):
            for j, v in enumerate(self.tangents[i]):
                yield u, v, float(self.values[i, j])

    @property
    def min(self):
        return float(self.values.min())

    @property
    def max(self):
        return float(self.values.max())

    @property
    def mean(self):
        return float(self.values.mean())

    @property
    def spread(self):
        return (self.max - self.min) / self.mean

    @property
    def R_estimate(self):
        return self.mean / (self.delta * self.body_measure)

    @property
    def verdict(self):
        """True when the grid is consistent with an Ulam floating body."""
        return self.spread < self.threshold

    def summary(self):
        return {"min": self.min, "max": self.max, "mean": self.mean, "spread": self.spread,
                "R_estimate": self.R_estimate, "verdict": self.verdict}


def ulam_report(K, delta, directions=None, tangents_per_direction=DEFAULT_TANGENTS,
                threshold=ULAM_THRESHOLD, records=None):
    delta = check_delta(delta)
    if records is None:
        U = default_directions(K.dim) if directions is None else directions
        records = cap_records(K, U, delta)
    tangents = np.array([tangent_grid(r, tangents_per_direction) for r in records])
    values = np.array([section_isotropy(r, tv) for r, tv in zip(records, tangents)])
    dirs = np.array([r.u for r in records])
    return UlamReport(delta, dirs, tangents, values, body_measure(K), threshold)
