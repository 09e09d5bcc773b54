"""Cut planes, caps, the convex floating body and the critical fraction."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._parallel import pmap
from .errors import EmptyFloatingBody, InvalidDelta
from .geometry import (
    GEOM_EPS,
    ConvexPolygon,
    Halfspace,
    build_polytope,
    cap_moments,
    clip,
    section,
    section_moments,
    solve_cap_offset,
    solve_cap_offsets,
    unit,
)
from .shapes import circle_directions, default_directions, fibonacci_sphere, rotation_to

#: bodies of K_delta smaller than this (times diam K) count as a point
POINT_THRESHOLD = 1e-6


def check_delta(delta):
    if not (0.0 < delta <= 0.5):
        raise InvalidDelta(f"delta must lie in (0, 1/2], got {delta!r}")
    return float(delta)


def body_measure(K):
    return K.area if K.dim == 2 else K.volume


def cut_offset(K, u, delta, rel_tol=1e-12, max_iter=200):
    """Offset ``t`` with ``vol(K ∩ {<x,u> >= t}) = delta vol(K)``."""
    delta = check_delta(delta)
    return solve_cap_offset(K, unit(u), delta * body_measure(K), rel_tol, max_iter)


def cut_offsets(K, directions, delta, rel_tol=1e-12, max_iter=200):
    delta = check_delta(delta)
    target = delta * body_measure(K)
    return solve_cap_offsets(K, directions, target, rel_tol, max_iter, map_fn=pmap)


@dataclass(frozen=True)
class CutRecord:
    """The cap cut off in direction ``u`` and the section bounding it."""

    u: np.ndarray
    delta: float
    offset: float
    cap_moments: object
    section_frame: object
    section_moments: object
    body: object = None

    @property
    def cap_centroid(self):
        """Centroid of the floating part, the metronoid point for ``u``."""
        return self.cap_moments.centroid

    @property
    def section_centroid(self):
        return self.section_frame.to_ambient(self.section_moments.centroid)

    @property
    def cap(self):
        return clip(self.body, Halfspace(self.u, self.offset, "upper"))


def cap_record(K, u, delta, rel_tol=1e-12):
    u = unit(u)
    t = cut_offset(K, u, delta, rel_tol)
    return _record(K, u, delta, t)


def _record(K, u, delta, t):
    frame, shape = section(K, u, t)
    return CutRecord(u, float(delta), float(t), cap_moments(K, u, t), frame, section_moments(frame, shape), K)


def cap_records(K, directions, delta, rel_tol=1e-12):
    delta = check_delta(delta)
    target = delta * body_measure(K)

    def one(u):
        u = unit(u)
        return _record(K, u, delta, solve_cap_offset(K, u, target, rel_tol))

    return pmap(one, np.asarray(directions, dtype=float))


@dataclass(frozen=True)
class FloatingBodyResult:
    delta: float
    directions: np.ndarray
    offsets: np.ndarray
    body: object
    kind: str

    @property
    def point(self):
        if self.kind != "point":
            raise ValueError(f"floating body is a {self.kind}, not a point")
        return self.body.vertices.mean(axis=0)

    @property
    def measure(self):
        if self.kind != "body":
            return 0.0
        return body_measure(self.body)


def _bounding_box(K):
    lo, hi = K.vertices.min(axis=0), K.vertices.max(axis=0)
    if K.dim == 2:
        return ConvexPolygon([(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])])
    return build_polytope([(x, y, z) for x in (lo[0], hi[0]) for y in (lo[1], hi[1]) for z in (lo[2], hi[2])])


def floating_body(K, delta, directions=None, offsets=None):
    """Intersection of the halfspaces ``<x,u> <= t(u, delta)`` over a direction set.

    Lower halfspaces clip the bounding box of ``K`` one after another;
    the result is tagged ``"body"``, ``"point"`` or ``"empty"``.
    """
    delta = check_delta(delta)
    U = default_directions(K.dim) if directions is None else np.asarray(directions, dtype=float)
    t = cut_offsets(K, U, delta) if offsets is None else np.asarray(offsets, dtype=float)
    eps = GEOM_EPS * K.diameter
    body = _bounding_box(K)
    for u, ti in zip(U, t):
        body = clip(body, Halfspace(u, ti, "lower"), eps)
        if body.is_empty:
            return FloatingBodyResult(delta, U, t, body, "empty")
    kind = "point" if body.diameter < POINT_THRESHOLD * K.diameter else "body"
    return FloatingBodyResult(delta, U, t, body, kind)


def floating_depth(K, delta, directions=None):
    """Largest ``r`` with a point ``x`` satisfying ``<x,u> + r <= t(u)`` for every ``u``.

    Non-negative exactly when the discrete floating body is non-empty.
    Returns ``(r, x)``.
    """
    U = default_directions(K.dim) if directions is None else np.asarray(directions, dtype=float)
    t = cut_offsets(K, U, delta)
    d = K.dim
    c = np.zeros(d + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=np.column_stack([U, np.ones(len(U))]), b_ub=t,
                  bounds=[(None, None)] * (d + 1), method="highs")
    if res.status != 0:
        raise ValueError(f"depth program failed: {res.message}")
    return float(res.x[-1]), res.x[:d]


def critical_delta(K, directions=None, tol=1e-4):
    """Largest fraction with a non-empty floating body, by bisection on ``delta``."""
    n = K.dim
    U = default_directions(n) if directions is None else np.asarray(directions, dtype=float)
    slack = GEOM_EPS * K.diameter

    def nonempty(delta):
        return floating_depth(K, delta, U)[0] >= -slack

    if nonempty(0.5):
        return 0.5
    helly = 1.0 / (n + 1)
    if nonempty(helly):
        lo, hi = helly, 0.5
    else:
        lo, hi = 0.0, helly
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if nonempty(mid):
            lo = mid
        else:
            hi = mid
    est = 0.5 * (lo + hi)
    if est <= helly - tol:
        raise RuntimeError(f"critical fraction {est} violates the Helly bound {helly}")
    return est


def aligned_directions(u, count=None):
    """Default direction set rotated so that it contains ``u``."""
    u = unit(u)
    if len(u) == 2:
        return circle_directions(count or 1024, np.arctan2(u[1], u[0]))
    pts = fibonacci_sphere(count or 2048) @ rotation_to(u).T
    return np.vstack([u, pts])


def dupin_tangency_residual(K, delta, u, directions=None):
    """Distance between the support point of ``K_delta`` in direction ``u``
    and the centroid of the section ``K ∩ H_{delta,u}``.

    The support point is the mean of the vertices attaining the maximum
    of ``<x,u>`` (a single vertex generically, the face midpoint when
    ``u`` is itself a facet normal of the computed body).
    """
    u = unit(u)
    U = aligned_directions(u) if directions is None else directions
    fb = floating_body(K, delta, U)
    if fb.kind == "empty":
        raise EmptyFloatingBody(f"K_delta is empty at delta={delta}")
    v = fb.body.vertices
    h = v @ u
    face = h >= h.max() - GEOM_EPS * K.diameter
    contact = v[face].mean(axis=0)
    rec = cap_record(K, u, delta)
    return float(np.linalg.norm(contact - rec.section_centroid))
