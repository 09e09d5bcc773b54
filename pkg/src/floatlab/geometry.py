"""
Convex polygons and polytopes with exact moments up to second order.

Bodies are immutable.  A polygon is a counterclockwise vertex cycle; a
polytope is a vertex array plus outward-oriented triangles.  Moments
are accumulated over simplices against a reference point (the bounding
box centre for whole bodies, a point on the cutting plane for caps),
then shifted back to ambient coordinates.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import cdist

from .errors import DegenerateInput, EmptyBody, EmptySection

#: relative tolerance (times body diameter) for point-vs-plane tests
GEOM_EPS = 1e-9


def unit(v):
    """Return ``v`` scaled to unit Euclidean length."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n == 0.0:
        raise ValueError("cannot normalise a zero or non-finite vector")
    return v / n


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Halfspace:
    """``{x : <x,u> >= t}`` for sense ``"upper"``, ``{x : <x,u> <= t}`` for ``"lower"``."""

    normal: np.ndarray
    offset: float
    sense: str = "upper"

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if abs(np.linalg.norm(n) - 1.0) > 1e-9:
            raise ValueError("halfspace normal must be a unit vector")
        if self.sense not in ("upper", "lower"):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "normal", _frozen(unit(n)))
        object.__setattr__(self, "offset", float(self.offset))

    def signed(self, points):
        """Signed distances; non-negative inside the halfspace."""
        d = np.asarray(points, dtype=float) @ self.normal - self.offset
        return d if self.sense == "upper" else -d

    def complement(self):
        return Halfspace(self.normal, self.offset, "lower" if self.sense == "upper" else "upper")


@dataclass(frozen=True)
class MomentSummary:
    """Measure, centroid and raw second moment ``int x x^T`` of a set."""

    measure: float
    centroid: np.ndarray
    second_moment: np.ndarray

    @property
    def centered_second_moment(self):
        g = self.centroid
        return self.second_moment - self.measure * np.outer(g, g)


def _diameter(points):
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return 0.0
    return max(float(cdist(points[i:i + 512], points).max()) for i in range(0, len(points), 512))


class _Body:
    """Shared helpers for polygons and polytopes."""

    @cached_property
    def diameter(self):
        return _diameter(self.vertices)

    @cached_property
    def bbox_center(self):
        if len(self.vertices) == 0:
            return np.zeros(self.dim)
        return 0.5 * (self.vertices.min(axis=0) + self.vertices.max(axis=0))

    @property
    def is_empty(self):
        return len(self.vertices) == 0

    def support(self, u):
        """Maximum of ``<x,u>`` over the body."""
        return float(np.max(self.vertices @ np.asarray(u, dtype=float)))


@dataclass(frozen=True, eq=False)
class ConvexPolygon(_Body):
    """Counterclockwise vertex cycle.  Fewer than three vertices tags a degenerate set."""

    vertices: np.ndarray
    dim = 2

    def __post_init__(self):
        object.__setattr__(self, "vertices", _frozen(np.reshape(self.vertices, (-1, 2))))

    @property
    def kind(self):
        n = len(self.vertices)
        if n == 0:
            return "empty"
        if n == 1:
            return "point"
        if n == 2 or self.area <= 0.0:
            return "segment"
        return "polygon"

    @cached_property
    def area(self):
        if len(self.vertices) < 3:
            return 0.0
        y = self.vertices - self.bbox_center
        return 0.5 * float(np.sum(y[:, 0] * np.roll(y[:, 1], -1) - y[:, 1] * np.roll(y[:, 0], -1)))

    @cached_property
    def edge_normals(self):
        """Outward normals scaled by edge length, one per edge ``i -> i+1``."""
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return _frozen(np.column_stack([d[:, 1], -d[:, 0]]))


@dataclass(frozen=True, eq=False)
class ConvexPolytope(_Body):
    """Vertex array plus outward-oriented triangles.  No faces tags a degenerate set."""

    vertices: np.ndarray
    faces: np.ndarray
    dim = 3

    def __post_init__(self):
        object.__setattr__(self, "vertices", _frozen(np.reshape(self.vertices, (-1, 3))))
        object.__setattr__(self, "faces", _frozen(np.reshape(self.faces, (-1, 3)), dtype=np.int64))

    @property
    def kind(self):
        if len(self.vertices) == 0:
            return "empty"
        if len(self.faces) == 0:
            return "degenerate"
        return "polytope"

    @cached_property
    def face_vectors(self):
        """Outward normal times area for each triangle."""
        v = self.vertices
        a, b, c = v[self.faces[:, 0]], v[self.faces[:, 1]], v[self.faces[:, 2]]
        return _frozen(0.5 * np.cross(b - a, c - a))

    @cached_property
    def edges(self):
        """Unique undirected edges as sorted index pairs."""
        f = self.faces
        e = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
        return _frozen(np.unique(np.sort(e, axis=1), axis=0), dtype=np.int64)

    @cached_property
    def volume(self):
        if self.kind != "polytope":
            return 0.0
        y = self.vertices - self.bbox_center
        f = self.faces
        return float(np.sum(np.einsum("ij,ij->i", y[f[:, 0]], np.cross(y[f[:, 1]], y[f[:, 2]])))) / 6.0

    def validate(self):
        """Raise ``DegenerateInput`` unless the surface is closed, oriented and of genus 0."""
        f = self.faces
        directed = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
        keys = {tuple(e) for e in directed}
        if len(keys) != len(directed):
            raise DegenerateInput("directed edge used twice")
        if any((b, a) not in keys for a, b in keys):
            raise DegenerateInput("surface is not closed")
        n_v = len(np.unique(f))
        if n_v - len(directed) // 2 + len(f) != 2:
            raise DegenerateInput("Euler characteristic is not 2")
        if self.volume <= 0.0:
            raise DegenerateInput("signed volume is not positive")


@dataclass(frozen=True)
class Segment:
    """A 1D section in frame coordinates, ``[lo, hi]``."""

    lo: float
    hi: float

    @property
    def length(self):
        return self.hi - self.lo


@dataclass(frozen=True)
class SectionFrame:
    """Origin on a hyperplane, orthonormal in-plane basis (rows) and unit normal."""

    origin: np.ndarray
    basis: np.ndarray
    normal: np.ndarray

    def to_ambient(self, coords):
        return self.origin + np.asarray(coords, dtype=float) @ self.basis

    def to_frame(self, points):
        return (np.asarray(points, dtype=float) - self.origin) @ self.basis.T


def tangent_basis(u):
    """Deterministic orthonormal basis of ``u``'s orthogonal complement (rows)."""
    u = np.asarray(u, dtype=float)
    if len(u) == 2:
        return np.array([[-u[1], u[0]]])
    e = np.zeros(3)
    e[np.argmin(np.abs(u))] = 1.0
    b1 = unit(e - (e @ u) * u)
    b2 = np.cross(u, b1)
    return np.array([b1, b2])


def make_frame(u, t):
    u = unit(u)
    return SectionFrame(_frozen(t * u), _frozen(tangent_basis(u)), _frozen(u))


# -- builders -----------------------------------------------------------------


def empty_like(body):
    if body.dim == 2:
        return ConvexPolygon(np.empty((0, 2)))
    return ConvexPolytope(np.empty((0, 3)), np.empty((0, 3)))


def build_polygon(points):
    """Counterclockwise convex hull of 2D points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 points")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput("points are collinear") from exc
    return ConvexPolygon(pts[hull.vertices])


def build_polytope(points):
    """Outward-oriented triangulated convex hull of 3D points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) < 4:
        raise DegenerateInput("need at least 4 points")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput("points are coplanar") from exc
    return _polytope_from_hull(pts, hull)


def _polytope_from_hull(pts, hull):
    simp = hull.simplices.copy()
    a, b, c = pts[simp[:, 0]], pts[simp[:, 1]], pts[simp[:, 2]]
    flip = np.einsum("ij,ij->i", np.cross(b - a, c - a), hull.equations[:, :3]) < 0
    simp[flip] = simp[flip][:, [0, 2, 1]]
    used = np.unique(simp)
    remap = np.full(len(pts), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    body = ConvexPolytope(pts[used], remap[simp])
    n_edges = 3 * len(simp) // 2
    if len(used) - n_edges + len(simp) != 2:
        raise DegenerateInput("hull fails the Euler check")
    return body


def affine_transform(body, matrix, shift=None):
    """Image of ``body`` under ``x -> matrix @ x + shift``."""
    A = np.asarray(matrix, dtype=float)
    b = np.zeros(body.dim) if shift is None else np.asarray(shift, dtype=float)
    v = body.vertices @ A.T + b
    flip = np.linalg.det(A) < 0
    if body.dim == 2:
        return ConvexPolygon(v[::-1] if flip else v)
    faces = body.faces[:, [0, 2, 1]] if flip else body.faces
    return ConvexPolytope(v, faces)


# -- moments ------------------------------------------------------------------


def _simplex_moments(pieces):
    """Moments of simplices with one vertex at the origin.

    ``pieces`` has shape (k, d, d); row ``i`` holds the other ``d`` vertices.
    Returns measure, first moment and second moment.
    """
    k, d, _ = pieces.shape
    if k == 0:
        return 0.0, np.zeros(d), np.zeros((d, d))
    if d == 2:
        vol = 0.5 * (pieces[:, 0, 0] * pieces[:, 1, 1] - pieces[:, 0, 1] * pieces[:, 1, 0])
    else:
        vol = np.einsum("ij,ij->i", pieces[:, 0], np.cross(pieces[:, 1], pieces[:, 2])) / 6.0
    s = pieces.sum(axis=1)
    first = (vol / (d + 1)) @ s
    outer = np.einsum("kij,kil->kjl", pieces, pieces) + np.einsum("kj,kl->kjl", s, s)
    second = np.einsum("k,kjl->jl", vol, outer) / ((d + 1) * (d + 2))
    return float(vol.sum()), first, second


def _summary(measure, first, second, shift):
    """Shift moments computed about ``shift`` back to ambient coordinates."""
    if measure <= 0.0:
        raise EmptyBody("set has zero measure")
    g = first / measure
    second = second + np.outer(shift, first) + np.outer(first, shift) + measure * np.outer(shift, shift)
    return MomentSummary(float(measure), shift + g, 0.5 * (second + second.T))


def _degenerate_summary(vertices, dim):
    return MomentSummary(0.0, vertices.mean(axis=0), np.zeros((dim, dim)))


def moments(body):
    """Exact measure, centroid and second-moment matrix of a body."""
    if body.is_empty:
        raise EmptyBody("body is empty")
    c = body.bbox_center
    y = body.vertices - c
    if body.dim == 2:
        if body.kind != "polygon":
            return _degenerate_summary(body.vertices, 2)
        pieces = np.stack([y, np.roll(y, -1, axis=0)], axis=1)
    else:
        if body.kind != "polytope":
            return _degenerate_summary(body.vertices, 3)
        pieces = y[body.faces]
    return _summary(*_simplex_moments(pieces), c)


def cap_moments(body, u, t):
    """Moments of ``body ∩ {<x,u> >= t}`` without building the clipped body.

    Simplices are fanned from a point on the cutting plane, so the new
    face contributes nothing and only the clipped boundary is needed.
    """
    u = np.asarray(u, dtype=float)
    c = body.bbox_center
    o = c + (t - c @ u) * u
    y = body.vertices - o
    s = y @ u
    if body.dim == 2:
        ya, yb = y, np.roll(y, -1, axis=0)
        sa, sb = s, np.roll(s, -1)
        ia, ib = sa >= 0, sb >= 0
        keep = ia | ib
        ya, yb, sa, sb, ia, ib = ya[keep], yb[keep], sa[keep], sb[keep], ia[keep], ib[keep]
        cross = ia != ib
        lam = np.where(cross, sa / np.where(cross, sa - sb, 1.0), 0.0)
        x = ya + lam[:, None] * (yb - ya)
        start = np.where(ia[:, None], ya, x)
        end = np.where(ib[:, None], yb, x)
        pieces = np.stack([start, end], axis=1)
    else:
        f = body.faces
        sf = s[f]
        above = sf >= 0
        n_above = above.sum(axis=1)
        parts = [y[f[n_above == 3]]]

        def rolled(mask, k):
            idx = (k[:, None] + np.arange(3)) % 3
            return np.take_along_axis(f[mask], idx, axis=1)

        def crossing(i, j):
            si, sj = s[i], s[j]
            return y[i] + (si / (si - sj))[:, None] * (y[j] - y[i])

        m1 = n_above == 1
        if m1.any():
            p, q, r = rolled(m1, np.argmax(above[m1], axis=1)).T
            parts.append(np.stack([y[p], crossing(p, q), crossing(p, r)], axis=1))
        m2 = n_above == 2
        if m2.any():
            p, q, r = rolled(m2, (np.argmin(above[m2], axis=1) + 1) % 3).T
            xqr, xrp = crossing(q, r), crossing(r, p)
            parts.append(np.stack([y[p], y[q], xqr], axis=1))
            parts.append(np.stack([y[p], xqr, xrp], axis=1))
        pieces = np.concatenate(parts)
    measure, first, second = _simplex_moments(pieces)
    if measure <= 0.0:
        raise EmptyBody("cap is empty")
    return _summary(measure, first, second, o)


# -- cut-plane solving --------------------------------------------------------


def _safe_inverse(x):
    out = np.zeros_like(x)
    np.divide(1.0, x, out=out, where=x != 0)
    return out


def _integrand_terms(hh):
    """Coefficients for ``_cap_integrand`` given descending-sorted heights."""
    mean = hh.mean(axis=-1)
    if hh.shape[-1] == 2:
        return hh, mean, 0.5 * _safe_inverse(hh[..., 0] - hh[..., 1]), None
    h1, h2, h3 = hh[..., 0], hh[..., 1], hh[..., 2]
    k_two = _safe_inverse(3.0 * (h1 - h3) * (h2 - h3))
    k_one = _safe_inverse(3.0 * (h1 - h2) * (h1 - h3))
    return hh, mean, k_one, k_two


def _cap_integrand(terms, t):
    """Per-piece ``(1/|F|) int_{F ∩ {h>=t}} (h - t)``.

    In 2D the piece is an edge, in 3D a triangle; ``t`` broadcasts
    against the leading axes of the height array.
    """
    hh, mean, k_one, k_two = terms
    h1, h2 = hh[..., 0], hh[..., 1]
    d = h1 - t
    tip = d * d * k_one
    low = mean - t
    if k_two is not None:
        tip *= d
        e = np.maximum(t - hh[..., 2], 0.0)
        low += e * e * e * k_two
    return np.where(t <= h2, low, np.where(d > 0.0, tip, 0.0))


def cap_measure_profile(body, u):
    """Return ``(heights, weights, shift)`` describing ``t -> vol(body ∩ {<x,u> >= t})``.

    By the divergence theorem applied to ``(<x,u> - t) u`` the cap measure is
    ``sum_f weights_f * integrand_f(t - shift)``; the cutting face carries no flux.
    """
    u = np.asarray(u, dtype=float)
    shift = float(body.bbox_center @ u)
    h = body.vertices @ u - shift
    if body.dim == 2:
        hh = np.column_stack([h, np.roll(h, -1)])
        w = body.edge_normals @ u
    else:
        hh = h[body.faces]
        w = body.face_vectors @ u
    hh = -np.sort(-hh, axis=1)
    return hh, w, shift


def cap_measure(body, u, t):
    """Measure of ``body ∩ {<x,u> >= t}`` via the boundary-flux formula."""
    hh, w, shift = cap_measure_profile(body, u)
    return float(w @ _cap_integrand(_integrand_terms(hh), t - shift))


def _collapsed(lo, hi):
    # bracket is a few ulps wide
    return hi - lo <= 4.0 * np.spacing(np.maximum(np.maximum(np.abs(lo), np.abs(hi)), 1e-300))


def solve_cap_offset(body, u, target, rel_tol=1e-12, max_iter=200):
    """Bisection for ``t`` with cap measure equal to ``target``.

    The bracket starts at ``[min <x,u>, max <x,u>]``.  Pieces that lie
    entirely above the bracket collapse into a linear term and pieces
    entirely below are dropped, so late iterations only touch the few
    pieces the cutting plane can still cross.
    """
    hh, w, shift = cap_measure_profile(body, u)
    terms = _integrand_terms(hh)
    lo, hi = float(hh[:, -1].min()), float(hh[:, 0].max())
    const, slope = 0.0, 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = const - slope * mid + float(w @ _cap_integrand(terms, mid))
        if abs(val - target) <= rel_tol * target:
            return mid + shift
        if val > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi))):
            break
        hh = terms[0]
        full = hh[:, -1] >= hi
        keep = ~full & (hh[:, 0] > lo)
        if full.any():
            const += float(w[full] @ terms[1][full])
            slope += float(w[full].sum())
        if not keep.all():
            w = w[keep]
            terms = tuple(None if x is None else x[keep] for x in terms)
    return 0.5 * (lo + hi) + shift


#: above this many (direction, piece) pairs offsets are solved one direction at a time
BATCH_LIMIT = 200_000


def solve_cap_offsets(body, directions, target, rel_tol=1e-12, max_iter=200, map_fn=map):
    """``solve_cap_offset`` for many directions.

    Small bodies bisect all directions at once; large ones go through
    ``map_fn`` direction by direction.
    """
    U = np.atleast_2d(np.asarray(directions, dtype=float))
    n_pieces = len(body.vertices) if body.dim == 2 else len(body.faces)
    if len(U) * n_pieces > BATCH_LIMIT:
        return np.array(list(map_fn(lambda u: solve_cap_offset(body, u, target, rel_tol, max_iter), U)))
    shift = U @ body.bbox_center
    h = body.vertices @ U.T - shift
    if body.dim == 2:
        hh = np.stack([h.T, np.roll(h, -1, axis=0).T], axis=-1)
        w = U @ body.edge_normals.T
    else:
        hh = np.moveaxis(h[body.faces], -1, 0)
        w = U @ body.face_vectors.T
    hh = -np.sort(-hh, axis=-1)
    terms = _integrand_terms(hh)
    lo, hi = hh[..., -1].min(axis=1), hh[..., 0].max(axis=1)
    out = np.full(len(U), np.nan)
    active = np.arange(len(U))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = np.einsum("ij,ij->i", w, _cap_integrand(terms, mid[:, None]))
        done = np.abs(val - target) <= rel_tol * target
        out[active[done]] = mid[done]
        up = val > target
        lo = np.where(up, mid, lo)
        hi = np.where(up, hi, mid)
        width = _collapsed(lo, hi) & ~done
        out[active[width]] = 0.5 * (lo + hi)[width]
        keep = ~(done | width)
        if not keep.any():
            break
        if not keep.all():
            active, w, lo, hi = active[keep], w[keep], lo[keep], hi[keep]
            terms = tuple(None if x is None else x[keep] for x in terms)
    else:
        out[active] = 0.5 * (lo + hi)
    return out + shift


# -- clipping -----------------------------------------------------------------


def clip(body, hs, eps=None):
    """Exact intersection of a body with a halfspace.

    Vertices within ``eps`` of the plane count as inside, so a vertex
    lying on the plane is kept by both complementary halfspaces.
    """
    if body.is_empty:
        return body
    if eps is None:
        eps = GEOM_EPS * body.diameter
    v = body.vertices
    s = hs.signed(v)
    inside = s >= -eps
    if inside.all():
        return body
    if not inside.any():
        return empty_like(body)
    if body.dim == 2:
        if len(v) < 3:
            return _clip_small(v, s, inside, eps, 2)
        sn = np.roll(s, -1)
        vn = np.roll(v, -1, axis=0)
        cross = ((s > eps) & (sn < -eps)) | ((s < -eps) & (sn > eps))
        lam = np.where(cross, s / np.where(cross, s - sn, 1.0), 0.0)
        x = v + lam[:, None] * (vn - v)
        slots = np.stack([v, x], axis=1).reshape(-1, 2)
        mask = np.stack([inside, cross], axis=1).reshape(-1)
        return ConvexPolygon(slots[mask])
    if body.kind != "polytope":
        return _clip_small(v, s, inside, eps, 3)
    e = body.edges
    sa, sb = s[e[:, 0]], s[e[:, 1]]
    cross = ((sa > eps) & (sb < -eps)) | ((sa < -eps) & (sb > eps))
    ea, eb = e[cross, 0], e[cross, 1]
    lam = sa[cross] / (sa[cross] - sb[cross])
    x = v[ea] + lam[:, None] * (v[eb] - v[ea])
    pts = np.concatenate([v[inside], x])
    return _hull_or_degenerate(pts)


def _clip_small(v, s, inside, eps, dim):
    # degenerate inputs: keep inside points plus pairwise crossings
    pts = [v[inside]]
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if (s[i] > eps and s[j] < -eps) or (s[i] < -eps and s[j] > eps):
                lam = s[i] / (s[i] - s[j])
                pts.append((v[i] + lam * (v[j] - v[i]))[None])
    pts = np.concatenate(pts)
    if dim == 2:
        try:
            return build_polygon(pts)
        except DegenerateInput:
            return ConvexPolygon(_extreme_pair(pts))
    return _hull_or_degenerate(pts)


def _extreme_pair(pts):
    if len(pts) <= 1:
        return pts
    d = pts - pts.mean(axis=0)
    _, _, vt = np.linalg.svd(d, full_matrices=False)
    proj = d @ vt[0]
    i, j = int(np.argmin(proj)), int(np.argmax(proj))
    if np.linalg.norm(pts[i] - pts[j]) == 0.0:
        return pts[[i]]
    return pts[[i, j]]


def _hull_or_degenerate(pts):
    if len(pts) >= 4:
        try:
            return _polytope_from_hull(pts, ConvexHull(pts))
        except (QhullError, DegenerateInput):
            pass
    return ConvexPolytope(pts, np.empty((0, 3)))


# -- sections -----------------------------------------------------------------


def _section_points(body, u, t, eps):
    v = body.vertices
    s = v @ u - t
    on = np.abs(s) <= eps
    if body.dim == 2:
        e = np.column_stack([np.arange(len(v)), (np.arange(len(v)) + 1) % len(v)])
    else:
        e = body.edges
    sa, sb = s[e[:, 0]], s[e[:, 1]]
    cross = ((sa > eps) & (sb < -eps)) | ((sa < -eps) & (sb > eps))
    ea, eb = e[cross, 0], e[cross, 1]
    lam = sa[cross] / (sa[cross] - sb[cross])
    x = v[ea] + lam[:, None] * (v[eb] - v[ea])
    return np.concatenate([v[on], x])


def section(body, u, t, eps=None):
    """Section of a body by the hyperplane ``<x,u> = t``.

    Returns ``(frame, shape)`` where ``shape`` is a ``Segment`` (2D bodies)
    or a ``ConvexPolygon`` in frame coordinates (3D bodies), ordered by
    angle about its vertex mean.
    """
    u = unit(u)
    if eps is None:
        eps = GEOM_EPS * body.diameter
    frame = make_frame(u, t)
    pts = _section_points(body, u, t, eps)
    if len(pts) == 0:
        raise EmptySection("hyperplane misses the body")
    coords = frame.to_frame(pts)
    if body.dim == 2:
        return frame, Segment(float(coords.min()), float(coords.max()))
    return frame, ConvexPolygon(_angle_order(coords, eps))


def _angle_order(coords, eps):
    centre = coords.mean(axis=0)
    d = coords - centre
    ang = np.arctan2(d[:, 1], d[:, 0])
    order = np.lexsort((np.hypot(d[:, 0], d[:, 1]), ang))
    ordered = coords[order]
    if len(ordered) > 1:
        gap = np.linalg.norm(ordered - np.roll(ordered, 1, axis=0), axis=1)
        keep = gap > eps
        if not keep.any():
            keep[0] = True
        ordered = ordered[keep]
    return ordered


def section_moments(frame, shape):
    """Measure, centroid and second moments of a section, in frame coordinates."""
    if isinstance(shape, Segment):
        lo, hi = shape.lo, shape.hi
        length = hi - lo
        second = np.array([[(hi ** 3 - lo ** 3) / 3.0]])
        return MomentSummary(length, np.array([0.5 * (lo + hi)]), second)
    if shape.is_empty:
        raise EmptySection("section is empty")
    return moments(shape)


# -- distances ----------------------------------------------------------------


def segment_distances(points, a, b):
    """Distances from each point to each segment ``[a_j, b_j]``; shape (n, m)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    d = b - a
    denom = np.einsum("ij,ij->i", d, d)
    rel = p[:, None, :] - a[None, :, :]
    lam = np.clip(np.einsum("nmj,mj->nm", rel, d) / np.where(denom > 0, denom, 1.0), 0.0, 1.0)
    diff = rel - lam[..., None] * d[None]
    return np.sqrt(np.einsum("nmj,nmj->nm", diff, diff))


def boundary_distance(polygon, points):
    """Euclidean distance from points to the boundary of a polygon."""
    v = polygon.vertices
    return segment_distances(points, v, np.roll(v, -1, axis=0)).min(axis=1)


def point_polygon_distance(polygon, points):
    """Distance from points to a convex polygon (zero inside)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    v = polygon.vertices
    if len(v) == 1:
        return np.linalg.norm(p - v[0], axis=1)
    if len(v) == 2:
        return segment_distances(p, v[:1], v[1:])[:, 0]
    d = np.roll(v, -1, axis=0) - v
    rel = p[:, None, :] - v[None]
    inside = (d[None, :, 0] * rel[..., 1] - d[None, :, 1] * rel[..., 0] >= 0).all(axis=1)
    return np.where(inside, 0.0, boundary_distance(polygon, p))


def hausdorff_distance(p, q):
    """Hausdorff distance between two convex polygons (attained at vertices)."""
    return float(max(point_polygon_distance(q, p.vertices).max(), point_polygon_distance(p, q.vertices).max()))
