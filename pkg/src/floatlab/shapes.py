"""Test bodies and direction sets.

Smooth bodies are inscribed discretisations: a disk of resolution ``m``
is the regular ``m``-gon on the circle (area error O(m^-2)); a ball is
the convex hull of a Fibonacci lattice on the sphere.
"""

import numpy as np

from .geometry import ConvexPolygon, build_polygon, build_polytope

GOLDEN_RATIO = 0.5 * (1.0 + np.sqrt(5.0))

DEFAULT_CIRCLE_DIRECTIONS = 1024
DEFAULT_SPHERE_DIRECTIONS = 2048


def circle_directions(m=DEFAULT_CIRCLE_DIRECTIONS, start=0.0):
    """Unit vectors at angles ``start + 2 pi k / m``."""
    phi = start + 2.0 * np.pi * np.arange(m) / m
    return np.column_stack([np.cos(phi), np.sin(phi)])


def fibonacci_sphere(n=DEFAULT_SPHERE_DIRECTIONS):
    """Near-uniform deterministic points on the unit sphere.

    Parameters
    ----------
    n : int
        Number of points.

    Returns
    -------
    points : ndarray, shape (n, 3)
    """
    i = np.arange(n, dtype=float) + 0.5
    z = 1.0 - 2.0 * i / n
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    theta = 2.0 * np.pi * i / GOLDEN_RATIO
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta), z])


def default_directions(dim, count=None):
    if dim == 2:
        return circle_directions(count or DEFAULT_CIRCLE_DIRECTIONS)
    return fibonacci_sphere(count or DEFAULT_SPHERE_DIRECTIONS)


def rotation_to(u):
    """A rotation matrix taking ``e_z`` to the unit vector ``u``."""
    u = np.asarray(u, dtype=float)
    z = np.array([0.0, 0.0, 1.0])
    c = float(u @ z)
    if c > 1.0 - 1e-15:
        return np.eye(3)
    if c < -1.0 + 1e-15:
        return np.diag([1.0, -1.0, -1.0])
    k = np.cross(z, u)
    s = np.linalg.norm(k)
    k = k / s
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + s * K + (1 - c) * (K @ K)


def regular_polygon(count, radius=1.0, start=0.0):
    return ConvexPolygon(radius * circle_directions(count, start))


def disk(radius=1.0, resolution=4096):
    return regular_polygon(resolution, radius)


def ellipse(a, b, resolution=2048):
    return ConvexPolygon(circle_directions(resolution) * np.array([a, b]))


def cube(side=2.0, dim=3):
    """Axis-aligned cube (square for ``dim=2``) centred at the origin."""
    h = 0.5 * side
    if dim == 2:
        return ConvexPolygon([(-h, -h), (h, -h), (h, h), (-h, h)])
    return build_polytope([(x, y, z) for x in (-h, h) for y in (-h, h) for z in (-h, h)])


def simplex(dim=3, edge=None):
    """Regular simplex centred at the origin.

    The triangle has circumradius 1; the tetrahedron uses alternate
    corners of the cube ``[-1, 1]^3`` (edge ``2 sqrt 2``).  ``edge``
    rescales to the requested edge length.
    """
    if dim == 2:
        pts = circle_directions(3, np.pi / 2)
        natural = np.sqrt(3.0)
    else:
        pts = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float)
        natural = 2.0 * np.sqrt(2.0)
    if edge is not None:
        pts = pts * (edge / natural)
    return build_polygon(pts) if dim == 2 else build_polytope(pts)


def ball(radius=1.0, resolution=10000):
    return build_polytope(radius * fibonacci_sphere(resolution))


def ellipsoid(a, b, c, resolution=10000):
    return build_polytope(fibonacci_sphere(resolution) * np.array([a, b, c]))


def random_hull(count, dim=3, seed=0):
    """Hull of ``count`` standard-normal points drawn from ``default_rng(seed)``."""
    pts = np.random.default_rng(seed).standard_normal((count, dim))
    return build_polygon(pts) if dim == 2 else build_polytope(pts)
