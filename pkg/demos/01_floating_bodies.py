"""Convex floating bodies of a few planar and solid shapes.

Run with ``python3 demos/01_floating_bodies.py``.
"""

import math

import numpy as np

from floatlab import floating, shapes

# The cut offset t(u, delta) is the height at which a plane with normal u
# cuts off the fraction delta of the body.  For the unit disk it is the root
# of (arccos t - t sqrt(1 - t^2)) / pi = delta.
disk = shapes.disk(1.0, 4096)
for delta in (0.1, 0.25, 0.5):
    t = floating.cut_offset(disk, [1.0, 0.0], delta)
    print(f"disk  delta={delta:<5} t={t:.6f}")

# Intersecting the lower halfspaces over all directions gives K_delta.  For
# the disk it is again a disk, of radius t(delta).
fb = floating.floating_body(disk, 0.2, shapes.circle_directions(512))
radii = np.linalg.norm(fb.body.vertices, axis=1)
print(f"disk K_0.2: {fb.kind}, radius {radii.mean():.5f}, area {fb.measure:.5f}")

# For the square the floating body shrinks to the centre as delta -> 1/2.
square = shapes.cube(2.0, dim=2)
for delta in (0.1, 0.3, 0.45, 0.49):
    fb = floating.floating_body(square, delta)
    print(f"square delta={delta:<5} {fb.kind:5} diameter {fb.body.diameter:.4f}")

# Asymmetric bodies lose their floating body before delta = 1/2.  The
# critical fraction for the simplex is (n / (n + 1))^n, above the Helly bound.
tri = shapes.simplex(2)
tet = shapes.simplex(3)
print(f"triangle   delta_c = {floating.critical_delta(tri):.5f}  (4/9 = {4 / 9:.5f})")
print(f"tetrahedron delta_c = {floating.critical_delta(tet):.5f}  (27/64 = {27 / 64:.5f})")
print(f"Helly bounds: 1/3 = {1 / 3:.4f}, 1/4 = 0.25")

# Dupin: the supporting line of K_delta with normal u touches it at the
# centroid of the cutting chord.
for name, K, delta in (("disk", disk, 0.3), ("square", square, 0.1), ("ellipse", shapes.ellipse(2, 1), 0.25)):
    u = np.array([math.cos(0.4), math.sin(0.4)])
    print(f"Dupin residual {name:8} {floating.dupin_tangency_residual(K, delta, u):.2e}")
