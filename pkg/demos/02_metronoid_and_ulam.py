"""Metronoids, their curvature and the Ulam isotropy functional.

Run with ``python3 demos/02_metronoid_and_ulam.py``.
"""

import math

import numpy as np

from floatlab import metronoid, shapes

# The metronoid boundary is the curve of cap centroids X(u).  For the disk
# at delta = 1/2 it is the circle of radius 4 / (3 pi).
disk = shapes.disk()
samples = metronoid.metronoid_boundary(disk, 0.5, shapes.circle_directions(256))
r = np.linalg.norm([s.point for s in samples], axis=1)
print(f"disk metronoid radius {r.mean():.6f} (4/(3pi) = {4 / (3 * math.pi):.6f})")

# X is the inverse Gauss map: the tangent at X(u) is orthogonal to u.
square = shapes.cube(2.0, dim=2)
samples = metronoid.metronoid_boundary(square, 0.1, shapes.circle_directions(1024))
print(f"square Gauss map residual {metronoid.gauss_map_residual(samples):.2e}")

# Its radius of curvature is m(u, T) / (delta area), with m the centred
# second moment of the cutting chord.  Compare with finite differences.
phi, radius, speed = metronoid.curvature_profile(square, 0.1, 2048)
print(f"square curvature: R in [{radius.min():.4f}, {radius.max():.4f}], "
      f"max |dX/dphi - R| / R = {np.max(np.abs(speed - radius) / radius):.2e}")

# A chord of length L centred on its midpoint has moment L^3 / 12, i.e.
# (2/3) r^3 for half-length r.
print(f"square m(e1) = {metronoid.isotropy_moment(square, 0.5, [1, 0], [0, 1]):.6f} (2/3)")
d = np.array([1.0, 1.0]) / math.sqrt(2.0)
print(f"square m(diag) = {metronoid.isotropy_moment(square, 0.5, d, [-d[1], d[0]]):.6f} (4 sqrt2 / 3)")

# Ulam's test: the metronoid is a ball exactly when m is constant.
for name, K, delta in (("disk", disk, 0.3), ("ellipse 2x1", shapes.ellipse(2, 1), 0.5), ("square", square, 0.5)):
    rep = metronoid.ulam_report(K, delta)
    print(f"{name:12} spread {rep.spread:.2e}  max/min {rep.max / rep.min:.4f}  "
          f"R {rep.R_estimate:.5f}  ulam-consistent: {rep.verdict}")

# In 3D the tangents sweep the section plane.
cube = shapes.cube()
rep = metronoid.ulam_report(cube, 0.5, shapes.fibonacci_sphere(128), tangents_per_direction=8)
print(f"cube spread {rep.spread:.3f}, ulam-consistent: {rep.verdict}")
