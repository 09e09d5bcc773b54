"""Central-section moments and the spherical Radon transform.

Run with ``python3 demos/03_central_sections.py``.
"""

import math

from floatlab import radon, shapes

# For a body symmetric about the origin the central sections u-perp ∩ K have
# second moments C(u, v).  Averaging over the tangent v and integrating in
# polar coordinates gives
#     avg_v C(u, v) = c / 4 * R(r_K^4)(u),   c = mean of <xi, v>^2 = 1/2.
ball = shapes.ball(1.0, 4000)
rep = radon.theorem2_report(ball, shapes.fibonacci_sphere(256))
print(f"ball: C in [{rep.min:.4f}, {rep.max:.4f}] (pi/4 = {math.pi / 4:.4f}), ball verdict {rep.verdict}")
print(f"  identity gap with c = 1/2:  {rep.cross_check().max():.2e}")
print(f"  identity gap with c = 2/pi: {rep.cross_check(radon.mean_abs_projection(3)).max():.3f}")
print("  (2/pi is the mean of |<xi, v>|, not of <xi, v>^2)")

cube = shapes.cube()
rep = radon.theorem2_report(cube, shapes.fibonacci_sphere(256))
print(f"cube: C in [{rep.min:.4f}, {rep.max:.4f}] (4/3, 8 sqrt2/3 = {8 * math.sqrt(2) / 3:.4f}), "
      f"spread {rep.spread:.2f}, ball verdict {rep.verdict}")
print(f"  identity gap with c = 1/2: {rep.cross_check().max():.2e}")

ell = shapes.ellipsoid(1.5, 1.0, 1.0, 4000)
rep = radon.theorem2_report(ell, shapes.fibonacci_sphere(256))
print(f"ellipsoid (1.5, 1, 1): spread {rep.spread:.2f}, ball verdict {rep.verdict}")

# The transform itself: R f(u) integrates f over the great circle u-perp.
r4 = radon.radial_function(cube) ** 4
print(f"cube R(r^4)(e3) = {radon.spherical_radon(r4, [0, 0, 1]):.5f}")
