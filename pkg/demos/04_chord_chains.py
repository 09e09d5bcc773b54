"""Chord chains tangent to an inner circle.

Run with ``python3 demos/04_chord_chains.py``.
"""

import math

import numpy as np

from floatlab import chordchain, shapes

# From p outside r S^1 take the tangent chord whose midpoint is the
# tangency point.  On a centred disk this is a rotation by 2 arccos(r/|p|).
state = chordchain.chain_run(chordchain.Circle(2.0), 1.0, [2.0, 0.0], 9)
print("disk R=2, r=1 angles / (2pi/3):", np.round(np.unwrap(state.angles) / (2 * math.pi / 3), 12))
print("period:", chordchain.period(state))

# theta = 1 rad is not a rational multiple of pi: the orbit fills the circle.
R = 1.5
state = chordchain.chain_run(chordchain.Circle(R), R * math.cos(1.0), [R, 0.0], 500)
print(f"irrational rotation: radius spread {np.ptp(state.radii):.1e}, "
      f"largest angular gap {chordchain.angular_gap(state.angles):.4f} (2pi/501 = {2 * math.pi / 501:.4f})")

# On the square the endpoints leave the boundary: this inner disk is not
# the square's floating body.
state = chordchain.chain_run(shapes.cube(2.0, dim=2), 0.8, [1.0, 0.0], 50)
print(f"square, r=0.8: closure defect {state.closure_defect:.3f}")
