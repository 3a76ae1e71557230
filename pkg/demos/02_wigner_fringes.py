"""
Watching the fringes fade
=========================

Wigner function of the central oscillator in the interaction picture.
At t = 0 the two packets are joined by strongly negative interference
fringes; they fade on the decoherence time, and by t = 300 the packet
with the larger action has smeared out along its orbit.
"""

import numpy as np

from catdecay.harness.config import config_from_dict
from catdecay.harness.experiment import run_wigner_snapshots

cfg = config_from_dict({
    "model": {"hbar_inverse": 100},
    "mode": "echo",
    "outputs": {"wigner_times": [0, 50, 100, 300], "wigner_points": 121},
})
grids, metrics = run_wigner_snapshots(cfg)

for m in metrics:
    print(f"t={m['t']:5.0f}  min W {m['min_W']:+.4f}  at midpoint {m['midpoint_W']:+.4f}  "
          f"packet weights {m['weight_packet_1']:.3f} / {m['weight_packet_2']:.3f}  "
          f"purity {m['purity']:.3f} (pi*int W^2 = {m['purity_quadrature']:.3f})")


# vertical cut through the midpoint between the packets: the fringes
# alternate in sign along it and lose their contrast as F_e decays
x_mid = 0.5 * (np.sqrt(0.4) + np.sqrt(0.02))
col = int(np.argmin(np.abs(grids[0].x_axis - x_mid)))
rows = np.abs(grids[0].y_axis) <= 0.1
print(f"\n     y    W(t=0)    W(t=100)   (x = {grids[0].x_axis[col]:.3f})")
for y, w0, w100 in zip(grids[0].y_axis[rows], grids[0].values[rows, col], grids[2].values[rows, col]):
    print(f"{y:+.3f}   {w0:+.4f}   {w100:+.4f}")
