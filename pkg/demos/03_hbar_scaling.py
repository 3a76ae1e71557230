"""
How the decoherence time scales with hbar
=========================================

The Gaussian prediction is tau_dec = sqrt(hbar / C_e) / delta. Here we fit
the exact F_e at three values of hbar and compare. At hbar = 1/25 the
packets hold only a handful of quanta and F_e grows a fat tail, so the
fitted time overshoots the prediction; the agreement improves as hbar
shrinks.
"""

import math

from catdecay.harness.config import config_from_dict
from catdecay.harness.experiment import run_decoherence_experiment
from catdecay.harness.fitting import fit_gaussian_tau

rows = []
for n in (25, 50, 100):
    cfg = config_from_dict({"model": {"hbar_inverse": n}, "time": {"t_max": 300.0, "n_steps": 600}})
    fit = fit_gaussian_tau(run_decoherence_experiment(cfg))
    pred = 416.09 * math.sqrt(1.0 / n)
    rows.append((n, fit.tau, pred))
    print(f"1/hbar={n:4d}  fitted {fit.tau:7.2f}  predicted {pred:7.2f}  ratio {fit.tau / pred:.3f}")

print(f"\ntau(1/25) / tau(1/100) = {rows[0][1] / rows[-1][1]:.3f}   (sqrt law: 2)")
