"""
Before the coupling averages out
================================

With a stronger coupling (delta = 0.06) and a second packet at action 1,
the packets decohere before the free rotation has had time to average
the coupling. The relevant gradient is then that of the bare coupling
at the initial angles, sixteen times the averaged one, so tau_dec drops
by a factor of four.

The product space is 190 x 66, so the run uses the sparse
matrix-exponential propagator.
"""

from catdecay.harness.config import config_from_dict
from catdecay.harness.experiment import run_decoherence_experiment
from catdecay.harness.fitting import fit_gaussian_tau
from catdecay.semiclassics import ce_classical, model_theory_spec, tau_dec

cfg = config_from_dict({
    "model": {"hbar_inverse": 100, "coupling_strength": 0.06},
    "cat": {"central_2": {"j_star": 1.0}},
    "time": {"t_max": 1.0, "n_steps": 100},
    "theory_regime": "instantaneous",
    "cutoffs": {"environment": 66},
})
series = run_decoherence_experiment(cfg)
fit = fit_gaussian_tau(series)

p = cfg.model
averaged = tau_dec(ce_classical(model_theory_spec(p, cfg.cat, "averaged")), p.hbar, p.coupling_strength)
short = tau_dec(ce_classical(model_theory_spec(p, cfg.cat, "instantaneous")), p.hbar, p.coupling_strength)
print(f"averaged-coupling tau_dec     {averaged:.4f}")
print(f"bare-coupling tau_dec         {short:.4f}  (= averaged / {averaged / short:.1f})")
print(f"fitted from exact dynamics    {fit.tau:.4f}")
