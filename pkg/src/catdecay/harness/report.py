"""Human-readable theory-versus-numerics summary."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..fock import LEAKAGE_THRESHOLD
from ..semiclassics import ce_classical, model_theory_spec, tau_dec, tau_p
from .fitting import crossing_time, revival

__all__ = ["Report", "emit_report"]


@dataclass
class Report:
    text: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)


def emit_report(series, fits, config, path=None, wigner_metrics=None):
    """Summarise a completed run; writes ``path`` when given.

    ``fits`` maps a column name to its :class:`GaussianFit`. Each check
    is reported as PASS or FAIL and :attr:`Report.passed` aggregates them.
    """
    spec = model_theory_spec(config.model, config.cat, config.theory_regime)
    ce = ce_classical(spec)
    tau_pred = tau_dec(ce, spec.hbar, spec.delta)
    tp1, tp2 = tau_p(spec, 1), tau_p(spec, 2)
    times = series.times
    lines = ["# decoherence run report", "", "## configuration",
             json.dumps(config.to_dict(), indent=2, sort_keys=True), "",
             "## time grid",
             f"uniform, {times.size} points on [{times[0]:g}, {times[-1]:g}]", "",
             "## theory",
             f"regime           {config.theory_regime}",
             f"C_e              {ce:.6g}",
             f"tau_dec          {tau_pred:.6g}",
             f"tau_p1           {tp1:.6g}",
             f"tau_p2           {tp2:.6g}"]
    if "I_theory" in series.columns:
        tc = crossing_time(times, series["I_theory"])
        lines.append(f"I_theory = 1/2   {'not reached' if tc is None else f'{tc:.6g}'}")

    checks = []
    lines += ["", "## numerics"]
    fit = fits.get("F_e_numeric") if fits else None
    if fit is not None:
        dev = abs(fit.tau - tau_pred) / tau_pred
        ok = dev <= config.fit_tolerance
        checks.append(("tau_dec fit", ok, f"fitted {fit.tau:.6g} vs predicted {tau_pred:.6g}, "
                                          f"deviation {dev:.1%} (tolerance {config.fit_tolerance:.0%})"))
        lines.append(f"fitted tau_dec   {fit.tau:.6g}  (residual {fit.residual:.3g}, "
                     f"{fit.n_points} points, window {fit.window})")
    if "I_numeric" in series.columns:
        tn = crossing_time(times, series["I_numeric"])
        lines.append(f"I_numeric = 1/2  {'not reached' if tn is None else f'{tn:.6g}'}")
        if config.crossover_tolerance is not None:
            dev = math.inf if tn is None else abs(tn - tau_pred) / tau_pred
            checks.append(("purity crossover", dev <= config.crossover_tolerance,
                           f"I=1/2 at {tn} vs tau_dec {tau_pred:.6g}, deviation {dev:.1%} "
                           f"(tolerance {config.crossover_tolerance:.0%})"))
        window = config.revival_window or (0.5 * times[-1], times[-1])
        rv = revival(times, series["I_numeric"], window)
        if rv is not None:
            lines.append(f"revival window   [{window[0]:g}, {window[1]:g}]: max I {rv[0]:.4f} "
                         f"at t={rv[1]:g}, mean I {rv[2]:.4f}")
    if "leakage" in series.columns:
        leak = float(series["leakage"].max())
        lines.append(f"max leakage      {leak:.3e}")
        checks.append(("truncation leakage", leak < LEAKAGE_THRESHOLD,
                       f"max top-level population {leak:.3e} (threshold {LEAKAGE_THRESHOLD:.0e})"))
    if wigner_metrics:
        lines += ["", "## wigner snapshots"]
        for m in wigner_metrics:
            lines.append("  ".join(f"{k}={v:.4g}" for k, v in m.items()))

    lines += ["", "## checks"]
    lines += [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in checks]
    report = Report("\n".join(lines) + "\n", checks)
    lines.append(f"\noverall: {'PASS' if report.passed else 'FAIL'}")
    report.text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(report.text)
    return report
