"""JSON run configuration with strict key checking."""

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import ConfigError
from ..model import CatSpec, ModelParams, PacketSpec

__all__ = ["RunConfig", "load_config", "config_from_dict"]

MODES = ("full", "echo", "effective")
REGIMES = ("averaged", "instantaneous")


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams = field(default_factory=ModelParams)
    cat: CatSpec = field(default_factory=CatSpec)
    t_max: float = 300.0
    n_steps: int = 400
    cutoffs: tuple = (None, None)
    mode: str = "full"
    theory_regime: str = "averaged"
    wigner_times: tuple = ()
    wigner_points: int = 201
    fit_window: tuple = (0.2, 0.9)
    fit_tolerance: float = 0.15
    crossover_tolerance: float = None
    revival_window: tuple = None
    dense_limit: int = 6000
    output_dir: str = "run"
    seed: int = None  # reserved; every path is deterministic

    def __post_init__(self):
        if not self.t_max > 0:
            raise ConfigError(f"time.t_max must be > 0, got {self.t_max!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ConfigError(f"time.n_steps must be an integer >= 2, got {self.n_steps!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.theory_regime not in REGIMES:
            raise ConfigError(f"theory_regime must be one of {REGIMES}, got {self.theory_regime!r}")
        for t in self.wigner_times:
            if not 0 <= t <= self.t_max:
                raise ConfigError(f"outputs.wigner_times entry {t!r} outside [0, t_max={self.t_max}]")
        lo, hi = self.fit_window
        if not 0 < lo < hi < 1:
            raise ConfigError(f"report.fit_window must satisfy 0 < lo < hi < 1, got {self.fit_window!r}")

    @property
    def times(self):
        import numpy as np
        return np.linspace(0.0, self.t_max, int(self.n_steps) + 1)

    def with_hbar(self, hbar):
        return replace(self, model=replace(self.model, hbar=hbar))

    def to_dict(self):
        def packet(p):
            return {"j_star": p.j_star, "theta_star": p.theta_star, "squeezing": p.squeezing}

        m = self.model
        return {
            "model": {
                "gamma_c": m.gamma_c,
                "gamma_e": m.gamma_e,
                "delta_shift": m.delta_shift,
                "coupling_strength": m.coupling_strength,
                "hbar": m.hbar,
            },
            "cat": {
                "central_1": packet(self.cat.central_1),
                "central_2": packet(self.cat.central_2),
                "environment": packet(self.cat.environment),
            },
            "time": {"t_max": self.t_max, "n_steps": self.n_steps},
            "cutoffs": {"central": self.cutoffs[0], "environment": self.cutoffs[1]},
            "mode": self.mode,
            "theory_regime": self.theory_regime,
            "outputs": {"wigner_times": list(self.wigner_times), "wigner_points": self.wigner_points},
            "report": {
                "fit_window": list(self.fit_window),
                "fit_tolerance": self.fit_tolerance,
                "crossover_tolerance": self.crossover_tolerance,
                "revival_window": None if self.revival_window is None else list(self.revival_window),
            },
            "dense_limit": self.dense_limit,
            "output_dir": self.output_dir,
            "seed": self.seed,
        }


def _section(d, allowed, where):
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise ConfigError(f"{where or 'config'} must be a JSON object")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        prefix = f"{where}." if where else ""
        raise ConfigError(f"unknown config key(s): {', '.join(prefix + k for k in unknown)}")
    return d


def _packet(d, default, where):
    d = _section(d, ("j_star", "theta_star", "squeezing"), where)
    return PacketSpec(
        j_star=float(d.get("j_star", default.j_star)),
        theta_star=float(d.get("theta_star", default.theta_star)),
        squeezing=d.get("squeezing"),
    )


def config_from_dict(d):
    """Build a :class:`RunConfig`; missing fields take the documented defaults."""
    try:
        return _build(d)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _build(d):
    d = _section(d, ("model", "cat", "time", "cutoffs", "mode", "theory_regime", "outputs",
                     "report", "dense_limit", "output_dir", "seed"), "")
    base = RunConfig()
    m = _section(d.get("model"), ("gamma_c", "gamma_e", "delta_shift", "coupling_strength",
                                  "hbar", "hbar_inverse"), "model")
    if "hbar" in m and "hbar_inverse" in m:
        raise ConfigError("model.hbar and model.hbar_inverse are mutually exclusive")
    hbar = 1.0 / float(m["hbar_inverse"]) if "hbar_inverse" in m else float(m.get("hbar", base.model.hbar))
    model = ModelParams(
        gamma_c=float(m.get("gamma_c", base.model.gamma_c)),
        gamma_e=float(m.get("gamma_e", base.model.gamma_e)),
        delta_shift=float(m.get("delta_shift", base.model.delta_shift)),
        coupling_strength=float(m.get("coupling_strength", base.model.coupling_strength)),
        hbar=hbar,
    )
    c = _section(d.get("cat"), ("central_1", "central_2", "environment"), "cat")
    cat = CatSpec(
        central_1=_packet(c.get("central_1"), base.cat.central_1, "cat.central_1"),
        central_2=_packet(c.get("central_2"), base.cat.central_2, "cat.central_2"),
        environment=_packet(c.get("environment"), base.cat.environment, "cat.environment"),
    )
    t = _section(d.get("time"), ("t_max", "n_steps"), "time")
    cut = _section(d.get("cutoffs"), ("central", "environment"), "cutoffs")
    out = _section(d.get("outputs"), ("wigner_times", "wigner_points"), "outputs")
    rep = _section(d.get("report"), ("fit_window", "fit_tolerance", "crossover_tolerance",
                                     "revival_window"), "report")
    return RunConfig(
        model=model,
        cat=cat,
        t_max=float(t.get("t_max", base.t_max)),
        n_steps=t.get("n_steps", base.n_steps),
        cutoffs=(cut.get("central"), cut.get("environment")),
        mode=d.get("mode", base.mode),
        theory_regime=d.get("theory_regime", base.theory_regime),
        wigner_times=tuple(float(x) for x in out.get("wigner_times", ())),
        wigner_points=int(out.get("wigner_points", base.wigner_points)),
        fit_window=tuple(rep.get("fit_window", base.fit_window)),
        fit_tolerance=float(rep.get("fit_tolerance", base.fit_tolerance)),
        crossover_tolerance=rep.get("crossover_tolerance"),
        revival_window=None if rep.get("revival_window") is None else tuple(rep["revival_window"]),
        dense_limit=int(d.get("dense_limit", base.dense_limit)),
        output_dir=str(d.get("output_dir", base.output_dir)),
        seed=d.get("seed"),
    )


def load_config(path):
    """Read a JSON document; an empty file or ``{}`` gives the default run."""
    text = Path(path).read_text()
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(data)


def hbar_from_inverse(n):
    if n <= 0 or not math.isfinite(n):
        raise ConfigError(f"--hbar-inverse must be positive, got {n!r}")
    return 1.0 / n
