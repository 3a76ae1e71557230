"""Run orchestration: purity time series and Wigner snapshots."""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from ..fock import ladder_down, top_level_leakage, warn_leakage
from ..model import (build_coupling, build_h0, build_hamiltonian, cat_state, make_bases,
                     packet_states, time_average_coupling)
from ..observables import cross_env_purity, mode_expectation, partial_trace, purity, wigner
from ..propagator import DiagonalPropagator, echo_states, make_propagator
from ..semiclassics import (ce_classical, fe_theory, individual_purity_theory,
                            model_theory_spec, tau_dec)

__all__ = [
    "TimeSeries",
    "COLUMNS",
    "Simulation",
    "run_decoherence_experiment",
    "theory_series",
    "run_wigner_snapshots",
    "centroid_phase",
]

COLUMNS = ("I_numeric", "I_theory", "F_e_numeric", "F_e_theory", "I1_numeric", "I2_numeric",
           "I1_theory", "I2_theory", "leakage")
_CHUNK = 256


@dataclass
class TimeSeries:
    times: np.ndarray
    columns: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        for name, col in self.columns.items():
            col = np.asarray(col, dtype=float)
            if col.shape != self.times.shape:
                raise ValueError(f"column {name!r} has {col.size} entries, times has {self.times.size}")
            self.columns[name] = col

    def __getitem__(self, name):
        return self.times if name == "t" else self.columns[name]

    def to_csv(self, path):
        names = [n for n in COLUMNS if n in self.columns] + [n for n in self.columns if n not in COLUMNS]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + names)
            for k, t in enumerate(self.times):
                w.writerow([repr(float(t))] + [repr(float(self.columns[n][k])) for n in names])
        return Path(path)

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows or rows[0][0] != "t":
            raise ValueError(f"{path}: expected a header row starting with 't'")
        data = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float).reshape(-1, len(rows[0]))
        return cls(data[:, 0], {name: data[:, i + 1] for i, name in enumerate(rows[0][1:])})


class Simulation:
    """Operators, packets and propagator for one configuration.

    Building this once and reusing it across time grids and pictures keeps
    the expensive decomposition cached.
    """

    def __init__(self, cfg):
        self.cfg = cfg
        p = cfg.model
        self.bc, self.be = make_bases(p, cfg.cat, cfg.cutoffs)
        self.dims = (self.bc.levels, self.be.levels)
        self.psi_c1, self.psi_c2, self.psi_e = packet_states(cfg.cat, self.bc, self.be)
        self.branch_1 = np.kron(self.psi_c1, self.psi_e)
        self.branch_2 = np.kron(self.psi_c2, self.psi_e)
        self.cat = cat_state(self.psi_c1, self.psi_c2, self.psi_e)
        # the cat state is a fixed linear combination of the two branches
        self.cat_norm = 1.0 / math.sqrt(2.0 + 2.0 * np.vdot(self.psi_c1, self.psi_c2).real)
        sparse = self.bc.levels * self.be.levels > cfg.dense_limit
        self.h0_diag = np.asarray(build_h0(p, self.bc, self.be, sparse=True).diagonal())
        self._sparse = sparse
        self._props = {}

    def propagator(self, mode=None):
        mode = self.cfg.mode if mode is None else mode
        if mode not in self._props:
            p = self.cfg.model
            if mode == "effective":
                vbar = time_average_coupling(build_coupling(p, self.bc, self.be, sparse=True),
                                             build_h0(p, self.bc, self.be, sparse=True))
                self._props[mode] = make_propagator(p.coupling_strength * vbar, p.hbar,
                                                    self.cfg.dense_limit)
            else:
                if "H" not in self._props:
                    h = build_hamiltonian(p, self.bc, self.be, sparse=self._sparse)
                    self._props["H"] = make_propagator(h, p.hbar, self.cfg.dense_limit)
                self._props[mode] = self._props["H"]
        return self._props[mode]

    def states(self, psi0, times, mode=None):
        mode = self.cfg.mode if mode is None else mode
        prop = self.propagator(mode)
        if mode == "echo":
            return echo_states(prop, DiagonalPropagator(self.h0_diag, self.cfg.model.hbar), psi0, times)
        return prop.states(psi0, times)


def _numeric_columns(sim, times, mode):
    n = times.size
    out = {k: np.empty(n) for k in ("I_numeric", "F_e_numeric", "I1_numeric", "I2_numeric", "leakage")}
    worst = np.zeros(2)
    for start in range(0, n, _CHUNK):
        block = times[start:start + _CHUNK]
        s1 = sim.states(sim.branch_1, block, mode)
        s2 = sim.states(sim.branch_2, block, mode)
        for k in range(block.size):
            i = start + k
            cat = sim.cat_norm * (s1[k] + s2[k])
            out["I_numeric"][i] = purity(partial_trace(cat, "c", sim.dims))
            out["I1_numeric"][i] = purity(partial_trace(s1[k], "c", sim.dims))
            out["I2_numeric"][i] = purity(partial_trace(s2[k], "c", sim.dims))
            out["F_e_numeric"][i] = cross_env_purity(partial_trace(s1[k], "e", sim.dims),
                                                     partial_trace(s2[k], "e", sim.dims))
            leaks = np.array([top_level_leakage(v, sim.dims) for v in (cat, s1[k], s2[k])])
            worst = np.maximum(worst, leaks.max(axis=0))
            out["leakage"][i] = leaks.max()
    out["mode_leakage"] = tuple(worst)
    return out


def theory_series(cfg, times=None):
    """Closed-form columns only; no quantum numerics."""
    times = cfg.times if times is None else np.asarray(times, dtype=float)
    spec = model_theory_spec(cfg.model, cfg.cat, cfg.theory_regime)
    tau = tau_dec(ce_classical(spec), spec.hbar, spec.delta)
    i1 = individual_purity_theory(times, spec, 1)
    i2 = individual_purity_theory(times, spec, 2)
    fe = fe_theory(times, tau)
    return TimeSeries(times, {"I_theory": 0.25 * (i1 + i2 + 2.0 * fe), "F_e_theory": fe,
                              "I1_theory": i1, "I2_theory": i2})


def run_decoherence_experiment(cfg, simulation=None):
    """Evolve the cat branches and tabulate numerics next to theory.

    ``I_numeric`` is the purity of the true cat state (rebuilt from the two
    evolved branches by linearity); ``I1/I2_numeric`` and ``F_e_numeric``
    are the branch diagnostics.
    """
    sim = Simulation(cfg) if simulation is None else simulation
    times = cfg.times
    numeric = _numeric_columns(sim, times, cfg.mode)
    warn_leakage(*numeric.pop("mode_leakage"))
    theory = theory_series(cfg, times)
    cols = {**numeric, **theory.columns}
    return TimeSeries(times, {name: cols[name] for name in COLUMNS})


def centroid_phase(cfg, times, which=1, mode=None, simulation=None):
    """Unwrapped ``arg <a_c>`` of a single-branch state over ``times``."""
    sim = Simulation(cfg) if simulation is None else simulation
    psi0 = sim.branch_1 if which == 1 else sim.branch_2
    a = ladder_down(sim.bc)
    vals = [mode_expectation(partial_trace(s, "c", sim.dims), a)
            for s in sim.states(psi0, np.asarray(times, dtype=float), mode)]
    return np.unwrap(np.angle(vals))


def _packet_centre(packet, cfg, t):
    # classical rotation of the central angle under the averaged coupling
    je = cfg.cat.environment.j_star
    theta = packet.theta_star - 4.0 * cfg.model.coupling_strength * je * t
    r = math.sqrt(2.0 * packet.j_star)
    return r * math.cos(theta), r * math.sin(theta)


def run_wigner_snapshots(cfg, out_dir=None, simulation=None):
    """Wigner functions of the interaction-picture central state.

    Returns ``(grids, metrics)``: one :class:`WignerGrid` per snapshot time
    and a list of per-snapshot diagnostics. If ``out_dir`` is given, each
    grid is written as a text file there.
    """
    if cfg.mode == "full":
        raise ConfigError("mode: Wigner snapshots need mode 'echo' or 'effective'")
    if not cfg.wigner_times:
        raise ConfigError("outputs.wigner_times is empty")
    from .io import write_wigner

    sim = Simulation(cfg) if simulation is None else simulation
    times = np.asarray(sorted(cfg.wigner_times), dtype=float)
    s1 = sim.states(sim.branch_1, times, cfg.mode)
    s2 = sim.states(sim.branch_2, times, cfg.mode)
    extent = 1.6 * max(math.sqrt(2.0 * p.j_star) for p in (cfg.cat.central_1, cfg.cat.central_2))
    axis = np.linspace(-extent, extent, cfg.wigner_points)
    radius = 3.0 * math.sqrt(cfg.model.hbar / 2.0)
    grids, metrics = [], []
    for k, t in enumerate(times):
        rho = partial_trace(sim.cat_norm * (s1[k] + s2[k]), "c", sim.dims)
        g = wigner(rho, sim.bc, axis, axis)
        c1 = _packet_centre(cfg.cat.central_1, cfg, t)
        c2 = _packet_centre(cfg.cat.central_2, cfg, t)
        mid = (0.5 * (c1[0] + c2[0]), 0.5 * (c1[1] + c2[1]))
        metrics.append({
            "t": float(t),
            "min_W": float(g.values.min()),
            "max_W": float(g.values.max()),
            "midpoint_W": g.value_at(*mid),
            "weight_packet_1": g.region_weight(*c1, radius),
            "weight_packet_2": g.region_weight(*c2, radius),
            "integral": g.integral(),
            "purity": purity(rho),
            "purity_quadrature": g.purity_quadrature(),
        })
        grids.append(g)
        if out_dir is not None:
            write_wigner(Path(out_dir) / f"wigner_t{t:g}.txt", g, t)
    return grids, metrics
