"""Experiment configuration, runs, fits and reports."""

from .config import RunConfig, config_from_dict, load_config
from .experiment import (COLUMNS, Simulation, TimeSeries, centroid_phase, run_decoherence_experiment,
                         run_wigner_snapshots, theory_series)
from .fitting import GaussianFit, crossing_time, fit_gaussian_tau, revival
from .report import Report, emit_report
