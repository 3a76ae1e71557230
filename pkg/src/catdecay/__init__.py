"""Exact numerics and semiclassical theory for purity decay of cat states
in coupled integrable systems."""

from .errors import ConfigError, LeakageWarning, TruncationError
from .fock import (ModeBasis, auto_cutoff, coherent_state, ladder_down, quadrature,
                   tensor_op, tensor_state)
from .model import (CatSpec, ModelParams, PacketSpec, build_coupling, build_h0,
                    build_hamiltonian, classical_vbar, make_bases, time_average_coupling)
from .observables import WignerGrid, cross_env_purity, mode_expectation, partial_trace, purity, wigner
from .propagator import (SpectralDecomposition, decompose, echo_evolve, effective_echo_evolve,
                         evolve, make_propagator)
from .semiclassics import (TheorySpec, ce_classical, ce_quantum, fe_theory, full_purity_theory,
                           individual_purity_theory, model_theory_spec, short_time_ce, tau_dec,
                           u_factor)

__version__ = "0.1.0"
