"""Unitary time evolution: dense spectral, diagonal and sparse propagators.

All propagators evolve with ``exp(-i H t / hbar)``. The dense path caches
the eigendecomposition once per Hamiltonian and reuses it over the whole
time grid; above ``DENSE_LIMIT`` the sparse path propagates with
``scipy.sparse.linalg.expm_multiply``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .fock import is_hermitian

__all__ = [
    "SpectralDecomposition",
    "decompose",
    "evolve",
    "evolve_series",
    "echo_evolve",
    "effective_echo_evolve",
    "SpectralPropagator",
    "DiagonalPropagator",
    "SparsePropagator",
    "make_propagator",
    "echo_states",
    "DENSE_LIMIT",
]

DENSE_LIMIT = 6000
_CHUNK = 256


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source_dim: int

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def decompose(a):
    """Ascending eigendecomposition of a Hermitian matrix."""
    a = a.toarray() if sp.issparse(a) else np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not is_hermitian(a, rtol=1e-10):
        raise ValueError("decompose requires a Hermitian matrix")
    w, u = np.linalg.eigh(a)
    return SpectralDecomposition(w, u, a.shape[0])


def _phases(eigenvalues, t, hbar):
    return np.exp(-1j * np.multiply.outer(eigenvalues, np.atleast_1d(t)) / hbar)


def evolve(s, psi0, t, hbar):
    """``exp(-i A t / hbar) psi0`` from a spectral decomposition of ``A``."""
    psi0 = np.asarray(psi0)
    if psi0.shape != (s.source_dim,):
        raise ValueError(f"state dim {psi0.shape} does not match operator dim {s.source_dim}")
    u = s.eigenvectors
    coeff = u.conj().T @ psi0
    return u @ (np.exp(-1j * s.eigenvalues * t / hbar) * coeff)


def evolve_series(s, psi0, times, hbar):
    """States at every time in ``times``, shape ``(len(times), dim)``."""
    times = np.asarray(times, dtype=float)
    u = s.eigenvectors
    coeff = u.conj().T @ np.asarray(psi0)
    out = np.empty((times.size, s.source_dim), dtype=complex)
    for start in range(0, times.size, _CHUNK):
        block = times[start : start + _CHUNK]
        out[start : start + block.size] = (u @ (_phases(s.eigenvalues, block, hbar) * coeff[:, None])).T
    return out


def echo_evolve(s_h, s_h0, psi0, t, hbar):
    """Echo-operator evolution ``exp(i H0 t/hbar) exp(-i H t/hbar) psi0``."""
    return evolve(s_h0, evolve(s_h, psi0, t, hbar), -t, hbar)


def effective_echo_evolve(s_vbar, psi0, t, delta, hbar):
    """Leading-order echo evolution ``exp(-i delta t Vbar / hbar) psi0``."""
    return evolve(s_vbar, psi0, delta * t, hbar)


class SpectralPropagator:
    """Dense propagator backed by a cached :class:`SpectralDecomposition`."""

    def __init__(self, h, hbar, decomposition=None):
        self.hbar = hbar
        self.decomposition = decomposition if decomposition is not None else decompose(h)
        self.dim = self.decomposition.source_dim

    def propagate(self, psi, t):
        return evolve(self.decomposition, psi, t, self.hbar)

    def states(self, psi0, times):
        return evolve_series(self.decomposition, psi0, times, self.hbar)


class DiagonalPropagator:
    """Propagator for a Hamiltonian that is diagonal in the working basis."""

    def __init__(self, diagonal, hbar):
        self.diagonal = np.asarray(diagonal, dtype=float)
        self.hbar = hbar
        self.dim = self.diagonal.size

    def propagate(self, psi, t):
        return np.exp(-1j * self.diagonal * t / self.hbar) * psi

    def states(self, psi0, times):
        return (_phases(self.diagonal, times, self.hbar) * np.asarray(psi0)[:, None]).T


class SparsePropagator:
    """Iterative propagator for large sparse Hamiltonians.

    Uses the truncated-Taylor action of the matrix exponential with
    error control at double precision (Al-Mohy and Higham), so no time
    step has to be chosen by hand.
    """

    def __init__(self, h, hbar):
        self.generator = sp.csr_matrix(h, dtype=complex) * (-1j / hbar)
        self.hbar = hbar
        self.dim = h.shape[0]
        self._trace = self.generator.diagonal().sum()

    def propagate(self, psi, t):
        if t == 0:
            return np.array(psi, dtype=complex)
        return expm_multiply(self.generator * t, np.asarray(psi, dtype=complex), traceA=self._trace * t)

    def states(self, psi0, times):
        times = np.asarray(times, dtype=float)
        if times.size == 0:
            return np.empty((0, self.dim), dtype=complex)
        steps = np.diff(times)
        if times.size > 2 and np.allclose(steps, steps[0], rtol=1e-12, atol=0) and steps[0] > 0:
            first = self.propagate(psi0, times[0])
            return expm_multiply(
                self.generator, first, start=0.0, stop=times[-1] - times[0],
                num=times.size, endpoint=True, traceA=self._trace,
            )
        out = np.empty((times.size, self.dim), dtype=complex)
        psi, t_prev = np.asarray(psi0, dtype=complex), 0.0
        for k, t in enumerate(times):
            psi = self.propagate(psi, t - t_prev)
            out[k], t_prev = psi, t
        return out


def make_propagator(h, hbar, dense_limit=DENSE_LIMIT):
    """Pick the cheapest exact propagator for ``h``."""
    if sp.issparse(h):
        coo = h.tocoo()
        if np.all(coo.row == coo.col):
            return DiagonalPropagator(h.diagonal().real, hbar)
        if h.shape[0] > dense_limit:
            return SparsePropagator(h, hbar)
        return SpectralPropagator(h.toarray(), hbar)
    h = np.asarray(h)
    if not np.any(h - np.diag(np.diag(h))):
        return DiagonalPropagator(np.diag(h).real, hbar)
    if h.shape[0] > dense_limit:
        return SparsePropagator(sp.csr_matrix(h), hbar)
    return SpectralPropagator(h, hbar)


def echo_states(prop_h, prop_h0, psi0, times):
    """Interaction-picture states ``M(t) psi0`` on a time grid."""
    states = prop_h.states(psi0, times)
    for k, t in enumerate(np.asarray(times, dtype=float)):
        states[k] = prop_h0.propagate(states[k], -t)
    return states
