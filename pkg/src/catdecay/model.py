"""Two coupled anharmonic oscillators and their time-averaged coupling.

The full Hamiltonian is ``H = H0 + delta * V`` with

    H0 = g_c (hbar n_c - D)^2 + g_e (hbar n_e - D)^2
    V  = hbar^2 (a_c^+ + a_c)^2 (a_e^+ + a_e)^2

``delta`` is kept out of ``V`` and applied only in :func:`build_hamiltonian`.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError
from .fock import ModeBasis, auto_cutoff, coherent_state, quadrature_squared

__all__ = [
    "ModelParams",
    "PacketSpec",
    "CatSpec",
    "make_bases",
    "build_h0",
    "build_coupling",
    "build_hamiltonian",
    "time_average_coupling",
    "classical_vbar",
    "classical_coupling",
    "packet_states",
    "cat_state",
]


@dataclass(frozen=True)
class ModelParams:
    gamma_c: float = 1.0
    gamma_e: float = 0.6456
    delta_shift: float = 1.2
    coupling_strength: float = 0.01
    hbar: float = 0.01

    def __post_init__(self):
        if not self.hbar > 0:
            raise ConfigError(f"model.hbar must be positive, got {self.hbar!r}")
        if self.coupling_strength < 0:
            raise ConfigError(
                f"model.coupling_strength must be >= 0, got {self.coupling_strength!r}"
            )


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian action packet centred at ``(j_star, theta_star)``.

    ``squeezing`` defaults to the coherent-state value ``1 / (2 j_star)``.
    """

    j_star: float
    theta_star: float = 0.0
    squeezing: float = None

    def __post_init__(self):
        if self.j_star < 0:
            raise ConfigError(f"j_star must be >= 0, got {self.j_star!r}")
        if self.squeezing is None:
            lam = 1.0 / (2.0 * self.j_star) if self.j_star > 0 else math.inf
            object.__setattr__(self, "squeezing", lam)
        elif not self.squeezing > 0:
            raise ConfigError(f"squeezing must be positive, got {self.squeezing!r}")

    def alpha(self, hbar):
        return math.sqrt(self.j_star / hbar) * np.exp(1j * self.theta_star)


@dataclass(frozen=True)
class CatSpec:
    central_1: PacketSpec = field(default_factory=lambda: PacketSpec(0.2))
    central_2: PacketSpec = field(default_factory=lambda: PacketSpec(0.01))
    environment: PacketSpec = field(default_factory=lambda: PacketSpec(0.1))


def make_bases(params, cat, cutoffs=(None, None)):
    """Central and environment bases; ``None`` cutoffs follow :func:`auto_cutoff`."""
    hbar = params.hbar
    nc, ne = cutoffs
    if nc is None:
        nc = auto_cutoff(max(abs(cat.central_1.alpha(hbar)), abs(cat.central_2.alpha(hbar))))
    if ne is None:
        ne = auto_cutoff(abs(cat.environment.alpha(hbar)))
    return ModeBasis(int(nc), hbar, "c"), ModeBasis(int(ne), hbar, "e")


def _check_hbar(p, bc, be):
    for b in (bc, be):
        if not math.isclose(b.hbar, p.hbar, rel_tol=1e-12):
            raise ConfigError(
                f"basis {b.label!r} has hbar={b.hbar!r} but model.hbar={p.hbar!r}"
            )


def _h0_diagonal(p, bc, be):
    ec = p.gamma_c * (bc.actions - p.delta_shift) ** 2
    ee = p.gamma_e * (be.actions - p.delta_shift) ** 2
    return (ec[:, None] + ee[None, :]).ravel()


def build_h0(p, bc, be, sparse=False):
    """Uncoupled Hamiltonian; diagonal in the composite Fock basis."""
    _check_hbar(p, bc, be)
    d = _h0_diagonal(p, bc, be)
    return sp.diags(d, format="csr") if sparse else np.diag(d)


def build_coupling(p, bc, be, sparse=False):
    """``hbar^2 X_c^2 (x) X_e^2`` without the coupling strength."""
    _check_hbar(p, bc, be)
    xc, xe = quadrature_squared(bc), quadrature_squared(be)
    if sparse:
        return (p.hbar**2 * sp.kron(sp.csr_matrix(xc), sp.csr_matrix(xe))).tocsr()
    return p.hbar**2 * np.kron(xc, xe)


def build_hamiltonian(p, bc, be, sparse=False):
    return build_h0(p, bc, be, sparse) + p.coupling_strength * build_coupling(p, bc, be, sparse)


def _is_diagonal(a):
    if sp.issparse(a):
        coo = a.tocoo()
        return bool(np.all((coo.row == coo.col) | (coo.data == 0)))
    a = np.asarray(a)
    return not np.any(a - np.diag(np.diag(a)))


def time_average_coupling(V, H0, degeneracy_tol=None):
    """Infinite-time average of ``V`` in the interaction picture of ``H0``.

    In the eigenbasis of ``H0`` every element of ``V`` that connects two
    energies further apart than ``degeneracy_tol`` is dropped; (near-)
    degenerate blocks are kept whole. The default tolerance is ``1e-9``
    times the spectral range of ``H0``.

    A diagonal ``H0`` (dense or sparse) skips the eigendecomposition, and a
    sparse ``V`` then yields a sparse result.
    """
    if _is_diagonal(H0):
        energies = np.asarray(H0.diagonal()).real
        vecs = None
    else:
        H0 = np.asarray(H0)
        energies, vecs = np.linalg.eigh(H0)
    if degeneracy_tol is None:
        degeneracy_tol = 1e-9 * (energies.max() - energies.min())

    if vecs is None and sp.issparse(V):
        coo = V.tocoo()
        keep = np.abs(energies[coo.row] - energies[coo.col]) <= degeneracy_tol
        return sp.csr_matrix(
            (coo.data[keep], (coo.row[keep], coo.col[keep])), shape=V.shape
        )

    V = V.toarray() if sp.issparse(V) else np.asarray(V)
    mask = np.abs(energies[:, None] - energies[None, :]) <= degeneracy_tol
    if vecs is None:
        return np.where(mask, V, 0.0)
    vt = vecs.conj().T @ V @ vecs
    return vecs @ np.where(mask, vt, 0.0) @ vecs.conj().T


VbarDerivatives = namedtuple("VbarDerivatives", "value d_jc d_je d2_ce")


def classical_vbar(j_c, j_e):
    """Classical time-averaged coupling ``4 j_c j_e`` with its derivatives."""
    if j_c < 0 or j_e < 0:
        raise ValueError("actions must be non-negative")
    return VbarDerivatives(4.0 * j_c * j_e, 4.0 * j_e, 4.0 * j_c, 4.0)


def classical_coupling(j_c, j_e, theta_c=0.0, theta_e=0.0):
    """Instantaneous classical coupling and its gradient in ``j_e``.

    With ``alpha = sqrt(j/hbar) exp(i theta)`` the symbol of
    ``hbar (a^+ + a)^2`` is ``4 j cos^2 theta``, so
    ``v = 16 j_c j_e cos^2(theta_c) cos^2(theta_e)``.
    Returns ``(v, dv/dj_e)``.
    """
    ang = 16.0 * math.cos(theta_c) ** 2 * math.cos(theta_e) ** 2
    return ang * j_c * j_e, ang * j_c


def packet_states(cat, bc, be, tail_tol=1e-10):
    """Coherent states ``(psi_c1, psi_c2, psi_e)`` of the three packets."""
    return (
        coherent_state(bc, cat.central_1.alpha(bc.hbar), tail_tol),
        coherent_state(bc, cat.central_2.alpha(bc.hbar), tail_tol),
        coherent_state(be, cat.environment.alpha(be.hbar), tail_tol),
    )


def cat_state(psi_c1, psi_c2, psi_e):
    """``(|c1> + |c2>) (x) |e>`` normalised by ``1/sqrt(2 + 2 Re<c1|c2>)``."""
    norm = math.sqrt(2.0 + 2.0 * np.vdot(psi_c1, psi_c2).real)
    return np.kron((psi_c1 + psi_c2) / norm, psi_e)
