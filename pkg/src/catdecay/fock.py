"""Truncated Fock-space building blocks.

Operators are plain numpy arrays. Composite objects use the central-major
Kronecker convention: the composite index of ``|n_c, n_e>`` is
``n_c * N_e + n_e``, i.e. ``np.kron(central, environment)``.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from .errors import LeakageWarning, TruncationError

__all__ = [
    "ModeBasis",
    "auto_cutoff",
    "ladder_down",
    "ladder_up",
    "number_op",
    "quadrature",
    "quadrature_squared",
    "coherent_state",
    "coherent_overlap",
    "tensor_op",
    "tensor_state",
    "is_hermitian",
    "top_level_leakage",
    "check_leakage",
    "warn_leakage",
]

DEFAULT_TAIL_TOL = 1e-10
LEAKAGE_THRESHOLD = 1e-8


@dataclass(frozen=True)
class ModeBasis:
    """Single bosonic mode truncated to ``levels`` Fock states |0>..|levels-1>."""

    levels: int
    hbar: float
    label: str = ""

    def __post_init__(self):
        if int(self.levels) != self.levels or self.levels < 2:
            raise ValueError(f"levels must be an integer >= 2, got {self.levels!r}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")

    @property
    def actions(self):
        """Action values ``hbar * n`` of the Fock levels."""
        return self.hbar * np.arange(self.levels)

    def alpha_for_action(self, j_star, theta_star=0.0):
        """Coherent amplitude centred at action ``j_star`` and angle ``theta_star``."""
        return math.sqrt(j_star / self.hbar) * np.exp(1j * theta_star)


def auto_cutoff(alpha_max):
    """Fock cutoff ``ceil(|a|^2 + 8|a| + 10)`` for the largest packet amplitude."""
    r = abs(alpha_max)
    return int(math.ceil(r * r + 8.0 * r + 10.0))


def ladder_down(basis):
    """Annihilation operator, ``a|n> = sqrt(n)|n-1>``."""
    n = basis.levels
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1)


def ladder_up(basis):
    return ladder_down(basis).T.copy()


def number_op(basis):
    return np.diag(np.arange(basis.levels, dtype=float))


def quadrature(basis):
    """Hermitian quadrature ``a^+ + a``."""
    a = ladder_down(basis)
    return a + a.T


def quadrature_squared(basis):
    """``(a^+ + a)^2`` with the matrix elements of the untruncated operator.

    Squaring the truncated quadrature would corrupt the top diagonal entry;
    here ``<n|X^2|n> = 2n + 1`` holds on every level.
    """
    n = np.arange(basis.levels, dtype=float)
    off = np.sqrt(n[2:] * (n[2:] - 1.0))
    return np.diag(2.0 * n + 1.0) + np.diag(off, 2) + np.diag(off, -2)


def coherent_state(basis, alpha, tail_tol=DEFAULT_TAIL_TOL):
    """Truncated coherent state ``|alpha>`` on ``basis``.

    Raises
    ------
    TruncationError
        If the Poisson weight beyond the cutoff exceeds ``tail_tol``.
    """
    alpha = complex(alpha)
    mean_n = abs(alpha) ** 2
    n = np.arange(basis.levels)
    tail = float(poisson.sf(basis.levels - 1, mean_n)) if mean_n > 0 else 0.0
    if tail > tail_tol:
        raise TruncationError(
            f"coherent state |alpha|^2={mean_n:.4g} leaves tail {tail:.3e} beyond "
            f"cutoff {basis.levels} of mode {basis.label!r} (tol {tail_tol:.1e})",
            mode=basis.label,
            measured=tail,
        )
    if mean_n == 0:
        psi = np.zeros(basis.levels, dtype=complex)
        psi[0] = 1.0
        return psi
    log_mod = -0.5 * mean_n + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    psi = np.exp(log_mod) * np.exp(1j * n * np.angle(alpha))
    return psi / np.linalg.norm(psi)


def coherent_overlap(alpha, beta):
    """Analytic ``|<alpha|beta>|^2 = exp(-|alpha - beta|^2)``."""
    return math.exp(-abs(complex(alpha) - complex(beta)) ** 2)


def tensor_op(a, b):
    """``A (x) B`` with the first (central) factor as the major index."""
    return np.kron(a, b)


def tensor_state(u, v):
    return np.kron(u, v)


def is_hermitian(a, rtol=1e-12):
    """Entrywise check ``max|A - A^+| <= rtol * max|A|``."""
    a = np.asarray(a)
    scale = np.max(np.abs(a)) if a.size else 0.0
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= rtol * max(scale, 1e-300))


def top_level_leakage(psi, dims, n_top=3):
    """Population in the top ``n_top`` Fock levels of each mode.

    ``psi`` may be one composite state or a stack of states (last axis is
    the composite index); the maximum over the stack is returned.
    """
    nc, ne = dims
    amps = np.abs(np.asarray(psi).reshape(-1, nc, ne)) ** 2
    pop_c = amps[:, nc - n_top :, :].sum(axis=(1, 2))
    pop_e = amps[:, :, ne - n_top :].sum(axis=(1, 2))
    return float(pop_c.max()), float(pop_e.max())


def warn_leakage(leak_c, leak_e, threshold=LEAKAGE_THRESHOLD, n_top=3):
    """Emit a :class:`LeakageWarning` for each mode at or above ``threshold``."""
    for label, leak in (("c", leak_c), ("e", leak_e)):
        if leak >= threshold:
            warnings.warn(
                f"population {leak:.3e} in top {n_top} levels of mode {label!r}; "
                "raise the cutoff",
                LeakageWarning,
                stacklevel=3,
            )


def check_leakage(psi, dims, threshold=LEAKAGE_THRESHOLD, n_top=3):
    """Warn with the measured value when top-level leakage reaches ``threshold``.

    Returns the larger of the two mode leakages.
    """
    leak_c, leak_e = top_level_leakage(psi, dims, n_top)
    warn_leakage(leak_c, leak_e, threshold, n_top)
    return max(leak_c, leak_e)
