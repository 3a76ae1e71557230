"""Reduced states, purities, overlaps and single-mode Wigner functions."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .fock import ModeBasis, ladder_down

__all__ = [
    "partial_trace",
    "purity",
    "cross_env_purity",
    "mode_expectation",
    "WignerGrid",
    "wigner",
    "default_extent",
]


def partial_trace(state, keep, dims):
    """Reduced density matrix of subsystem ``keep`` (``"c"`` or ``"e"``).

    ``state`` is either a composite state vector or a density matrix in the
    central-major ordering with subsystem sizes ``dims = (N_c, N_e)``.
    """
    nc, ne = dims
    state = np.asarray(state)
    if keep not in ("c", "e"):
        raise ValueError(f"keep must be 'c' or 'e', got {keep!r}")
    if state.ndim == 1:
        if state.size != nc * ne:
            raise ValueError(f"state of size {state.size} does not match dims {dims}")
        m = state.reshape(nc, ne)
        return m @ m.conj().T if keep == "c" else m.T @ m.conj()
    if state.shape != (nc * ne, nc * ne):
        raise ValueError(f"density matrix of shape {state.shape} does not match dims {dims}")
    r = state.reshape(nc, ne, nc, ne)
    return np.einsum("ikjk->ij", r) if keep == "c" else np.einsum("kikj->ij", r)


def purity(rho):
    """``Tr rho^2``."""
    rho = np.asarray(rho)
    return float(np.real(np.sum(rho * rho.T)))


def cross_env_purity(rho_e1, rho_e2):
    """Environment overlap ``F_e = Tr(rho_e1 rho_e2)``."""
    rho_e1, rho_e2 = np.asarray(rho_e1), np.asarray(rho_e2)
    if rho_e1.shape != rho_e2.shape:
        raise ValueError(f"shape mismatch {rho_e1.shape} vs {rho_e2.shape}")
    return float(np.real(np.sum(rho_e1 * rho_e2.T)))


def mode_expectation(rho, op):
    """``Tr(rho op)``; a vector ``rho`` is treated as a pure state."""
    rho, op = np.asarray(rho), np.asarray(op)
    if rho.ndim == 1:
        return complex(np.vdot(rho, op @ rho))
    if rho.shape != op.shape:
        raise ValueError(f"shape mismatch {rho.shape} vs {op.shape}")
    return complex(np.sum(rho * op.T))


@dataclass(frozen=True)
class WignerGrid:
    """Wigner function sampled on plot coordinates.

    ``x = sqrt(2 hbar) Re(alpha)`` and ``y = sqrt(2 hbar) Im(alpha)``;
    ``values[i, k]`` is the value at ``(x_axis[k], y_axis[i])``. Values are
    normalised so that ``int W d^2 alpha = 1``.
    """

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    hbar: float

    @property
    def cell_area(self):
        """Area element in the alpha plane."""
        dx = (self.x_axis[-1] - self.x_axis[0]) / (self.x_axis.size - 1)
        dy = (self.y_axis[-1] - self.y_axis[0]) / (self.y_axis.size - 1)
        return dx * dy / (2.0 * self.hbar)

    def integral(self):
        return float(self.values.sum() * self.cell_area)

    def purity_quadrature(self):
        """``pi * int W^2 d^2 alpha``, equal to ``Tr rho^2``."""
        return float(math.pi * np.sum(self.values**2) * self.cell_area)

    def value_at(self, x, y):
        """Value at the grid point nearest to ``(x, y)``."""
        k = int(np.argmin(np.abs(self.x_axis - x)))
        i = int(np.argmin(np.abs(self.y_axis - y)))
        return float(self.values[i, k])

    def region_weight(self, x, y, radius):
        """Quasi-probability inside the disk of ``radius`` around ``(x, y)``."""
        xx, yy = np.meshgrid(self.x_axis, self.y_axis)
        inside = (xx - x) ** 2 + (yy - y) ** 2 <= radius**2
        return float(self.values[inside].sum() * self.cell_area)


def default_extent(rho, hbar):
    """Half-width of a plot window covering the occupied Fock levels."""
    n = np.arange(rho.shape[0])
    pops = np.real(np.diag(rho))
    mean = float(pops @ n)
    std = math.sqrt(max(float(pops @ n**2) - mean**2, 0.0))
    return 1.6 * math.sqrt(2.0 * hbar * max(mean + 2.0 * std, 1.0))


def _wigner_recurrence(rho, alpha):
    # Sum of rho_mn times the Wigner function of |m><n|, the latter generated
    # column by column with the Laguerre three-term recurrence.
    dim = rho.shape[0]
    w_mn = np.empty((dim,) + alpha.shape, dtype=complex)
    w_mn[0] = (2.0 / math.pi) * np.exp(-2.0 * np.abs(alpha) ** 2)
    total = np.real(rho[0, 0]) * np.real(w_mn[0])
    for n in range(1, dim):
        w_mn[n] = 2.0 * alpha * w_mn[n - 1] / math.sqrt(n)
        total += 2.0 * np.real(rho[0, n] * w_mn[n])
    ac = np.conj(alpha)
    for m in range(1, dim):
        prev = w_mn[m].copy()
        w_mn[m] = (2.0 * ac * prev - math.sqrt(m) * w_mn[m - 1]) / math.sqrt(m)
        total += np.real(rho[m, m] * w_mn[m])
        for n in range(m + 1, dim):
            nxt = (2.0 * alpha * w_mn[n - 1] - math.sqrt(m) * prev) / math.sqrt(n)
            prev = w_mn[n].copy()
            w_mn[n] = nxt
            total += 2.0 * np.real(rho[m, n] * w_mn[n])
    return total


def _wigner_displacement(rho, alpha, basis, extra_levels, leak_tol):
    # Displaced-parity sum with D(alpha) exponentiated in an enlarged basis.
    dim = rho.shape[0]
    big = ModeBasis(dim + extra_levels, basis.hbar, basis.label)
    a = ladder_down(big)
    gen = -1j * (a.T - a)                 # Hermitian; D(|alpha|) = exp(i |alpha| gen)
    w, u = np.linalg.eigh(gen)
    n = np.arange(big.levels)
    parity = (-1.0) ** n
    out = np.empty(alpha.shape)
    for idx, al in np.ndenumerate(alpha):
        rot = np.exp(1j * np.angle(al) * n)
        d = (rot[:, None] * u) @ (np.exp(1j * abs(al) * w)[:, None] * (u.conj().T * rot.conj()[None, :]))
        cols = d[:dim, :]                 # rows of D restricted to the support of rho
        leak = float(np.max(np.sum(np.abs(d[-3:, :dim]) ** 2, axis=0)))
        if leak > leak_tol:
            raise TruncationError(
                f"displaced states leak {leak:.2e} past {big.levels} levels at alpha={al:.3g}",
                mode=basis.label,
                measured=leak,
            )
        displaced = cols.conj().T @ rho @ cols          # D^+ rho D
        out[idx] = (2.0 / math.pi) * float(np.real(np.sum(parity * np.diag(displaced))))
    return out


def wigner(rho, basis, x_axis=None, y_axis=None, n_points=201, extent=None,
           method="recurrence", extra_levels=40, leak_tol=1e-6):
    """Wigner function ``W(alpha) = (2/pi) sum_n (-1)^n <n|D^+ rho D|n>``.

    Parameters
    ----------
    rho : ndarray
        Single-mode density matrix on ``basis``.
    x_axis, y_axis : ndarray, optional
        Plot coordinates; default is an ``n_points`` square grid of
        half-width ``extent`` (see :func:`default_extent`).
    method : {"recurrence", "displacement"}
        ``"recurrence"`` evaluates the displaced-parity matrix elements
        analytically and is exact. ``"displacement"`` exponentiates the
        displacement generator in a basis enlarged by ``extra_levels`` and
        raises :class:`TruncationError` when displaced states leak more
        than ``leak_tol`` into its top levels.
    """
    rho = np.asarray(rho)
    if rho.shape != (basis.levels, basis.levels):
        raise ValueError(f"rho of shape {rho.shape} does not live on {basis.levels} levels")
    if x_axis is None or y_axis is None:
        ext = default_extent(rho, basis.hbar) if extent is None else extent
        axis = np.linspace(-ext, ext, n_points)
        x_axis = axis if x_axis is None else x_axis
        y_axis = axis if y_axis is None else y_axis
    x_axis, y_axis = np.asarray(x_axis, float), np.asarray(y_axis, float)
    xx, yy = np.meshgrid(x_axis, y_axis)
    alpha = (xx + 1j * yy) / math.sqrt(2.0 * basis.hbar)
    if method == "recurrence":
        values = _wigner_recurrence(rho, alpha)
    elif method == "displacement":
        values = _wigner_displacement(rho, alpha, basis, extra_levels, leak_tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WignerGrid(x_axis, y_axis, values, basis.hbar)
