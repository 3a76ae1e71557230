"""Closed-form semiclassical purity decay for cat states.

Purity of the central subsystem is modelled as

    I(t) = (I_1(t) + I_2(t) + 2 F_e(t)) / 4

where ``F_e(t) = exp(-t^2 / tau_dec^2)`` describes decoherence of the two
branches and ``I_{1,2}(t) = det(1 + (delta t)^2 u_{1,2})^(-1/2)`` their
slow relaxation. Action-space quantities (gradients, squeezing matrices)
may be scalars for one degree of freedom or arrays for several.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import CatSpec, classical_coupling, classical_vbar

__all__ = [
    "TheorySpec",
    "model_theory_spec",
    "ce_classical",
    "ce_quantum",
    "short_time_ce",
    "tau_dec",
    "fe_theory",
    "u_factor",
    "tau_p",
    "individual_purity_theory",
    "full_purity_theory",
]


@dataclass(frozen=True)
class TheorySpec:
    """Classical packet data plus coupling derivatives.

    ``vbar_grad_e(j_c)`` returns the environment gradient of the averaged
    coupling at ``(j_c, j_e*)``; ``vbar_hessian_ce(j_c, j_e)`` returns the
    mixed second derivative (``d_c x d_e``). The squeezing fields default to
    the packets' own values.
    """

    packets: CatSpec
    delta: float
    hbar: float
    vbar_grad_e: Callable
    vbar_hessian_ce: Callable
    lambda_c1: object = None
    lambda_c2: object = None
    lambda_e: object = None

    def __post_init__(self):
        if self.delta < 0 or not self.hbar > 0:
            raise ValueError("need delta >= 0 and hbar > 0")
        for name, packet in (("lambda_c1", self.packets.central_1),
                             ("lambda_c2", self.packets.central_2),
                             ("lambda_e", self.packets.environment)):
            if getattr(self, name) is None:
                object.__setattr__(self, name, packet.squeezing)
            lam = getattr(self, name)
            ok = lam > 0 if np.ndim(lam) == 0 else np.all(np.linalg.eigvalsh(lam) > 0)
            if not ok:
                raise ValueError(f"{name} must be positive definite")


def model_theory_spec(params, cat=None, regime="averaged"):
    """:class:`TheorySpec` for the coupled anharmonic oscillators.

    ``regime="averaged"`` uses the time-averaged coupling ``4 j_c j_e``;
    ``"instantaneous"`` takes the decoherence gradient from the bare
    coupling at the packets' initial angles, valid before the coupling has
    time to average out. Relaxation always uses the averaged coupling.
    """
    cat = CatSpec() if cat is None else cat
    je = cat.environment.j_star
    if regime == "averaged":
        def grad_e(j_c):
            return classical_vbar(j_c, je).d_je
    elif regime == "instantaneous":
        th_e = cat.environment.theta_star
        angles = {cat.central_1.j_star: cat.central_1.theta_star,
                  cat.central_2.j_star: cat.central_2.theta_star}

        def grad_e(j_c):
            return classical_coupling(j_c, je, angles.get(j_c, 0.0), th_e)[1]
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return TheorySpec(
        packets=cat,
        delta=params.coupling_strength,
        hbar=params.hbar,
        vbar_grad_e=grad_e,
        vbar_hessian_ce=lambda j_c, j_e: classical_vbar(j_c, j_e).d2_ce,
    )


def _quad(vec, mat_inv):
    vec = np.atleast_1d(np.asarray(vec, dtype=float))
    return float(vec @ np.atleast_2d(mat_inv) @ vec)


def ce_classical(spec):
    """Decoherence rate constant from the gradient difference between branches.

    ``C_e = (g_1 - g_2) . Lambda_e^{-1} (g_1 - g_2) / 2`` with
    ``g_k = vbar_grad_e(j_ck*)``.
    """
    diff = np.atleast_1d(spec.vbar_grad_e(spec.packets.central_1.j_star)) - np.atleast_1d(
        spec.vbar_grad_e(spec.packets.central_2.j_star)
    )
    lam_inv = np.linalg.inv(np.atleast_2d(spec.lambda_e))
    return 0.5 * _quad(diff, lam_inv)


def _partial_env(v4, psi_e):
    # <e| V |e> as an operator on the central mode
    return np.einsum("j,ijkl,l->ik", psi_e.conj(), v4, psi_e)


def _partial_central(v4, psi_c):
    # <c| V |c> as an operator on the environment
    return np.einsum("i,ijkl,k->jl", psi_c.conj(), v4, psi_c)


def ce_quantum(v_op, psi_c1, psi_c2, psi_e, hbar):
    """Linear-response ``C_e`` from exact expectation values.

    Evaluates

        ( <[V - <V>_e]^2>_1 + <[V - <V>_e]^2>_2 + 2 <V>_1 <V>_2
          - <<V>_c1 <V>_c2>_e - <<V>_c2 <V>_c1>_e ) / hbar

    where ``<.>_k`` is taken in ``|c_k> (x) |e>``, ``<V>_e`` is the partial
    expectation over the environment and ``<V>_ck`` over central packet k.
    This is the second-order (small ``delta t``) coefficient of
    ``1 - F_e``; at finite ``hbar`` it includes the branch-local spread, so
    it does not vanish for identical central packets.
    """
    nc, ne = psi_c1.size, psi_e.size
    v_op = v_op.toarray() if hasattr(v_op, "toarray") else np.asarray(v_op)
    v4 = v_op.reshape(nc, ne, nc, ne)
    v_e = np.kron(_partial_env(v4, psi_e), np.eye(ne))
    shifted = v_op - v_e
    total = 0.0
    means = []
    for psi_c in (psi_c1, psi_c2):
        psi = np.kron(psi_c, psi_e)
        w = shifted @ psi
        total += np.vdot(w, w).real
        means.append(np.vdot(psi, v_op @ psi).real)
    total += 2.0 * means[0] * means[1]
    m1, m2 = _partial_central(v4, psi_c1), _partial_central(v4, psi_c2)
    total -= np.vdot(psi_e, (m1 @ m2 + m2 @ m1) @ psi_e).real
    return float(total / hbar)


def short_time_ce(v_op, psi_c1, psi_c2, psi_e, hbar):
    """``C_e`` with the bare coupling in place of its time average."""
    return ce_quantum(v_op, psi_c1, psi_c2, psi_e, hbar)


def tau_dec(ce, hbar, delta):
    """Gaussian decoherence time ``sqrt(hbar / C_e) / delta``; ``inf`` if there is no decay."""
    if ce <= 0 or delta <= 0:
        return math.inf
    return math.sqrt(hbar / ce) / delta


def fe_theory(t, tau):
    t = np.asarray(t, dtype=float)
    if math.isinf(tau):
        return np.ones_like(t)
    return np.exp(-((t / tau) ** 2))


def u_factor(spec, which):
    """``u = Lambda_c^{-1} v''_ce Lambda_e^{-1} v''_ec`` for central packet 1 or 2."""
    packet, lam_c = (
        (spec.packets.central_1, spec.lambda_c1) if which == 1 else (spec.packets.central_2, spec.lambda_c2)
    )
    hess = np.atleast_2d(spec.vbar_hessian_ce(packet.j_star, spec.packets.environment.j_star))
    u = np.linalg.inv(np.atleast_2d(lam_c)) @ hess @ np.linalg.inv(np.atleast_2d(spec.lambda_e)) @ hess.T
    return float(u[0, 0]) if u.shape == (1, 1) else u


def tau_p(spec, which):
    """Relaxation time ``1 / (delta sqrt(u))`` for one degree of freedom."""
    u = u_factor(spec, which)
    if np.ndim(u):
        raise ValueError("tau_p is defined for a scalar u only")
    if u <= 0 or spec.delta <= 0:
        return math.inf
    return 1.0 / (spec.delta * math.sqrt(u))


def individual_purity_theory(t, spec, which):
    """Purity of one branch, ``det(1 + (delta t)^2 u)^(-1/2)``."""
    u = np.atleast_2d(u_factor(spec, which))
    t = np.asarray(t, dtype=float)
    if u.shape == (1, 1):
        return 1.0 / np.sqrt(1.0 + (spec.delta * t) ** 2 * u[0, 0])
    eye = np.eye(u.shape[0])
    flat = [1.0 / math.sqrt(np.linalg.det(eye + (spec.delta * s) ** 2 * u).real) for s in t.ravel()]
    return np.reshape(flat, t.shape)


def full_purity_theory(t, spec, tau=None):
    """``(I_1 + I_2 + 2 F_e) / 4``; ``tau`` overrides the classical decoherence time."""
    if tau is None:
        tau = tau_dec(ce_classical(spec), spec.hbar, spec.delta)
    return 0.25 * (
        individual_purity_theory(t, spec, 1)
        + individual_purity_theory(t, spec, 2)
        + 2.0 * fe_theory(t, tau)
    )
