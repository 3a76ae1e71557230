import math

import numpy as np
import pytest

from catdecay.model import (CatSpec, ModelParams, PacketSpec, build_coupling, build_h0, make_bases,
                            packet_states, time_average_coupling)
from catdecay.semiclassics import (TheorySpec, ce_classical, ce_quantum, fe_theory,
                                   full_purity_theory, individual_purity_theory, model_theory_spec,
                                   short_time_ce, tau_dec, tau_p, u_factor)

CE_MODEL = 16 * 0.1 * 0.19**2


@pytest.fixture(scope="module")
def spec():
    return model_theory_spec(ModelParams(), CatSpec())


def test_classical_rate_constant(spec):
    assert ce_classical(spec) == pytest.approx(CE_MODEL, rel=1e-12)
    assert ce_classical(spec) == pytest.approx(0.05776, rel=1e-12)


def test_decoherence_time(spec):
    tau = tau_dec(ce_classical(spec), 0.01, 0.01)
    assert tau == pytest.approx(41.609, abs=1e-3)
    for hbar in (1 / 25, 1 / 50, 1 / 400):
        assert tau_dec(CE_MODEL, hbar, 0.01) == pytest.approx(416.09 * math.sqrt(hbar), rel=1e-4)
    assert fe_theory(tau, tau) == pytest.approx(math.exp(-1))
    assert tau_dec(0.0, 0.01, 0.01) == math.inf
    np.testing.assert_array_equal(fe_theory([0.0, 10.0], math.inf), [1.0, 1.0])


def test_relaxation_factors(spec):
    assert u_factor(spec, 1) == pytest.approx(64 * 0.2 * 0.1)
    assert u_factor(spec, 2) == pytest.approx(64 * 0.01 * 0.1)
    assert tau_p(spec, 1) == pytest.approx(88.388, abs=1e-3)
    assert tau_p(spec, 2) == pytest.approx(395.285, abs=1e-3)
    for k in (1, 2):
        assert individual_purity_theory(tau_p(spec, k), spec, k) == pytest.approx(1 / math.sqrt(2))


def test_relaxation_independent_of_hbar():
    times = np.linspace(0, 500, 11)
    a = model_theory_spec(ModelParams(hbar=0.01), CatSpec())
    b = model_theory_spec(ModelParams(hbar=0.04), CatSpec())
    np.testing.assert_allclose(individual_purity_theory(times, a, 1), individual_purity_theory(times, b, 1))


def test_full_purity_limits(spec):
    assert full_purity_theory(0.0, spec) == pytest.approx(1.0)
    late = full_purity_theory(1e6, spec)
    assert late == pytest.approx(0.0, abs=1e-3)
    assert tau_dec(ce_classical(spec), spec.hbar, spec.delta) < min(tau_p(spec, 1), tau_p(spec, 2))


def test_full_purity_tau_override(spec):
    t = np.array([0.0, 30.0, 60.0])
    expected = 0.25 * (individual_purity_theory(t, spec, 1) + individual_purity_theory(t, spec, 2)
                       + 2 * np.exp(-(t / 50.0) ** 2))
    np.testing.assert_allclose(full_purity_theory(t, spec, tau=50.0), expected)


def test_matrix_form_reduces_to_scalar(spec):
    mat = TheorySpec(spec.packets, spec.delta, spec.hbar,
                     vbar_grad_e=lambda jc: np.array([4 * jc]),
                     vbar_hessian_ce=lambda jc, je: np.array([[4.0]]),
                     lambda_c1=np.array([[2.5]]), lambda_c2=np.array([[50.0]]),
                     lambda_e=np.array([[5.0]]))
    t = np.linspace(0, 400, 9)
    assert ce_classical(mat) == pytest.approx(ce_classical(spec))
    np.testing.assert_allclose(individual_purity_theory(t, mat, 2), individual_purity_theory(t, spec, 2))


def test_two_dimensional_determinant():
    # two uncoupled copies multiply the single-copy purity
    one = model_theory_spec(ModelParams(), CatSpec())
    two = TheorySpec(one.packets, one.delta, one.hbar,
                     vbar_grad_e=lambda jc: np.array([4 * jc, 4 * jc]),
                     vbar_hessian_ce=lambda jc, je: 4.0 * np.eye(2),
                     lambda_c1=2.5 * np.eye(2), lambda_c2=50.0 * np.eye(2), lambda_e=5.0 * np.eye(2))
    t = np.linspace(0, 300, 7)
    np.testing.assert_allclose(individual_purity_theory(t, two, 1), individual_purity_theory(t, one, 1) ** 2)
    assert ce_classical(two) == pytest.approx(2 * ce_classical(one))
    with pytest.raises(ValueError):
        tau_p(two, 1)


def test_spec_validation(spec):
    with pytest.raises(ValueError):
        TheorySpec(spec.packets, -1.0, 0.01, spec.vbar_grad_e, spec.vbar_hessian_ce)
    with pytest.raises(ValueError):
        TheorySpec(spec.packets, 0.01, 0.01, spec.vbar_grad_e, spec.vbar_hessian_ce,
                   lambda_e=np.array([[1.0, 0.0], [0.0, -1.0]]))
    with pytest.raises(ValueError):
        model_theory_spec(ModelParams(), CatSpec(), regime="bogus")


def test_vacuum_packet_has_no_relaxation():
    s = model_theory_spec(ModelParams(), CatSpec(PacketSpec(0.2), PacketSpec(0.0), PacketSpec(0.1)))
    assert tau_p(s, 2) == math.inf
    assert ce_classical(s) == pytest.approx(16 * 0.1 * 0.2**2)


def test_instantaneous_regime_quadruples_rate():
    avg = model_theory_spec(ModelParams(), CatSpec())
    inst = model_theory_spec(ModelParams(), CatSpec(), regime="instantaneous")
    assert ce_classical(inst) == pytest.approx(16 * ce_classical(avg))
    assert tau_p(inst, 1) == pytest.approx(tau_p(avg, 1))


@pytest.fixture(scope="module")
def coarse_operators():
    hbar = 1 / 25
    p, cat = ModelParams(hbar=hbar), CatSpec()
    bc, be = make_bases(p, cat)
    v = build_coupling(p, bc, be, sparse=True)
    vbar = time_average_coupling(v, build_h0(p, bc, be, sparse=True))
    return hbar, v, vbar, packet_states(cat, bc, be)


def test_quantum_rate_closed_form(coarse_operators):
    # for Vbar = hbar^2 (2n_c+1)(2n_e+1) on coherent packets
    hbar, _, vbar, (c1, c2, e) = coarse_operators
    expected = CE_MODEL + 16 * hbar * 0.1 * (0.2 + 0.01)
    assert ce_quantum(vbar, c1, c2, e, hbar) == pytest.approx(expected, rel=1e-9)


def test_quantum_rate_near_classical(coarse_operators):
    hbar, _, vbar, (c1, c2, e) = coarse_operators
    assert abs(ce_quantum(vbar, c1, c2, e, hbar) / CE_MODEL - 1) < 0.25


def test_identical_packets_leave_branch_spread(coarse_operators):
    # only the branch-local variance term survives: 2 Var(A) Var(B) / hbar
    hbar, _, vbar, (c1, _, e) = coarse_operators
    var_a, var_b = 4 * hbar * 0.2, 4 * hbar * 0.1
    assert ce_quantum(vbar, c1, c1, e, hbar) == pytest.approx(2 * var_a * var_b / hbar, rel=1e-9)


def test_identity_coupling_does_not_decohere(coarse_operators):
    hbar, _, vbar, (c1, c2, e) = coarse_operators
    eye = np.eye(vbar.shape[0])
    assert abs(ce_quantum(eye, c1, c2, e, hbar)) < 1e-9


def test_short_time_rate(coarse_operators):
    hbar, v, vbar, (c1, c2, e) = coarse_operators
    ratio = math.sqrt(ce_quantum(vbar, c1, c2, e, hbar) / short_time_ce(v, c1, c2, e, hbar))
    assert ratio == pytest.approx(0.25, rel=0.1)
