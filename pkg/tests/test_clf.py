import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import orbitclf as oc

SQRT3 = np.sqrt(3.0)


def test_evaluate_at_zero(cert01_e1, dyn01):
    ev = oc.evaluate_clf(cert01_e1, dyn01, np.zeros(2))
    assert ev.V == 0.0 and ev.LF_V == 0.0
    assert np.array_equal(ev.LG_V, [0.0])


def test_evaluate_hand_values(cert01_e1, dyn01):
    ev = oc.evaluate_clf(cert01_e1, dyn01, np.array([1.0, 0.0]))
    assert np.isclose(ev.V, SQRT3, atol=1e-12)
    assert np.isclose(ev.LF_V, 0.0, atol=1e-12)
    assert np.allclose(ev.LG_V, [2.0], atol=1e-12)


def test_evaluate_quadratic_scaling(cert01_e01, dyn01):
    rng = np.random.default_rng(0)
    for _ in range(20):
        eta = rng.normal(size=2)
        v1 = oc.evaluate_clf(cert01_e01, dyn01, eta).V
        v2 = oc.evaluate_clf(cert01_e01, dyn01, 2.0 * eta).V
        assert np.isclose(v2, 4.0 * v1, rtol=1e-12)


def test_evaluate_dimension_mismatch(cert01_e1, dyn01):
    with pytest.raises(ValueError):
        oc.evaluate_clf(cert01_e1, dyn01, np.zeros(3))


def test_min_norm_at_zero(cert01_e1, dyn01):
    assert np.array_equal(oc.min_norm_mu(cert01_e1, dyn01, np.zeros(2)), [0.0])


def test_min_norm_hand_value(cert01_e1, dyn01):
    eta = np.array([1.0, 0.0])
    gamma = cert01_e1.gamma
    mu = oc.min_norm_mu(cert01_e1, dyn01, eta)
    # psi0 = gamma*sqrt(3), psi1 = (2): mu = -psi0/2
    assert np.isclose(mu[0], -gamma * SQRT3 / 2.0, atol=1e-12)
    assert np.isclose(mu[0], -0.31698729810778065, atol=1e-10)


def test_min_norm_substitution_oracle(cert01_e01, dyn01):
    # direct substitution: the returned mu satisfies the set inequality
    rng = np.random.default_rng(1)
    for _ in range(1000):
        eta = rng.normal(size=2)
        mu = oc.min_norm_mu(cert01_e01, dyn01, eta)
        ev = oc.evaluate_clf(cert01_e01, dyn01, eta)
        slack = ev.LF_V + float(ev.LG_V @ mu) + cert01_e01.rate * ev.V
        assert slack <= 1e-12
    # at extreme scales the tolerance follows the term magnitudes
    for scale in (1e-3, 1e4):
        for _ in range(100):
            eta = scale * rng.normal(size=2)
            mu = oc.min_norm_mu(cert01_e01, dyn01, eta)
            ev = oc.evaluate_clf(cert01_e01, dyn01, eta)
            slack = ev.LF_V + float(ev.LG_V @ mu) + cert01_e01.rate * ev.V
            assert slack <= 1e-12 * max(1.0, cert01_e01.rate * ev.V)


def test_min_norm_feasibility_on_kernel(cert01_e01, dyn01):
    # on ker(G'P_eps), psi0 = -(1/eps) eta'(Q_eps - gamma P_eps) eta <= 0
    cert = cert01_e01
    w = (cert.P_eps @ dyn01.G).reshape(-1)
    kernel = np.array([-w[1], w[0]])
    kernel /= np.linalg.norm(kernel)
    rng = np.random.default_rng(2)
    for _ in range(10_000):
        eta = rng.normal() * kernel
        ev = oc.evaluate_clf(cert, dyn01, eta)
        psi0 = ev.LF_V + cert.rate * ev.V
        assert psi0 <= 1e-10 * max(1.0, ev.V)
        assert np.allclose(ev.LG_V, 0.0, atol=1e-10 * max(1.0, np.linalg.norm(eta)))


@settings(max_examples=80, derandomize=True)
@given(st.floats(1e-3, 1e3), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_min_norm_positive_homogeneity(lam, e1, e2):
    dims = oc.OutputDims(0, 1)
    dyn = oc.build_fg(dims)
    cert = oc.certificate(dyn, np.eye(2), 0.5)
    eta = np.array([e1, e2])
    mu1 = oc.min_norm_mu(cert, dyn, eta)
    mu2 = oc.min_norm_mu(cert, dyn, lam * eta)
    assert np.allclose(mu2, lam * mu1, rtol=1e-9, atol=1e-12)


def test_min_norm_lipschitz_off_switching_surface(cert01_e01, dyn01):
    # finite-difference slope bound on the unit sphere, excluding a 1e-6
    # neighborhood of psi0 = 0; envelope frozen at ~10x the observed max
    cert = cert01_e01
    rng = np.random.default_rng(3)
    h = 1e-7
    worst = 0.0
    for _ in range(2000):
        th = rng.uniform(0.0, 2.0 * np.pi)
        eta = np.array([np.cos(th), np.sin(th)])
        ev = oc.evaluate_clf(cert, dyn01, eta)
        psi0 = ev.LF_V + cert.rate * ev.V
        if abs(psi0) < 1e-6:
            continue
        step = rng.normal(size=2)
        step = h * step / np.linalg.norm(step)
        ev2 = oc.evaluate_clf(cert, dyn01, eta + step)
        psi0b = ev2.LF_V + cert.rate * ev2.V
        if abs(psi0b) < 1e-6 or np.sign(psi0b) != np.sign(psi0):
            continue
        d = np.linalg.norm(oc.min_norm_mu(cert, dyn01, eta + step)
                           - oc.min_norm_mu(cert, dyn01, eta))
        worst = max(worst, d / h)
    assert worst < 500.0


def test_membership_of_min_norm(cert01_e01, dyn01):
    rng = np.random.default_rng(4)
    for _ in range(100):
        eta = rng.normal(size=2)
        mu = oc.min_norm_mu(cert01_e01, dyn01, eta)
        member, slack = oc.membership(cert01_e01, dyn01, eta, mu)
        assert member
        assert slack <= 1e-12


def test_membership_negative_case(cert01_e1, dyn01):
    eta = np.array([1.0, 0.0])  # psi0 > 0 here
    ev = oc.evaluate_clf(cert01_e1, dyn01, eta)
    member, slack = oc.membership(cert01_e1, dyn01, eta, ev.LG_V.copy())
    assert not member and slack > 0.0


def test_membership_at_zero(cert01_e1, dyn01):
    member, slack = oc.membership(cert01_e1, dyn01, np.zeros(2), np.array([5.0]))
    assert member and slack == 0.0


def test_membership_es_mode(cert01_e1, dyn01):
    eta = np.array([0.3, -0.2])
    mu = oc.min_norm_mu(cert01_e1, dyn01, eta)
    member, _ = oc.membership(cert01_e1, dyn01, eta, mu, mode="es", c=cert01_e1.gamma)
    assert member  # es rate gamma <= res rate gamma/eps at eps = 1


def test_u_s_zero(cert01_e1, dyn01):
    assert np.array_equal(oc.u_s_damping(cert01_e1, dyn01, np.zeros(2), 0.5), [0.0])


def test_u_s_hand_value(cert01_e1, dyn01):
    us = oc.u_s_damping(cert01_e1, dyn01, np.array([1.0, 0.0]), 0.5)
    assert np.allclose(us, [-1.0], atol=1e-12)


def test_u_s_inverse_in_eps_bar(cert01_e01, dyn01):
    eta = np.array([0.4, -0.7])
    a = oc.u_s_damping(cert01_e01, dyn01, eta, 0.2)
    b = oc.u_s_damping(cert01_e01, dyn01, eta, 0.4)
    assert np.allclose(a, 2.0 * b, rtol=1e-12)
    with pytest.raises(ValueError):
        oc.u_s_damping(cert01_e01, dyn01, eta, 0.0)


def test_u_s_vdot_contribution(cert01_e01, dyn01):
    # L_G V * u_s = -(1/eps_bar) ||G'P_eps eta||^2 by construction
    rng = np.random.default_rng(5)
    for _ in range(50):
        eta = rng.normal(size=2)
        eps_bar = rng.uniform(0.05, 1.0)
        ev = oc.evaluate_clf(cert01_e01, dyn01, eta)
        us = oc.u_s_damping(cert01_e01, dyn01, eta, eps_bar)
        w = dyn01.G.T @ (cert01_e01.P_eps @ eta)
        assert np.isclose(float(ev.LG_V @ us), -float(w @ w) / eps_bar, rtol=1e-12)


# --- time-based controller surface ------------------------------------------

def test_time_based_same_slack_at_zero_phase_error(cert01_e01, dyn01):
    # eta_t = eta gives the identical membership slack
    rng = np.random.default_rng(6)
    for _ in range(20):
        eta = rng.normal(size=2)
        mu = oc.min_norm_mu(cert01_e01, dyn01, eta)
        _, s_state = oc.membership(cert01_e01, dyn01, eta, mu)
        _, s_time = oc.membership(cert01_e01, dyn01, eta.copy(), mu)
        assert s_state == s_time


def test_time_based_member_along_mech_trajectory(mech_plant, mech_cert):
    loop = oc.MechClosedLoop(plant=mech_plant, cert=mech_cert, signal=None)
    x0 = np.array([0.05, mech_plant.y2d(0.05) + 0.04, 1.0, -0.05])
    rec = oc.integrate(loop, x0, T=0.7, dt=1e-3)
    dyn = oc.build_fg(mech_plant.dims)
    for i in range(0, len(rec), 25):
        mu = rec.mu[i]
        member, slack = oc.membership(mech_cert, dyn, rec.eta[i], mu)
        assert member, f"slack {slack} at sample {i}"


def test_time_based_v_decrease_along_trajectory(mech_plant, mech_cert):
    # dV/dt <= -(gamma/eps) V within integrator tolerance along the loop
    loop = oc.MechClosedLoop(plant=mech_plant, cert=mech_cert, signal=None)
    x0 = np.array([0.05, mech_plant.y2d(0.05) + 0.04, 1.0, -0.05])
    rec = oc.integrate(loop, x0, T=0.7, dt=1e-3)
    bound = rec.v_eps[0] * np.exp(-mech_cert.rate * rec.t)
    assert np.all(rec.v_eps <= bound * (1.0 + 1e-3) + 1e-15)
