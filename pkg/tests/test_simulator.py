import numpy as np
import pytest

import orbitclf as oc
from orbitclf.simulator import to_csv_rows


def test_rk4_single_step_linear_decay():
    # hand-computed classical RK4 step for dz/dt = -z, z0 = 1, dt = 0.1:
    # k = (-1, -0.95, -0.9525, -0.90475) -> z1 = 1 - 0.0951625 exactly
    z1 = oc.rk4_step(lambda t, y: -y, 0.0, np.array([1.0]), 0.1)[0]
    assert z1 == 0.90483750
    # and the O(dt^5) local-error contract against the closed form e^{-0.1}
    assert abs(z1 - np.exp(-0.1)) <= 1e-5
    assert abs(z1 - np.exp(-0.1)) <= 1e-7  # actual truncation is ~8.2e-8


def test_orbit_invariance(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.5)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    rec = oc.integrate(loop, np.array([0.0, 0.0, 1.0, 0.0]), T=20.0, dt=1e-3)
    assert np.max(rec.dist) <= 1e-6


def test_rk4_order_by_richardson(hopf01, dyn01):
    # smooth Hopf flow vs the logistic closed form; halving dt cuts the
    # max error by ~16x
    cert = oc.certificate(dyn01, np.eye(2), 0.5)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    z0 = np.array([1.6, 0.0])
    errs = []
    for dt in (0.02, 0.01, 0.005):
        rec = oc.integrate(loop, np.concatenate([np.zeros(2), z0]), T=2.0, dt=dt)
        exact = np.array([hopf01.exact_zero_solution(z0, t) for t in rec.t])
        errs.append(np.max(np.linalg.norm(rec.z - exact, axis=1)))
    for a, b in zip(errs, errs[1:]):
        assert 12.0 <= a / b <= 20.0


def test_determinism(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.1)
    sig = oc.DisturbanceSignal(kind="piecewise_constant_random", dim=1, amplitude=0.05,
                               dwell=0.3, seed=42)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm_plus_us",
                                  signal=sig, eps_bar=0.1, sigma=0.2)
    x0 = np.array([0.4, 0.1, 1.1, 0.0])
    a = oc.integrate(loop, x0, T=2.0, dt=1e-3)
    b = oc.integrate(loop, x0, T=2.0, dt=1e-3)
    for field in ("t", "eta", "z", "d", "v_eps", "v_z", "v_c", "dist", "mu", "u_s"):
        assert np.array_equal(getattr(a, field), getattr(b, field))


def test_v_eps_nonincreasing_without_disturbance(zero_record_eps05):
    cert, _, rec = zero_record_eps05
    steps = np.diff(rec.v_eps)
    assert np.all(steps <= 1e-8 * rec.v_eps[0])


def test_ultimate_bound_decays_with_horizon(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.1)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    x0 = np.array([0.5, 0.0, 1.0, 0.0])
    u_short = oc.ultimate_bound(oc.integrate(loop, x0, T=4.0, dt=1e-3))
    u_long = oc.ultimate_bound(oc.integrate(loop, x0, T=12.0, dt=1e-3))
    assert u_long < 1e-3 * u_short


def test_ultimate_bound_under_constant_disturbance(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.1)
    horizon = 10.0 * cert.eps / cert.gamma  # ten closed-loop time constants
    sig = oc.DisturbanceSignal(kind="constant", dim=1, amplitude=0.05)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm",
                                  signal=sig, sigma=1.0)
    rec = oc.integrate(loop, np.array([0.0, 0.0, 1.0, 0.0]), T=horizon, dt=1e-3)
    ub = oc.ultimate_bound(rec)
    assert 0.0 < ub <= oc.min_norm_ultimate_bound(cert, 0.05)
    # doubling |d|inf at most ~doubles the measured bound
    sig2 = oc.DisturbanceSignal(kind="constant", dim=1, amplitude=0.10)
    loop2 = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm",
                                   signal=sig2, sigma=1.0)
    ub2 = oc.ultimate_bound(oc.integrate(loop2, np.array([0.0, 0.0, 1.0, 0.0]),
                                         T=horizon, dt=1e-3))
    assert ub2 <= 2.05 * ub


def test_integrate_validation(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.5)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    with pytest.raises(ValueError):
        oc.integrate(loop, np.zeros(4), T=1.0, dt=0.0)
    with pytest.raises(ValueError):
        oc.integrate(loop, np.zeros(4), T=0.5, dt=1.0)
    with pytest.raises(ValueError):
        oc.integrate(loop, np.zeros(3), T=1.0, dt=0.1)
    with pytest.raises(ValueError):
        oc.integrate(loop, np.zeros(4), T=1e6, dt=1e-2)  # step ceiling


def test_integrate_aborts_on_nonfinite(hopf01, dyn01):
    cert = oc.certificate(dyn01, np.eye(2), 0.5)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    with np.errstate(over="ignore", invalid="ignore"), pytest.raises(oc.SimulationError) as err:
        oc.integrate(loop, np.array([0.0, 0.0, 1e200, 0.0]), T=1.0, dt=0.1)
    assert "t = " in str(err.value)


def test_ultimate_bound_validation(zero_record_eps05):
    _, _, rec = zero_record_eps05
    with pytest.raises(ValueError):
        oc.ultimate_bound(rec, settle_fraction=0.0)
    with pytest.raises(ValueError):
        oc.ultimate_bound(rec, settle_fraction=1.0)


def test_csv_layout(zero_record_eps05, tmp_path):
    _, _, rec = zero_record_eps05
    headers, data = to_csv_rows(rec)
    assert headers == ["t", "eta_0", "eta_1", "z_0", "z_1", "d_0",
                       "V_eps", "V_Z", "V_c", "dist"]
    assert data.shape == (len(rec), len(headers))
    path = tmp_path / "rec.csv"
    oc.write_csv(rec, path, preamble={"case": "unit"})
    lines = path.read_text().splitlines()
    assert lines[0] == "# case=unit"
    assert lines[1] == ",".join(headers)
    assert len(lines) == 2 + len(rec)


def test_record_v_eps_cross_check(hopf01, dyn01):
    # the stored V_eps trace equals evaluate_clf at each sample
    cert = oc.certificate(dyn01, np.eye(2), 0.1)
    loop = oc.DisturbedClosedLoop(plant=hopf01, cert=cert, controller="min_norm", sigma=1.0)
    rec = oc.integrate(loop, np.array([0.4, -0.2, 1.1, 0.0]), T=1.0, dt=1e-3)
    for i in range(0, len(rec), 97):
        assert rec.v_eps[i] == oc.evaluate_clf(cert, dyn01, rec.eta[i]).V
