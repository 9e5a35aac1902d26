import numpy as np
import pytest
import scipy.linalg

import orbitclf as oc
from orbitclf.riccati import newton_kleinman_iterates

SQRT3 = np.sqrt(3.0)

ALL_DIMS = [oc.OutputDims(k1, k2) for k1 in range(4) for k2 in range(4) if k1 + k2 >= 1]


def random_spd(rng, n):
    R = rng.normal(size=(n, n)) / np.sqrt(n)
    return R.T @ R + 0.1 * np.eye(n)


# --- sym_eig -----------------------------------------------------------------

def test_sym_eig_identity():
    w, V = oc.sym_eig(np.eye(2))
    assert np.allclose(w, [1.0, 1.0])
    assert np.allclose(V @ V.T, np.eye(2))


def test_sym_eig_closed_form():
    A = np.array([[SQRT3, 1.0], [1.0, SQRT3]])
    w, V = oc.sym_eig(A)
    assert np.allclose(w, [SQRT3 - 1.0, SQRT3 + 1.0], atol=1e-12)
    for i in range(2):
        assert np.linalg.norm(A @ V[:, i] - w[i] * V[:, i]) <= 1e-10 * np.linalg.norm(A)


def test_sym_eig_diagonal():
    w, _ = oc.sym_eig(np.diag([4.0, 9.0]))
    assert np.allclose(w, [4.0, 9.0])


def test_sym_eig_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        oc.sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_sym_eig_random_against_lapack():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 5, 8):
        for _ in range(10):
            A = rng.normal(size=(n, n))
            A = 0.5 * (A + A.T)
            w, V = oc.sym_eig(A)
            # residual contract
            for i in range(n):
                assert np.linalg.norm(A @ V[:, i] - w[i] * V[:, i]) <= 1e-10 * max(1.0, np.linalg.norm(A))
            # independent oracle: LAPACK symmetric eigenvalues
            assert np.allclose(w, np.linalg.eigvalsh(A), atol=1e-10)
            assert np.allclose(V.T @ V, np.eye(n), atol=1e-10)


# --- solve_care --------------------------------------------------------------

def test_care_closed_form_double_integrator():
    dyn = oc.build_fg(oc.OutputDims(0, 1))
    P = oc.solve_care(dyn, np.eye(2))
    assert np.allclose(P, [[SQRT3, 1.0], [1.0, SQRT3]], atol=1e-12)


def test_care_closed_form_scalar():
    dyn = oc.build_fg(oc.OutputDims(1, 0))
    P = oc.solve_care(dyn, np.eye(1))
    assert np.allclose(P, [[1.0]], atol=1e-12)


def test_care_closed_form_mixed():
    dyn = oc.build_fg(oc.OutputDims(1, 1))
    P = oc.solve_care(dyn, np.eye(3))
    expect = np.array([[1.0, 0.0, 0.0], [0.0, SQRT3, 1.0], [0.0, 1.0, SQRT3]])
    assert np.allclose(P, expect, atol=1e-12)


def test_care_rejects_bad_q():
    dyn = oc.build_fg(oc.OutputDims(0, 1))
    with pytest.raises(ValueError):
        oc.solve_care(dyn, -np.eye(2))
    with pytest.raises(ValueError):
        oc.solve_care(dyn, np.eye(3))


def test_care_random_grid_against_scipy():
    rng = np.random.default_rng(42)
    for dims in ALL_DIMS:
        dyn = oc.build_fg(dims)
        for _ in range(4):
            Q = random_spd(rng, dims.n_eta)
            P = oc.solve_care(dyn, Q)
            assert oc.care_residual(dyn, P, Q) <= 1e-10
            # independent oracle: scipy's Schur-based solver
            P_ref = scipy.linalg.solve_continuous_are(
                dyn.F, dyn.G, Q, np.eye(dims.n_mu))
            assert np.allclose(P, P_ref, atol=1e-8)
            assert np.max(np.linalg.eigvals(dyn.F - dyn.G @ dyn.G.T @ P).real) < 0.0


def test_newton_kleinman_trace_monotone():
    rng = np.random.default_rng(5)
    dyn = oc.build_fg(oc.OutputDims(1, 2))
    Q = random_spd(rng, dyn.dims.n_eta)
    traces = []
    for P in newton_kleinman_iterates(dyn, Q, max_iter=30):
        traces.append(np.trace(P))
        if oc.care_residual(dyn, P, Q) <= 1e-12:
            break
    assert len(traces) >= 3
    for a, b in zip(traces, traces[1:]):
        assert b <= a + 1e-9 * max(1.0, abs(a))


def test_lyapunov_solver():
    rng = np.random.default_rng(9)
    A = -np.eye(4) + 0.3 * rng.normal(size=(4, 4))
    C = random_spd(rng, 4)
    X = oc.solve_lyapunov(A, C)
    assert np.allclose(A.T @ X + X @ A, -C, atol=1e-11)


# --- scale_epsilon -----------------------------------------------------------

def test_scale_identity_at_eps_one():
    dims = oc.OutputDims(0, 1)
    P = np.array([[SQRT3, 1.0], [1.0, SQRT3]])
    M, P_eps, Q_eps = oc.scale_epsilon(P, np.eye(2), dims, 1.0)
    assert np.array_equal(M, np.eye(2))
    assert np.array_equal(P_eps, P)
    assert np.array_equal(Q_eps, np.eye(2))


def test_scale_closed_form_eps_01():
    dims = oc.OutputDims(0, 1)
    dyn = oc.build_fg(dims)
    P = oc.solve_care(dyn, np.eye(2))
    M, P_eps, Q_eps = oc.scale_epsilon(P, np.eye(2), dims, 0.1)
    assert np.allclose(np.diag(M), [10.0, 1.0])
    assert np.allclose(P_eps, [[100.0 * SQRT3, 10.0], [10.0, SQRT3]], atol=1e-10)
    assert oc.scaled_care_residual(dyn, P_eps, Q_eps, 0.1) <= 1e-10


def test_scale_residual_mixed_dims():
    dims = oc.OutputDims(1, 1)
    dyn = oc.build_fg(dims)
    P = oc.solve_care(dyn, np.eye(3))
    _, P_eps, Q_eps = oc.scale_epsilon(P, np.eye(3), dims, 0.5)
    assert oc.scaled_care_residual(dyn, P_eps, Q_eps, 0.5) <= 1e-10


def test_scale_rejects_bad_eps():
    dims = oc.OutputDims(0, 1)
    with pytest.raises(ValueError):
        oc.scale_epsilon(np.eye(2), np.eye(2), dims, 0.0)
    with pytest.raises(ValueError):
        oc.scale_epsilon(np.eye(2), np.eye(2), dims, 1.5)


# --- certificate -------------------------------------------------------------

def test_certificate_constants_double_integrator(cert01_e1):
    assert np.isclose(cert01_e1.gamma, 1.0 / (SQRT3 + 1.0), atol=1e-12)
    assert np.isclose(cert01_e1.c1, SQRT3 - 1.0, atol=1e-12)
    assert np.isclose(cert01_e1.c2, SQRT3 + 1.0, atol=1e-12)
    assert cert01_e1.c3 == cert01_e1.gamma


def test_certificate_constants_scalar():
    dyn = oc.build_fg(oc.OutputDims(1, 0))
    cert = oc.certificate(dyn, np.eye(1), 1.0)
    assert np.isclose(cert.gamma, 1.0)
    assert np.isclose(cert.c1, 1.0)
    assert np.isclose(cert.c2, 1.0)


def test_certificate_gamma_p_below_q():
    rng = np.random.default_rng(77)
    for dims in (oc.OutputDims(0, 2), oc.OutputDims(2, 1)):
        dyn = oc.build_fg(dims)
        for _ in range(5):
            Q = random_spd(rng, dims.n_eta)
            cert = oc.certificate(dyn, Q, 0.3)
            w, _ = oc.sym_eig(Q - cert.gamma * cert.P)
            assert w[0] >= -1e-12


def test_certificate_quadratic_sandwich():
    rng = np.random.default_rng(13)
    dims = oc.OutputDims(1, 1)
    dyn = oc.build_fg(dims)
    Q = random_spd(rng, dims.n_eta)
    for eps in (0.05, 0.1, 0.5, 1.0):
        cert = oc.certificate(dyn, Q, eps)
        for _ in range(250):
            eta = rng.normal(size=dims.n_eta)
            v = eta @ cert.P_eps @ eta
            n2 = eta @ eta
            assert cert.c1 * n2 - 1e-9 <= v <= cert.c2 / eps**2 * n2 + 1e-9


def test_certificate_roundtrip_serialization(cert01_e01):
    data = cert01_e01.to_dict()
    back = oc.ResClfCertificate.from_dict(data)
    assert np.array_equal(back.P, cert01_e01.P)
    assert np.array_equal(back.P_eps, cert01_e01.P_eps)
    assert back.gamma == cert01_e01.gamma
