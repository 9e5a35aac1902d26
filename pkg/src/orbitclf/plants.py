"""Synthetic closed-loop plants with known periodic orbits.

Two testbeds:

* HopfPlant -- transverse dynamics d/dt eta = F eta + G(mu + d + u_s)
  coupled one-way into a planar Hopf normal form,

      dz/dt = Psi0(z) + C eta,
      Psi0(z) = (-w z2 + lh z1 (r0^2 - |z|^2),  w z1 + lh z2 (r0^2 - |z|^2)),

  whose circle |z| = r0 is an exponentially attracting limit cycle.  The
  orbit, the distance to it, a converse-Lyapunov function, and all of its
  constants are available in closed form, so the composite-Lyapunov
  hypotheses can be checked instead of assumed.

* MechPlant -- a unit-inertia 2-DOF arm with a Bezier virtual constraint
  y2 = q2 - y2d(tau(q)) driven through a monotone phase variable
  tau(q) = (q1 - q1m)/(q1p - q1m), plus an optional velocity output
  y1 = dq1 - v_d.  Feedback linearization is exact (unit mass matrix, no
  gravity) in both state-based and time-based form, which isolates the
  effect of a corrupted phase estimate: running the time-based controller
  at tau + e is equivalent to injecting a disturbance d in the mu channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clf import min_norm_mu, u_s_damping
from .disturbance import DisturbanceSignal, sample
from .output_dynamics import OutputDims, OutputDynamics, build_fg
from .riccati import ResClfCertificate

CONTROLLER_MODES = ("min_norm", "min_norm_plus_us")


# ---------------------------------------------------------------------------
# Hopf zero-dynamics plant


@dataclass(frozen=True)
class ConverseConstants:
    """Constants c4..c7 of the converse-Lyapunov inequalities on the annulus."""

    c4: float
    c5: float
    c6: float
    c7: float
    r: float  # annulus half-width around r0


@dataclass(frozen=True)
class HopfPlant:
    """Hopf oscillator zero dynamics with linear coupling from eta."""

    dims: OutputDims
    omega: float = 1.0
    lambda_h: float = 1.0
    r0: float = 1.0
    coupling: np.ndarray | None = None  # (2, n_eta); default all entries 0.2
    y1_rate: float = 1.0  # first-order y1 contraction on the partial zero dynamics
    dyn: OutputDynamics = field(init=False, repr=False)

    def __post_init__(self):
        if self.lambda_h <= 0.0:
            raise ValueError("lambda_h must be positive")
        if self.r0 <= 0.0:
            raise ValueError("r0 must be positive")
        C = self.coupling
        if C is None:
            C = np.full((2, self.dims.n_eta), 0.2)
        C = np.asarray(C, dtype=float)
        if C.shape != (2, self.dims.n_eta):
            raise ValueError(f"coupling has shape {C.shape}, expected (2, {self.dims.n_eta})")
        object.__setattr__(self, "coupling", C)
        object.__setattr__(self, "dyn", build_fg(self.dims))

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    @property
    def lipschitz_q(self) -> float:
        """Lipschitz constant of Psi in eta: the top singular value of C."""
        return float(np.linalg.norm(self.coupling, 2))

    def zero_field(self, z: np.ndarray) -> np.ndarray:
        """Psi0(z), the uncoupled Hopf normal form."""
        z1, z2 = z
        g = self.lambda_h * (self.r0 ** 2 - (z1 * z1 + z2 * z2))
        return np.array([-self.omega * z2 + g * z1, self.omega * z1 + g * z2])

    def exact_zero_solution(self, z0: np.ndarray, t: float) -> np.ndarray:
        """Closed-form flow of dz/dt = Psi0(z): logistic radius, linear angle."""
        r2_0 = float(z0 @ z0)
        if r2_0 == 0.0:
            return np.zeros(2)
        e = np.exp(2.0 * self.lambda_h * self.r0 ** 2 * t)
        r2 = self.r0 ** 2 * r2_0 * e / (self.r0 ** 2 + r2_0 * (e - 1.0))
        th = np.arctan2(z0[1], z0[0]) + self.omega * t
        r = np.sqrt(r2)
        return np.array([r * np.cos(th), r * np.sin(th)])


def hopf_vector_field(plant: HopfPlant, eta: np.ndarray, z: np.ndarray,
                      mu_effective: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Composite right-hand side (d eta/dt, dz/dt) for an effective input.

    mu_effective is the total input in the mu channel (auxiliary input plus
    disturbance plus damping feedback).
    """
    eta = np.asarray(eta, dtype=float)
    z = np.asarray(z, dtype=float)
    if eta.shape != (plant.dims.n_eta,):
        raise ValueError(f"eta has shape {eta.shape}, expected ({plant.dims.n_eta},)")
    eta_dot = plant.dyn.F @ eta + plant.dyn.G @ np.asarray(mu_effective, dtype=float)
    z_dot = plant.zero_field(z) + plant.coupling @ eta
    return eta_dot, z_dot


def orbit_distance(eta: np.ndarray, z: np.ndarray, plant: HopfPlant) -> float:
    """Distance to the embedded periodic orbit, composing block norms additively.

    For the circular orbit (y1* = 0) this is
    | ||z|| - r0 | + ||y1|| + ||y2|| + ||dy2||.
    """
    eta = np.asarray(eta, dtype=float)
    z = np.asarray(z, dtype=float)
    k1, k2 = plant.dims.k1, plant.dims.k2
    y1 = eta[:k1]
    y2 = eta[k1:k1 + k2]
    dy2 = eta[k1 + k2:]
    return float(abs(np.linalg.norm(z) - plant.r0) + np.linalg.norm(y1)
                 + np.linalg.norm(y2) + np.linalg.norm(dy2))


def pzd_distance(y1: np.ndarray, z: np.ndarray, plant: HopfPlant) -> float:
    """Distance of a partial-zero-dynamics point (y1, z) to its orbit."""
    return float(abs(np.linalg.norm(z) - plant.r0) + np.linalg.norm(y1))


def converse_constants(plant: HopfPlant, annulus_fraction: float = 0.5) -> ConverseConstants:
    """Constants for V_Z = (||z||^2 - r0^2)^2 + ||y1||^2 on the annulus.

    The annulus is r0 +- r with r = annulus_fraction * r0.  For k1 = 0 the
    constants are

        c4 = min((2 r0 - r)^2, 1),   c5 = max((2 r0 + r)^2, 1),
        c6 = 4 lh (r0 - r)^2 c4,      c7 = max(4 (r0 + r)(2 r0 + r), 2).

    For k1 > 0 the blockwise distance loses a factor (a+b)^2 <= 2(a^2+b^2),
    so c4 (and c6 through it, combined with the y1 contraction rate) are
    halved to stay provable.
    """
    if not (0.0 < annulus_fraction < 1.0):
        raise ValueError("annulus_fraction must lie in (0, 1)")
    r0, lh = plant.r0, plant.lambda_h
    r = annulus_fraction * r0
    c4_z = (2.0 * r0 - r) ** 2
    c5 = max((2.0 * r0 + r) ** 2, 1.0)
    c7 = max(4.0 * (r0 + r) * (2.0 * r0 + r), 2.0)
    if plant.dims.k1 == 0:
        c4 = min(c4_z, 1.0)
        c6 = 4.0 * lh * (r0 - r) ** 2 * c4
    else:
        c4 = 0.5 * min(c4_z, 1.0)
        c6 = 0.5 * min(4.0 * lh * (r0 - r) ** 2 * c4_z, 2.0 * plant.y1_rate)
    return ConverseConstants(c4=c4, c5=c5, c6=c6, c7=c7, r=r)


def vz_converse_lyapunov(y1: np.ndarray, z: np.ndarray, plant: HopfPlant,
                         annulus_fraction: float = 0.5,
                         ) -> tuple[float, np.ndarray, ConverseConstants]:
    """Evaluate V_Z, its gradient w.r.t. (y1, z), and the constants c4..c7.

    Raises ValueError when z lies outside the analysis annulus.
    """
    y1 = np.asarray(y1, dtype=float)
    z = np.asarray(z, dtype=float)
    consts = converse_constants(plant, annulus_fraction)
    nz = float(np.linalg.norm(z))
    if not (plant.r0 - consts.r - 1e-12 <= nz <= plant.r0 + consts.r + 1e-12):
        raise ValueError(f"||z|| = {nz:g} outside the annulus "
                         f"[{plant.r0 - consts.r:g}, {plant.r0 + consts.r:g}]")
    s = nz * nz - plant.r0 ** 2
    value = s * s + float(y1 @ y1)
    grad = np.concatenate([2.0 * y1, 4.0 * s * z])
    return value, grad, consts


def vz_value(y1: np.ndarray, z: np.ndarray, plant: HopfPlant) -> float:
    """V_Z without the annulus guard (used for trajectory traces)."""
    s = float(z @ z) - plant.r0 ** 2
    return s * s + float(np.asarray(y1) @ np.asarray(y1))


# ---------------------------------------------------------------------------
# 2-DOF mechanical plant with virtual constraints


def _bezier(alpha: np.ndarray, tau: float) -> float:
    # de Casteljau evaluation; exact and stable on [0, 1]
    b = alpha.astype(float).copy()
    for _ in range(len(b) - 1):
        b = b[:-1] + tau * (b[1:] - b[:-1])
    return float(b[0])


def _bezier_d(alpha: np.ndarray) -> np.ndarray:
    n = len(alpha) - 1
    return n * (alpha[1:] - alpha[:-1])


@dataclass(frozen=True)
class MechPlant:
    """Unit-inertia 2-DOF plant: state x = (q1, q2, dq1, dq2), inputs u = (u1, u2)."""

    alpha: np.ndarray  # Bezier coefficients of the desired pose trajectory, degree 5
    q1_minus: float = 0.0
    q1_plus: float = 1.0
    v_d: float | None = 1.0  # desired phase velocity; None drops the velocity output

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        if a.shape != (6,):
            raise ValueError(f"alpha must have 6 coefficients (degree 5), got shape {a.shape}")
        if self.q1_plus <= self.q1_minus:
            raise ValueError("q1_plus must exceed q1_minus")
        object.__setattr__(self, "alpha", a)

    @property
    def dims(self) -> OutputDims:
        return OutputDims(k1=0 if self.v_d is None else 1, k2=1)

    @property
    def delta(self) -> float:
        return self.q1_plus - self.q1_minus

    def tau(self, q1: float) -> float:
        return (q1 - self.q1_minus) / self.delta

    def y2d(self, tau: float) -> float:
        return _bezier(self.alpha, tau)

    def dy2d(self, tau: float) -> float:
        return _bezier(_bezier_d(self.alpha), tau)

    def d2y2d(self, tau: float) -> float:
        return _bezier(_bezier_d(_bezier_d(self.alpha)), tau)

    def eta_of(self, x: np.ndarray) -> np.ndarray:
        """Output coordinates eta(x) = (y1?, y2, dy2) at the true phase."""
        q1, q2, dq1, dq2 = x
        tau = self.tau(q1)
        y2 = q2 - self.y2d(tau)
        dy2 = dq2 - self.dy2d(tau) * dq1 / self.delta
        if self.v_d is None:
            return np.array([y2, dy2])
        return np.array([dq1 - self.v_d, y2, dy2])

    def z_of(self, x: np.ndarray) -> np.ndarray:
        """Zero-dynamics coordinates (q1, dq1)."""
        return np.array([x[0], x[2]])

    def x_of(self, eta: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Reconstruct x from (eta, z); inverse of (eta_of, z_of)."""
        q1, dq1 = z
        tau = self.tau(q1)
        k1 = self.dims.k1
        y2, dy2 = eta[k1], eta[k1 + 1]
        q2 = y2 + self.y2d(tau)
        dq2 = dy2 + self.dy2d(tau) * dq1 / self.delta
        return np.array([q1, q2, dq1, dq2])


def mech_feedback_linearize(plant: MechPlant, x: np.ndarray, mu: np.ndarray,
                            mode: str = "state",
                            tau_input: float | None = None) -> np.ndarray:
    """Feedback linearizing input u for the mech plant.

    mode "state" uses the state-based phase tau(q1); mode "time" uses the
    supplied phase estimate tau_input in the feedforward, with the phase
    rate and acceleration taken from the true state (only the phase value
    is corrupted).  With tau_input = tau(q1) the two modes coincide exactly.
    Returns u = (u1, u2); for the k1 = 0 plant the phase joint is
    unactuated and u1 = 0.
    """
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    k = plant.dims.n_mu
    if mu.shape != (k,):
        raise ValueError(f"mu has shape {mu.shape}, expected ({k},)")
    q1, _, dq1, _ = x
    delta = plant.delta
    if mode == "state":
        tau_ff = plant.tau(q1)
    elif mode == "time":
        if tau_input is None:
            raise ValueError("time mode requires tau_input")
        tau_ff = float(tau_input)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not (-1e-9 <= tau_ff <= 1.0 + 1e-9):
        raise ValueError(f"phase {tau_ff:g} outside [0, 1]")

    tau_rate = dq1 / delta
    if plant.v_d is None:
        u1 = 0.0
        mu2 = mu[0]
    else:
        u1 = mu[0]  # dy1/dt = u1 and the desired velocity is constant
        mu2 = mu[1]
    # d2y2/dt2 = u2 - y2d''(tau) tau_rate^2 - y2d'(tau) u1/delta
    u2 = plant.d2y2d(tau_ff) * tau_rate ** 2 + plant.dy2d(tau_ff) * (u1 / delta) + mu2
    return np.array([u1, u2])


def mech_eta_rate(plant: MechPlant, x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """d eta/dt of the true outputs under input u (chain rule, exact)."""
    q1, _, dq1, _ = x
    tau = plant.tau(q1)
    tau_rate = dq1 / plant.delta
    dy2_rate = u[1] - plant.d2y2d(tau) * tau_rate ** 2 - plant.dy2d(tau) * u[0] / plant.delta
    eta = plant.eta_of(x)
    k1 = plant.dims.k1
    dy2 = eta[k1 + 1]
    if plant.v_d is None:
        return np.array([dy2, dy2_rate])
    return np.array([u[0], dy2, dy2_rate])


def derive_phase_disturbance(plant: MechPlant, x: np.ndarray, e: float) -> np.ndarray:
    """Equivalent mu-channel disturbance induced by the phase error e.

    d = G+ (f_cl(x; tau+e) - f_cl(x; tau)) restricted to the eta subsystem,
    where f_cl is the closed-loop eta rate; the auxiliary input cancels in
    the difference, so d is exactly the feedforward mismatch.  d = 0 at e = 0.
    """
    x = np.asarray(x, dtype=float)
    tau = plant.tau(x[0])
    tau_hat = tau + e
    if not (0.0 <= tau_hat <= 1.0) or not (0.0 <= tau <= 1.0):
        raise ValueError(f"phase {tau_hat:g} (or {tau:g}) outside [0, 1]")
    mu0 = np.zeros(plant.dims.n_mu)
    u_hat = mech_feedback_linearize(plant, x, mu0, mode="time", tau_input=tau_hat)
    u_ref = mech_feedback_linearize(plant, x, mu0, mode="time", tau_input=tau)
    dyn = build_fg(plant.dims)
    # G has orthonormal columns, so the pseudoinverse is G'.
    return dyn.G.T @ (mech_eta_rate(plant, x, u_hat) - mech_eta_rate(plant, x, u_ref))


# ---------------------------------------------------------------------------
# Disturbed closed loops


@dataclass(frozen=True)
class DisturbedClosedLoop:
    """Hopf plant under the min-norm controller, disturbance, and optional damping.

    The flat simulation state is the concatenation (eta, z).  With zero
    disturbance and eta = 0, z on the circle, the flow is periodic with
    period 2 pi / omega.
    """

    plant: HopfPlant
    cert: ResClfCertificate
    controller: str = "min_norm"
    signal: DisturbanceSignal | None = None
    eps_bar: float = 0.1
    sigma: float = 1.0  # composite Lyapunov weight used for the V_c trace

    def __post_init__(self):
        if self.controller not in CONTROLLER_MODES:
            raise ValueError(f"unknown controller mode {self.controller!r}")
        if self.cert.dims != self.plant.dims:
            raise ValueError("certificate and plant dims disagree")

    @property
    def kind(self) -> str:
        return "hopf"

    @property
    def state_dim(self) -> int:
        return self.plant.dims.n_eta + 2

    def split(self, state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = self.plant.dims.n_eta
        return state[:n], state[n:]

    def inputs(self, t: float, state: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(mu, u_s, d) at a point; u_s is zero unless the damping mode is on."""
        eta, _z = self.split(state)
        mu = min_norm_mu(self.cert, self.plant.dyn, eta)
        if self.controller == "min_norm_plus_us":
            us = u_s_damping(self.cert, self.plant.dyn, eta, self.eps_bar)
        else:
            us = np.zeros(self.plant.dims.n_mu)
        if self.signal is None:
            d = np.zeros(self.plant.dims.n_mu)
        else:
            d = sample(self.signal, t)
        return mu, us, d

    def field(self, t: float, state: np.ndarray) -> np.ndarray:
        eta, z = self.split(state)
        mu, us, d = self.inputs(t, state)
        eta_dot, z_dot = hopf_vector_field(self.plant, eta, z, mu + us + d)
        return np.concatenate([eta_dot, z_dot])


@dataclass(frozen=True)
class MechClosedLoop:
    """Mech plant under the time-based controller at a corrupted phase.

    The simulation state is x = (q1, q2, dq1, dq2).  The controller
    measures outputs at tau_hat = tau(q1) + e(t) and applies the time-based
    linearization with the min-norm auxiliary input; e(t) comes from a
    phase_error_driven signal (or is identically zero when signal is None).
    """

    plant: MechPlant
    cert: ResClfCertificate
    signal: DisturbanceSignal | None = None

    def __post_init__(self):
        if self.cert.dims != self.plant.dims:
            raise ValueError("certificate and plant dims disagree")
        if self.signal is not None and self.signal.kind != "phase_error_driven":
            raise ValueError("mech closed loop takes a phase_error_driven signal")

    @property
    def kind(self) -> str:
        return "mech"

    @property
    def state_dim(self) -> int:
        return 4

    def phase_error(self, t: float) -> float:
        return 0.0 if self.signal is None else self.signal.phase_error(t)

    def eta_hat(self, x: np.ndarray, tau_hat: float) -> np.ndarray:
        """Outputs as the controller sees them, measured at the phase estimate."""
        p = self.plant
        q1, q2, dq1, dq2 = x
        y2 = q2 - p.y2d(tau_hat)
        dy2 = dq2 - p.dy2d(tau_hat) * dq1 / p.delta
        if p.v_d is None:
            return np.array([y2, dy2])
        return np.array([dq1 - p.v_d, y2, dy2])

    def control(self, t: float, x: np.ndarray) -> np.ndarray:
        tau_hat = self.plant.tau(x[0]) + self.phase_error(t)
        mu = min_norm_mu(self.cert, build_fg(self.plant.dims), self.eta_hat(x, tau_hat))
        return mech_feedback_linearize(self.plant, x, mu, mode="time", tau_input=tau_hat)

    def field(self, t: float, x: np.ndarray) -> np.ndarray:
        u = self.control(t, x)
        return np.array([x[2], x[3], u[0], u[1]])

    def equivalent_disturbance(self, t: float, x: np.ndarray) -> np.ndarray:
        return derive_phase_disturbance(self.plant, x, self.phase_error(t))
