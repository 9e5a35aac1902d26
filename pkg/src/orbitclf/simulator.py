"""Fixed-step RK4 integration of the closed loops, with Lyapunov traces.

Classical RK4 with a uniform grid: reproducible, bit-deterministic for a
given configuration, and simple to analyze (global error O(dt^4)).  The
disturbance is exogenous and is evaluated at the RK4 stage times rather
than held over the step; the sup-norm bounds used downstream are safe
under stage sampling for every signal kind shipped here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .clf import evaluate_clf, min_norm_mu
from .output_dynamics import build_fg
from .plants import DisturbedClosedLoop, MechClosedLoop, orbit_distance, vz_value

MAX_STEPS = 10_000_000

CSV_NOTE = "columns: t,eta_*,z_*,d_*,V_eps,V_Z,V_c,dist"


class SimulationError(RuntimeError):
    """Integration aborted (non-finite state)."""


@dataclass(frozen=True)
class TrajectoryRecord:
    """Uniform-grid samples of state, inputs, and Lyapunov traces."""

    t: np.ndarray
    eta: np.ndarray
    z: np.ndarray
    d: np.ndarray
    v_eps: np.ndarray
    v_z: np.ndarray
    v_c: np.ndarray
    dist: np.ndarray
    mu: np.ndarray
    u_s: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.t.shape[0]

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def eta_norm(self) -> np.ndarray:
        return np.linalg.norm(self.eta, axis=1)


def rk4_step(f: Callable[[float, np.ndarray], np.ndarray], t: float,
             y: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta 4 step."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(closed_loop, x0: np.ndarray, T: float = 50.0,
              dt: float = 1e-3) -> TrajectoryRecord:
    """Integrate a closed loop from x0 over [0, T] and record everything.

    x0 is the flat state: (eta, z) concatenated for the Hopf loop, the
    mechanical state x for the mech loop.  Raises SimulationError with the
    offending time if the state leaves the finite range.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if T < dt:
        raise ValueError("T must be at least dt")
    n_steps = int(round(T / dt))
    if n_steps > MAX_STEPS:
        raise ValueError(f"T/dt = {n_steps} exceeds the {MAX_STEPS} step ceiling")

    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (closed_loop.state_dim,):
        raise ValueError(f"x0 has shape {x0.shape}, expected ({closed_loop.state_dim},)")

    states = np.empty((n_steps + 1, x0.shape[0]))
    states[0] = x0
    f = closed_loop.field
    t = 0.0
    for i in range(n_steps):
        states[i + 1] = rk4_step(f, t, states[i], dt)
        t += dt
        if not np.all(np.isfinite(states[i + 1])):
            raise SimulationError(f"non-finite state at t = {t:.6g}: {states[i + 1]}")
    ts = np.arange(n_steps + 1) * dt

    if isinstance(closed_loop, DisturbedClosedLoop):
        return _record_hopf(closed_loop, ts, states)
    if isinstance(closed_loop, MechClosedLoop):
        return _record_mech(closed_loop, ts, states)
    raise TypeError(f"unsupported closed loop type {type(closed_loop)!r}")


def _record_hopf(loop: DisturbedClosedLoop, ts: np.ndarray,
                 states: np.ndarray) -> TrajectoryRecord:
    plant, cert = loop.plant, loop.cert
    n = len(ts)
    k1 = plant.dims.k1
    n_eta, n_mu = plant.dims.n_eta, plant.dims.n_mu
    eta = states[:, :n_eta]
    z = states[:, n_eta:]
    d = np.empty((n, n_mu))
    mu = np.empty((n, n_mu))
    us = np.empty((n, n_mu))
    v_eps = np.empty(n)
    v_z = np.empty(n)
    dist = np.empty(n)
    for i in range(n):
        m_i, u_i, d_i = loop.inputs(float(ts[i]), states[i])
        mu[i], us[i], d[i] = m_i, u_i, d_i
        v_eps[i] = evaluate_clf(cert, plant.dyn, eta[i]).V
        v_z[i] = vz_value(eta[i, :k1], z[i], plant)
        dist[i] = orbit_distance(eta[i], z[i], plant)
    v_c = loop.sigma * v_z + v_eps
    meta = {
        "kind": "hopf", "k1": plant.dims.k1, "k2": plant.dims.k2,
        "eps": cert.eps, "eps_bar": loop.eps_bar, "controller": loop.controller,
        "sigma": loop.sigma, "dt": float(ts[1] - ts[0]), "horizon": float(ts[-1]),
    }
    return TrajectoryRecord(t=ts, eta=eta, z=z, d=d, v_eps=v_eps, v_z=v_z,
                            v_c=v_c, dist=dist, mu=mu, u_s=us, meta=meta)


def _record_mech(loop: MechClosedLoop, ts: np.ndarray,
                 states: np.ndarray) -> TrajectoryRecord:
    plant, cert = loop.plant, loop.cert
    dyn = build_fg(plant.dims)
    n = len(ts)
    n_mu = plant.dims.n_mu
    eta = np.empty((n, plant.dims.n_eta))
    z = np.empty((n, 2))
    d = np.empty((n, n_mu))
    mu = np.empty((n, n_mu))
    v_eps = np.empty(n)
    nan = np.full(n, np.nan)
    for i in range(n):
        x = states[i]
        eta[i] = plant.eta_of(x)
        z[i] = plant.z_of(x)
        d[i] = loop.equivalent_disturbance(float(ts[i]), x)
        tau_hat = plant.tau(x[0]) + loop.phase_error(float(ts[i]))
        mu[i] = min_norm_mu(cert, dyn, loop.eta_hat(x, tau_hat))
        v_eps[i] = evaluate_clf(cert, dyn, eta[i]).V
    meta = {
        "kind": "mech", "k1": plant.dims.k1, "k2": plant.dims.k2,
        "eps": cert.eps, "dt": float(ts[1] - ts[0]), "horizon": float(ts[-1]),
    }
    return TrajectoryRecord(t=ts, eta=eta, z=z, d=d, v_eps=v_eps, v_z=nan,
                            v_c=nan.copy(), dist=nan.copy(), mu=mu,
                            u_s=np.zeros((n, n_mu)), meta=meta)


def ultimate_bound(record: TrajectoryRecord, settle_fraction: float = 0.5) -> float:
    """Max ||eta|| over the tail of the horizon (after settle_fraction of it)."""
    if len(record) == 0:
        raise ValueError("empty record")
    if not (0.0 < settle_fraction < 1.0):
        raise ValueError("settle_fraction must lie in (0, 1)")
    start = int(np.ceil(settle_fraction * (len(record) - 1)))
    return float(np.max(record.eta_norm[start:]))


def to_csv_rows(record: TrajectoryRecord) -> tuple[list[str], np.ndarray]:
    """(header names, data matrix) in the fixed column order."""
    headers = (["t"]
               + [f"eta_{i}" for i in range(record.eta.shape[1])]
               + [f"z_{i}" for i in range(record.z.shape[1])]
               + [f"d_{i}" for i in range(record.d.shape[1])]
               + ["V_eps", "V_Z", "V_c", "dist"])
    data = np.column_stack([record.t, record.eta, record.z, record.d,
                            record.v_eps, record.v_z, record.v_c, record.dist])
    return headers, data


def write_csv(record: TrajectoryRecord, path, preamble: dict | None = None) -> None:
    """Write the record as CSV with optional '# key=value' provenance lines."""
    headers, data = to_csv_rows(record)
    lines = []
    if preamble:
        for key, value in preamble.items():
            lines.append(f"# {key}={value}")
    lines.append(",".join(headers))
    for row in data:
        lines.append(",".join(format(v, ".17g") for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
