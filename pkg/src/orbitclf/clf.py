"""Lyapunov function evaluation, min-norm auxiliary input, and damping feedback.

V_eps(eta) = eta' P_eps eta with Lie derivatives along the output dynamics

    LF_V = eta' (F' P_eps + P_eps F) eta,    LG_V = 2 eta' P_eps G.

The controller set accepts mu whenever LF_V + LG_V mu + (gamma/eps) V <= 0.
The canonical selection implemented here is the pointwise minimum-norm
element: with psi0 = LF_V + (gamma/eps) V and psi1 = LG_V',

    mu = 0                      if psi0 <= 0,
    mu = -(psi0/||psi1||^2) psi1  otherwise.

psi1 = 0 with psi0 > 0 cannot occur when the scaled Riccati identity and
gamma P_eps <= Q_eps hold (then psi0 = -(1/eps) eta'(Q_eps - gamma P_eps) eta
on ker(G'P_eps)); it is reported as an internal-consistency failure.

The same membership test applies verbatim to time-parameterized outputs:
evaluate it on eta_t in place of eta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .output_dynamics import OutputDynamics
from .riccati import ResClfCertificate


class ClfConsistencyError(RuntimeError):
    """The provably-infeasible branch (psi1 = 0, psi0 > 0) was reached."""


@dataclass(frozen=True)
class ClfEvaluation:
    """V_eps and its Lie derivatives at a point."""

    V: float
    LF_V: float
    LG_V: np.ndarray


def _check_eta(cert: ResClfCertificate, eta: np.ndarray) -> np.ndarray:
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (cert.dims.n_eta,):
        raise ValueError(f"eta has shape {eta.shape}, expected ({cert.dims.n_eta},)")
    return eta


def evaluate_clf(cert: ResClfCertificate, dyn: OutputDynamics, eta: np.ndarray) -> ClfEvaluation:
    """Evaluate V_eps, LF_V, LG_V at eta."""
    eta = _check_eta(cert, eta)
    P_eps = cert.P_eps
    Pe = P_eps @ eta
    V = float(eta @ Pe)
    LF_V = float(2.0 * (dyn.F @ eta) @ Pe)  # eta'(F'P + PF)eta = 2 eta'P F eta
    LG_V = 2.0 * (Pe @ dyn.G)
    return ClfEvaluation(V=V, LF_V=LF_V, LG_V=LG_V)


def min_norm_mu(cert: ResClfCertificate, dyn: OutputDynamics, eta: np.ndarray) -> np.ndarray:
    """Minimum-Euclidean-norm element of the rate-(gamma/eps) controller set."""
    eta = _check_eta(cert, eta)
    ev = evaluate_clf(cert, dyn, eta)
    psi0 = ev.LF_V + cert.rate * ev.V
    if psi0 <= 0.0:
        return np.zeros(cert.dims.n_mu)
    psi1 = ev.LG_V
    denom = float(psi1 @ psi1)
    if denom <= 1e-14 * psi0:
        raise ClfConsistencyError(
            f"psi1 ~ 0 with psi0 = {psi0:g} > 0; certificate invariants are broken")
    return -(psi0 / denom) * psi1


def membership(cert: ResClfCertificate, dyn: OutputDynamics, eta: np.ndarray,
               mu: np.ndarray, mode: str = "res", c: float | None = None) -> tuple[bool, float]:
    """Controller-set membership test; returns (member, signed slack).

    mode "res" tests against the rapid rate gamma/eps; mode "es" against a
    plain exponential rate c (defaulting to gamma).  Membership allows the
    slack a working-precision margin (1e-12 scaled to the term magnitudes)
    so that the exactly-tight min-norm selection is a member despite
    round-off.  Applies unchanged to time-based outputs by passing eta_t.
    """
    eta = _check_eta(cert, eta)
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (cert.dims.n_mu,):
        raise ValueError(f"mu has shape {mu.shape}, expected ({cert.dims.n_mu},)")
    if mode == "res":
        rate = cert.rate
    elif mode == "es":
        rate = cert.gamma if c is None else float(c)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ev = evaluate_clf(cert, dyn, eta)
    slack = ev.LF_V + float(ev.LG_V @ mu) + rate * ev.V
    guard = 1e-12 * max(1.0, abs(ev.LF_V), rate * ev.V, abs(float(ev.LG_V @ mu)))
    return slack <= guard, slack


def u_s_damping(cert: ResClfCertificate, dyn: OutputDynamics, eta: np.ndarray,
                eps_bar: float) -> np.ndarray:
    """State-based damping feedback u_s = -(1/(2 eps_bar)) G' P_eps eta.

    With B_y = I this adds exactly -(1/eps_bar) ||G'P_eps eta||^2 to the
    V_eps derivative; smaller eps_bar damps harder.
    """
    if not (0.0 < eps_bar <= 1.0):
        raise ValueError(f"eps_bar must lie in (0, 1], got {eps_bar}")
    eta = _check_eta(cert, eta)
    return -(0.5 / eps_bar) * (dyn.G.T @ (cert.P_eps @ eta))
