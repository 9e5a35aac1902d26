"""CARE synthesis, epsilon scaling, and the RES-CLF certificate constants.

The continuous algebraic Riccati equation for the output dynamics pair
(F, G) with unit input weight,

    F'P + P F - P G G' P + Q = 0,    Q = Q' > 0,

is solved by Newton-Kleinman iteration: each step solves the Lyapunov
equation A' X + X A = -(Q + K'K) for the current closed loop A = F - G K
and updates K = G' X.  The inner Lyapunov equation is solved directly by
Kronecker vectorization into an (n^2 x n^2) linear system, which is cheap
at the desk scales handled here (n <= ~30).  The seed gain comes from the
closed-form Q = I solution, which stabilizes F for every valid dims, so
every iterate is stabilizing and trace(P_i) is non-increasing.

Epsilon scaling uses M = diag(I_k1, (1/eps) I_k2, I_k2).  This is the
unique diagonal block scaling (with unit y1 and dy2 blocks) for which

    F'P_e + P_e F - (1/eps) P_e G G' P_e + (1/eps) Q_e = 0

holds identically given the CARE, with P_e = M P M and Q_e = M Q M.  The
residual of this identity is validated on every certificate.

Certificate constants: gamma = lambda_min(Q)/lambda_max(P) (so that
gamma * P <= Q), c1 = lambda_min(P), c2 = lambda_max(P), c3 = gamma.
Since I <= M <= (1/eps) I, the quadratic form eta' P_e eta is sandwiched
between c1 ||eta||^2 and (c2/eps^2) ||eta||^2 for every 0 < eps <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .output_dynamics import OutputDims, OutputDynamics

SQRT3 = float(np.sqrt(3.0))

#: Frobenius-norm ceiling accepted for both Riccati residuals.
RESIDUAL_TOL = 1e-10


class CareSolveError(RuntimeError):
    """Newton-Kleinman failed to reach the residual tolerance."""


def sym_eig(A: np.ndarray, sym_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, orthonormal eigenvectors as columns).
    Raises ValueError if A is not symmetric within sym_tol (scaled by the
    magnitude of A).
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 0.0)
    if A.size and float(np.max(np.abs(A - A.T))) > sym_tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    if n == 1:
        return A[0].copy(), np.ones((1, 1))

    B = 0.5 * (A + A.T)
    V = np.eye(n)
    norm_a = max(float(np.linalg.norm(B)), 1e-300)
    for _ in range(60):  # cyclic sweeps; quadratic convergence in practice
        off = np.sqrt(np.sum(np.tril(B, -1) ** 2) * 2.0)
        if off <= 1e-12 * norm_a:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = B[p, q]
                if abs(apq) <= 1e-18 * norm_a:
                    continue
                # Jacobi rotation annihilating B[p, q]; with the row-update
                # convention below the stable root carries a minus sign
                theta = 0.5 * (B[q, q] - B[p, p]) / apq
                t = -np.sign(theta) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                B[[p, q], :] = rot @ B[[p, q], :]
                B[:, [p, q]] = B[:, [p, q]] @ rot.T
                V[:, [p, q]] = V[:, [p, q]] @ rot.T
                B[p, q] = B[q, p] = 0.0
    w = np.diag(B).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def is_spd(A: np.ndarray, tol: float = 0.0) -> bool:
    """True when A is symmetric positive definite (smallest eigenvalue > tol)."""
    try:
        w, _ = sym_eig(A)
    except ValueError:
        return False
    return bool(w[0] > tol)


def care_residual(dyn: OutputDynamics, P: np.ndarray, Q: np.ndarray) -> float:
    """Frobenius norm of F'P + PF - PGG'P + Q."""
    F, G = dyn.F, dyn.G
    return float(np.linalg.norm(F.T @ P + P @ F - P @ G @ G.T @ P + Q))


def scaled_care_residual(dyn: OutputDynamics, P_eps: np.ndarray, Q_eps: np.ndarray,
                         eps: float) -> float:
    """Frobenius norm of the epsilon-scaled Riccati identity residual."""
    F, G = dyn.F, dyn.G
    R = F.T @ P_eps + P_eps @ F - (1.0 / eps) * P_eps @ G @ G.T @ P_eps + (1.0 / eps) * Q_eps
    return float(np.linalg.norm(R))


def closed_form_identity_p(dims: OutputDims) -> np.ndarray:
    """Exact CARE solution for Q = I.

    The (F, G) structure decouples into k1 scalar integrators (P block = 1)
    and k2 double integrators (P block = [[sqrt3, 1], [1, sqrt3]]), so the
    solution is assembled blockwise.  Used as the Newton-Kleinman seed.
    """
    k1, k2 = dims.k1, dims.k2
    n = dims.n_eta
    P = np.zeros((n, n))
    P[:k1, :k1] = np.eye(k1)
    for i in range(k2):
        a, b = k1 + i, k1 + k2 + i  # (y2_i, dy2_i) index pair
        P[a, a] = SQRT3
        P[b, b] = SQRT3
        P[a, b] = P[b, a] = 1.0
    return P


def solve_lyapunov(A: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Solve A'X + XA = -C for symmetric X by Kronecker vectorization."""
    n = A.shape[0]
    eye = np.eye(n)
    lhs = np.kron(A.T, eye) + np.kron(eye, A.T)
    X = np.linalg.solve(lhs, -C.reshape(-1)).reshape(n, n)
    return 0.5 * (X + X.T)


def newton_kleinman_iterates(dyn: OutputDynamics, Q: np.ndarray,
                             max_iter: int = 100) -> Iterator[np.ndarray]:
    """Yield successive Newton-Kleinman iterates P_i (all stabilizing)."""
    F, G = dyn.F, dyn.G
    K = G.T @ closed_form_identity_p(dyn.dims)
    for _ in range(max_iter):
        A_cl = F - G @ K
        P = solve_lyapunov(A_cl, Q + K.T @ K)
        K = G.T @ P
        yield P


def solve_care(dyn: OutputDynamics, Q: np.ndarray, tol: float = RESIDUAL_TOL,
               max_iter: int = 100) -> np.ndarray:
    """Solve the CARE for (F, G) and SPD Q; returns the stabilizing P.

    Iterates past tol down to the round-off floor: the epsilon-scaled
    identity downstream amplifies this residual by up to 1/eps^3, so the
    solve must be as exact as the arithmetic allows.  Raises ValueError
    for a non-SPD Q and CareSolveError on non-convergence within max_iter.
    """
    Q = np.asarray(Q, dtype=float)
    n = dyn.dims.n_eta
    if Q.shape != (n, n):
        raise ValueError(f"Q has shape {Q.shape}, expected ({n}, {n})")
    if not is_spd(Q):
        raise ValueError("Q must be symmetric positive definite")
    floor = 1e-15 * max(1.0, float(np.linalg.norm(Q)))
    prev_res = np.inf
    for P in newton_kleinman_iterates(dyn, Q, max_iter=max_iter):
        res = care_residual(dyn, P, Q)
        at_floor = res <= floor or res >= 0.25 * prev_res
        prev_res = res
        if res <= tol and at_floor:
            cl_eigs = np.linalg.eigvals(dyn.F - dyn.G @ dyn.G.T @ P)
            if np.max(cl_eigs.real) >= 0.0:
                raise CareSolveError("converged P is not stabilizing")
            if not is_spd(P):
                raise CareSolveError("converged P is not positive definite")
            return P
    raise CareSolveError(f"no convergence to residual {tol:g} within {max_iter} iterations")


def scaling_matrix(dims: OutputDims, eps: float) -> np.ndarray:
    """The block scaling M = diag(I_k1, (1/eps) I_k2, I_k2)."""
    if not (0.0 < eps <= 1.0):
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    d = np.concatenate([np.ones(dims.k1), np.full(dims.k2, 1.0 / eps), np.ones(dims.k2)])
    return np.diag(d)


def scale_epsilon(P: np.ndarray, Q: np.ndarray, dims: OutputDims,
                  eps: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (M, P_eps, Q_eps) with P_eps = M P M and Q_eps = M Q M."""
    M = scaling_matrix(dims, eps)
    return M, M @ P @ M, M @ Q @ M


@dataclass(frozen=True)
class ResClfCertificate:
    """RES-CLF certificate: scaled Riccati data plus the Def.-2 constants."""

    dims: OutputDims
    eps: float
    P: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)
    M: np.ndarray = field(repr=False)
    P_eps: np.ndarray = field(repr=False)
    Q_eps: np.ndarray = field(repr=False)
    gamma: float
    c1: float
    c2: float
    c3: float
    care_residual: float
    scaled_residual: float

    @property
    def rate(self) -> float:
        """Guaranteed exponential decrease rate gamma/eps of V_eps."""
        return self.gamma / self.eps

    def to_dict(self) -> dict:
        return {
            "k1": self.dims.k1,
            "k2": self.dims.k2,
            "eps": self.eps,
            "P": self.P.tolist(),
            "Q": self.Q.tolist(),
            "M": np.diag(self.M).tolist(),
            "P_eps": self.P_eps.tolist(),
            "Q_eps": self.Q_eps.tolist(),
            "gamma": self.gamma,
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "care_residual": self.care_residual,
            "scaled_residual": self.scaled_residual,
        }

    @staticmethod
    def from_dict(data: dict) -> "ResClfCertificate":
        dims = OutputDims(k1=int(data["k1"]), k2=int(data["k2"]))
        return ResClfCertificate(
            dims=dims,
            eps=float(data["eps"]),
            P=np.asarray(data["P"], dtype=float),
            Q=np.asarray(data["Q"], dtype=float),
            M=np.diag(np.asarray(data["M"], dtype=float)),
            P_eps=np.asarray(data["P_eps"], dtype=float),
            Q_eps=np.asarray(data["Q_eps"], dtype=float),
            gamma=float(data["gamma"]),
            c1=float(data["c1"]),
            c2=float(data["c2"]),
            c3=float(data["c3"]),
            care_residual=float(data["care_residual"]),
            scaled_residual=float(data["scaled_residual"]),
        )


def certificate(dyn: OutputDynamics, Q: np.ndarray, eps: float) -> ResClfCertificate:
    """Solve, scale, and package the full RES-CLF certificate.

    Validates the certificate invariants: both residuals within tolerance,
    gamma > 0, and gamma*P <= Q up to 1e-12 eigenvalue slack.
    """
    Q = np.asarray(Q, dtype=float)
    P = solve_care(dyn, Q)
    M, P_eps, Q_eps = scale_epsilon(P, Q, dyn.dims, eps)
    w_p, _ = sym_eig(P)
    w_q, _ = sym_eig(Q)
    gamma = float(w_q[0] / w_p[-1])
    res = care_residual(dyn, P, Q)
    res_eps = scaled_care_residual(dyn, P_eps, Q_eps, eps)
    if res > RESIDUAL_TOL or res_eps > RESIDUAL_TOL:
        raise CareSolveError(f"certificate residuals out of tolerance: {res:g}, {res_eps:g}")
    if gamma <= 0.0:
        raise CareSolveError("gamma must be positive")
    w_gap, _ = sym_eig(Q - gamma * P)
    if w_gap[0] < -1e-12:
        raise CareSolveError(f"gamma*P <= Q violated: min eig {w_gap[0]:g}")
    return ResClfCertificate(
        dims=dyn.dims, eps=float(eps), P=P, Q=Q, M=M, P_eps=P_eps, Q_eps=Q_eps,
        gamma=gamma, c1=float(w_p[0]), c2=float(w_p[-1]), c3=gamma,
        care_residual=res, scaled_residual=res_eps,
    )
