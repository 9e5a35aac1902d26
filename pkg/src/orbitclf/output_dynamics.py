"""Structured linear output dynamics and the eta coordinate layout.

The transverse (output) coordinates are stacked as eta = (y1, y2, dy2):
k1 velocity outputs with relative degree one, followed by k2 pose outputs
and their rates with relative degree two.  Every other module relies on
this ordering, so it is fixed here and nowhere else.  The drift/input
pair (F, G) is the block matrix realization of the feedback-linearized
output dynamics

    d/dt eta = F eta + G mu,

where F carries a single identity block mapping dy2 into the y2 slot and
G injects mu into the y1 and dy2 rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class OutputDims:
    """Output dimensions: k1 velocity outputs, k2 pose outputs."""

    k1: int
    k2: int

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError(f"output counts must be nonnegative, got k1={self.k1}, k2={self.k2}")
        if self.k1 + self.k2 == 0:
            raise ValueError("k1 + k2 must be at least 1")

    @property
    def n_eta(self) -> int:
        """Dimension of the eta vector, k1 + 2*k2."""
        return self.k1 + 2 * self.k2

    @property
    def n_mu(self) -> int:
        """Dimension of the auxiliary input mu, k1 + k2."""
        return self.k1 + self.k2


@dataclass(frozen=True)
class OutputDynamics:
    """The (F, G) pair of the linear output dynamics for given dims."""

    dims: OutputDims
    F: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class EtaState:
    """eta split into the velocity block y1 and the pose block eta2 = (y2, dy2)."""

    y1: np.ndarray
    eta2: np.ndarray

    @property
    def y2(self) -> np.ndarray:
        k2 = self.eta2.shape[0] // 2
        return self.eta2[:k2]

    @property
    def dy2(self) -> np.ndarray:
        k2 = self.eta2.shape[0] // 2
        return self.eta2[k2:]


def build_fg(dims: OutputDims) -> OutputDynamics:
    """Assemble the block matrices F (n x n) and G (n x (k1+k2)).

    F is nilpotent (F @ F = 0) and (F, G) is a controllable pair for every
    valid dims.
    """
    k1, k2 = dims.k1, dims.k2
    n = dims.n_eta
    F = np.zeros((n, n))
    if k2 > 0:
        F[k1:k1 + k2, k1 + k2:] = np.eye(k2)
    G = np.zeros((n, dims.n_mu))
    if k1 > 0:
        G[:k1, :k1] = np.eye(k1)
    if k2 > 0:
        G[k1 + k2:, k1:] = np.eye(k2)
    return OutputDynamics(dims=dims, F=F, G=G)


def split_eta(eta: np.ndarray, dims: OutputDims) -> EtaState:
    """Split a flat eta vector into (y1, eta2) per the fixed layout."""
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (dims.n_eta,):
        raise ValueError(f"eta has length {eta.shape}, expected ({dims.n_eta},)")
    return EtaState(y1=eta[:dims.k1].copy(), eta2=eta[dims.k1:].copy())


def merge_eta(state: EtaState) -> np.ndarray:
    """Inverse of split_eta; round-trips exactly."""
    return np.concatenate([state.y1, state.eta2])


def canonical_embed(y1: np.ndarray, z: np.ndarray, dims: OutputDims) -> tuple[np.ndarray, np.ndarray]:
    """Embed a partial-zero-dynamics point (y1, z) into full state as (y1, 0, 0, z)."""
    y1 = np.asarray(y1, dtype=float)
    if y1.shape != (dims.k1,):
        raise ValueError(f"y1 has shape {y1.shape}, expected ({dims.k1},)")
    eta = np.concatenate([y1, np.zeros(2 * dims.k2)])
    return eta, np.asarray(z, dtype=float).copy()
