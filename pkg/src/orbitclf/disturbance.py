"""Bounded disturbance signals d(t) and their supremum norms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

_MASK64 = (1 << 64) - 1

KINDS = ("zero", "constant", "sinusoid", "piecewise_constant_random", "phase_error_driven")


def _splitmix64(x: int) -> int:
    # counter-based mixer: identical output for identical (seed, counter) on any platform
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def _unit01(seed: int, block: int, lane: int) -> float:
    x = _splitmix64((seed & _MASK64) ^ _splitmix64(block + 1) ^ _splitmix64((lane + 1) << 20))
    return (x >> 11) / float(1 << 53)


@dataclass(frozen=True)
class DisturbanceSignal:
    """One of the disturbance kinds, with an exactly known sup norm where analytic.

    For "piecewise_constant_random" each dwell block holds a fixed vector of
    Euclidean norm exactly `amplitude`, with direction derived from a
    counter-based PRNG so sampling is pure in t and bit-reproducible.  For
    "phase_error_driven" the signal models a phase-estimate error
    e(t) = amplitude * sin(2 pi frequency t); the induced input disturbance is
    state-dependent and is attached by the mech closed loop as `evaluator`.
    """

    kind: str
    dim: int
    amplitude: float = 0.0
    frequency: float = 1.0
    dwell: float = 0.5
    seed: int = 0
    evaluator: Callable[[float], np.ndarray] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown disturbance kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("signal dimension must be at least 1")
        if self.kind == "piecewise_constant_random" and self.dwell <= 0.0:
            raise ValueError("dwell time must be positive")

    def _direction(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[0] = 1.0
        return v

    def _block_vector(self, block: int) -> np.ndarray:
        raw = np.array([2.0 * _unit01(self.seed, block, j) - 1.0 for j in range(self.dim)])
        nrm = float(np.linalg.norm(raw))
        if nrm < 1e-12:
            return self.amplitude * self._direction()
        return (self.amplitude / nrm) * raw

    def phase_error(self, t: float) -> float:
        """The scalar phase error e(t) for the phase_error_driven kind."""
        if self.kind != "phase_error_driven":
            raise ValueError("phase_error is only defined for the phase_error_driven kind")
        return self.amplitude * float(np.sin(2.0 * np.pi * self.frequency * t))


def sample(signal: DisturbanceSignal, t: float) -> np.ndarray:
    """Evaluate d(t); pure and deterministic given the signal's seed."""
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if signal.kind == "zero":
        return np.zeros(signal.dim)
    if signal.kind == "constant":
        return signal.amplitude * signal._direction()
    if signal.kind == "sinusoid":
        return (signal.amplitude * np.sin(2.0 * np.pi * signal.frequency * t)) * signal._direction()
    if signal.kind == "piecewise_constant_random":
        return signal._block_vector(int(t / signal.dwell))
    if signal.evaluator is None:
        raise ValueError("phase_error_driven signal has no attached evaluator; "
                         "it is produced by the mech closed loop")
    return np.asarray(signal.evaluator(t), dtype=float)


def sup_norm(signal: DisturbanceSignal, horizon: float) -> float:
    """Essential sup of ||d(t)|| on [0, horizon].

    Exact for the four analytic kinds; for phase_error_driven the attached
    evaluator is sampled on dyadically refined grids until the maximum is
    stable to 1e-6.
    """
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    if signal.kind == "zero":
        return 0.0
    if signal.kind in ("constant", "piecewise_constant_random"):
        return abs(signal.amplitude)
    if signal.kind == "sinusoid":
        # the sup over t >= 0 is the amplitude; attained on any horizon
        # covering a quarter period, approached otherwise
        if horizon * signal.frequency >= 0.25:
            return abs(signal.amplitude)
        return abs(signal.amplitude * np.sin(2.0 * np.pi * signal.frequency * horizon))
    if signal.evaluator is None:
        raise ValueError("phase_error_driven signal has no attached evaluator")
    n = 256
    prev = -np.inf
    for _ in range(16):
        ts = np.linspace(0.0, horizon, n + 1)
        cur = max(float(np.linalg.norm(signal.evaluator(t))) for t in ts)
        if abs(cur - prev) <= 1e-6 * max(1.0, cur):
            return cur
        prev = cur
        n *= 2
    return prev
