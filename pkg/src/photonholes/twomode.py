"""
Two-mode states, the beamsplitter, loss, and joint photon-number statistics.

Beamsplitter convention (creation operators, transmissivity ``t``)::

    a^dag -> sqrt(t) c^dag + sqrt(1-t) d^dag
    b^dag -> sqrt(1-t) c^dag - sqrt(t) d^dag

which at ``t = 1/2`` is the real symmetric map a -> (c+d)/sqrt2,
b -> (c-d)/sqrt2. With this convention a coherent input |alpha>_a splits
into |alpha/sqrt2>_c |alpha/sqrt2>_d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.stats import binom

from .fock import FockVector, log_factorial

__all__ = [
    "TwoModeState",
    "JointDistribution",
    "BeamsplitterSpec",
    "BALANCED",
    "tensor",
    "beamsplitter_block",
    "beamsplitter",
    "amplitude",
    "coherent_only_amplitude",
    "joint_distribution",
    "thinning_matrix",
    "loss_channel",
    "mean_photon",
]


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Joint amplitudes ``grid[n1, n2]`` of a pure two-mode state."""

    grid: np.ndarray
    tail_bound: float = 0.0
    labels: tuple[str, str] = ("a", "b")

    def __post_init__(self):
        grid = np.array(self.grid, dtype=complex)
        if grid.ndim != 2:
            raise ValueError("grid must be two-dimensional")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)

    @property
    def cutoffs(self) -> tuple[int, int]:
        return self.grid.shape[0] - 1, self.grid.shape[1] - 1

    def norm(self) -> float:
        return float(np.sum(np.abs(self.grid) ** 2))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Joint photon-number probabilities ``probs[n1, n2]``."""

    probs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 2:
            raise ValueError("probs must be two-dimensional")
        if np.any(probs < 0):
            raise ValueError("probabilities must be nonnegative")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def cutoffs(self) -> tuple[int, int]:
        return self.probs.shape[0] - 1, self.probs.shape[1] - 1

    def total(self) -> float:
        return float(self.probs.sum())

    def marginal(self, mode: int) -> np.ndarray:
        if mode == 1:
            return self.probs.sum(axis=1)
        if mode == 2:
            return self.probs.sum(axis=0)
        raise ValueError(f"mode must be 1 or 2, got {mode}")

    @classmethod
    def product(cls, p1, p2) -> "JointDistribution":
        return cls(np.outer(np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)))


@dataclass(frozen=True)
class BeamsplitterSpec:
    transmissivity: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.transmissivity <= 1.0):
            raise ValueError(f"transmissivity must lie in [0, 1], got {self.transmissivity}")


BALANCED = BeamsplitterSpec(0.5)


def tensor(a: FockVector, b: FockVector) -> TwoModeState:
    return TwoModeState(np.outer(a.amplitudes, b.amplitudes), a.tail_bound + b.tail_bound, ("a", "b"))


@lru_cache(maxsize=512)
def _block(n: int, transmissivity: float) -> np.ndarray:
    theta = math.atan2(math.sqrt(1.0 - transmissivity), math.sqrt(transmissivity))
    j = np.arange(n)
    off = np.sqrt((j + 1.0) * (n - j))
    # a^dag b - b^dag a restricted to the sector, basis |j, n-j>
    generator = np.diag(off, -1) - np.diag(off, 1)
    block = expm(theta * generator)
    # the rotation is followed by d^dag -> -d^dag
    k = np.arange(n + 1)
    block *= np.where((n - k) % 2 == 0, 1.0, -1.0)[:, None]
    block.setflags(write=False)
    return block


def beamsplitter_block(n: int, spec: BeamsplitterSpec = BALANCED) -> np.ndarray:
    """Real orthogonal matrix acting on the ``n1 + n2 = n`` sector.

    ``U[k, j]`` is the amplitude of output ``|k, n-k>_{cd}`` given input
    ``|j, n-j>_{ab}``. Computed as the exponential of the tridiagonal
    rotation generator; a direct binomial expansion loses digits to
    alternating sums once ``n`` exceeds a few dozen.
    """
    if n < 0:
        raise ValueError("photon number must be nonnegative")
    return _block(int(n), float(spec.transmissivity))


def beamsplitter(state: TwoModeState, spec: BeamsplitterSpec = BALANCED) -> TwoModeState:
    c1, c2 = state.cutoffs
    n_max = c1 + c2
    grid = state.grid
    out = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(n_max + 1):
        j = np.arange(max(0, n - c2), min(n, c1) + 1)
        x = grid[j, n - j]
        if not np.any(x):
            continue
        y = beamsplitter_block(n, spec)[:, j] @ x
        k = np.arange(n + 1)
        out[k, n - k] = y
    return TwoModeState(out, state.tail_bound, ("c", "d"))


def amplitude(state: TwoModeState, n1: int, n2: int) -> complex:
    c1, c2 = state.cutoffs
    if not (0 <= n1 <= c1 and 0 <= n2 <= c2):
        raise IndexError(f"({n1}, {n2}) lies outside the state cutoffs ({c1}, {c2})")
    return complex(state.grid[n1, n2])


def coherent_only_amplitude(magnitude: float, phase: float, n1: int, n2: int) -> complex:
    """Closed-form ``<n1, n2|`` amplitude of a lone coherent input after the 50/50 split.

    Uses this module's convention, under which each output carries
    ``alpha / sqrt(2)``.
    """
    n = n1 + n2
    if magnitude == 0.0:
        return 1.0 + 0j if n == 0 else 0j
    log_mag = (
        -0.5 * magnitude**2
        + n * (math.log(magnitude) - 0.5 * math.log(2.0))
        - 0.5 * (log_factorial(n1) + log_factorial(n2))
    )
    return complex(math.exp(log_mag) * np.exp(1j * n * phase))


def joint_distribution(state: TwoModeState) -> JointDistribution:
    return JointDistribution(np.abs(state.grid) ** 2, state.tail_bound)


def thinning_matrix(n_max: int, eta: float) -> np.ndarray:
    """``B[k, n]`` = probability that ``k`` of ``n`` photons survive transmission ``eta``."""
    if not (0.0 <= eta <= 1.0):
        raise ValueError(f"efficiency must lie in [0, 1], got {eta}")
    k = np.arange(n_max + 1)[:, None]
    n = np.arange(n_max + 1)[None, :]
    return np.where(k <= n, binom.pmf(k, n, eta), 0.0)


def loss_channel(dist: JointDistribution, eta1: float, eta2: float) -> JointDistribution:
    """Independent binomial thinning of each mode."""
    c1, c2 = dist.cutoffs
    probs = thinning_matrix(c1, eta1) @ dist.probs @ thinning_matrix(c2, eta2).T
    return JointDistribution(np.clip(probs, 0.0, None), dist.tail_bound)


def mean_photon(dist: JointDistribution, mode: int) -> float:
    marg = dist.marginal(mode)
    return float(np.dot(np.arange(marg.size), marg))
