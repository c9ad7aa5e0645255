"""
Single-mode states in a truncated photon-number basis.

Every constructor picks the smallest cutoff whose analytic tail bound is
below ``CutoffPolicy.tail_epsilon`` and records that bound on the returned
:class:`FockVector`. Factorials are handled in log space so that amplitudes
with photon numbers well beyond 20 never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import CutoffError

__all__ = [
    "CutoffPolicy",
    "DEFAULT_POLICY",
    "FockVector",
    "log_factorial",
    "coherent_cutoff",
    "coherent_state",
    "squeezed_vacuum",
    "number_state",
    "thermal_distribution",
]

_TABLE_SIZE = 1024
_LOG_FACTORIAL_TABLE = gammaln(np.arange(_TABLE_SIZE, dtype=float) + 1.0)
_LOG_FACTORIAL_TABLE.setflags(write=False)


@dataclass(frozen=True)
class CutoffPolicy:
    """Truncation rule shared by all state constructors.

    Parameters
    ----------
    tail_epsilon : float
        Largest probability weight allowed to fall outside the cutoff.
    hard_max : int
        Ceiling on any cutoff. A state whose expected photon number exceeds
        ``hard_max / 4`` is rejected outright.
    """

    tail_epsilon: float = 1e-12
    hard_max: int = 128

    def __post_init__(self):
        if not (0.0 < self.tail_epsilon < 1.0):
            raise ValueError(f"tail_epsilon must lie in (0, 1), got {self.tail_epsilon}")
        if int(self.hard_max) != self.hard_max or self.hard_max < 0:
            raise ValueError(f"hard_max must be a nonnegative integer, got {self.hard_max}")

    def check_mean(self, mean: float, what: str) -> None:
        if 4.0 * mean > self.hard_max:
            raise CutoffError(
                f"{what}: expected photon number {mean:.4g} needs hard_max >= {4.0 * mean:.4g}, "
                f"but hard_max={self.hard_max}; lower the amplitude/squeezing or raise hard_max"
            )


DEFAULT_POLICY = CutoffPolicy()


@dataclass(frozen=True, eq=False)
class FockVector:
    """Pure single-mode state with amplitudes for n = 0..cutoff."""

    amplitudes: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0:
            raise ValueError("a FockVector needs at least the vacuum amplitude")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        """Squared norm, i.e. the total retained probability."""
        return float(np.sum(self.probabilities()))

    def mean_photon(self) -> float:
        return float(np.dot(np.arange(self.cutoff + 1), self.probabilities()))


def log_factorial(n):
    """Natural log of ``n!`` for a nonnegative integer or integer array."""
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("log_factorial is defined for n >= 0 only")
    if arr.ndim == 0:
        k = int(arr)
        return float(_LOG_FACTORIAL_TABLE[k]) if k < _TABLE_SIZE else float(gammaln(k + 1.0))
    arr = arr.astype(int)
    if arr.size and arr.max() >= _TABLE_SIZE:
        return gammaln(arr + 1.0)
    return _LOG_FACTORIAL_TABLE[arr]


def _poisson_tail_bound(mean: float, cutoff: int) -> float:
    """Chernoff bound on P(X > cutoff) for X ~ Poisson(mean)."""
    if mean == 0.0:
        return 0.0
    k = cutoff + 1
    if k <= mean:
        return 1.0
    log_bound = -mean + k * (1.0 + math.log(mean) - math.log(k))
    return min(1.0, math.exp(log_bound))


def coherent_cutoff(mean: float, policy: CutoffPolicy = DEFAULT_POLICY) -> int:
    """Smallest cutoff whose Poisson tail bound is below ``policy.tail_epsilon``."""
    cutoff = 0
    while _poisson_tail_bound(mean, cutoff) > policy.tail_epsilon:
        cutoff += 1
        if cutoff > policy.hard_max:
            raise CutoffError(
                f"coherent state with |alpha|^2={mean:.4g} cannot reach tail "
                f"{policy.tail_epsilon:g} within hard_max={policy.hard_max}"
            )
    return cutoff


def coherent_state(
    magnitude: float,
    phase: float = 0.0,
    policy: CutoffPolicy = DEFAULT_POLICY,
    min_cutoff: int = 0,
) -> FockVector:
    """Coherent state with complex amplitude ``magnitude * exp(1j * phase)``.

    Parameters
    ----------
    magnitude : float
        :math:`|\\alpha|`, nonnegative.
    phase : float
        Phase of :math:`\\alpha` in radians.
    policy : CutoffPolicy
        Truncation rule.
    min_cutoff : int
        Lower bound on the cutoff, e.g. to guarantee an amplitude of interest
        is represented even for very weak fields.

    Returns
    -------
    FockVector
    """
    if not math.isfinite(magnitude) or magnitude < 0:
        raise ValueError(f"magnitude must be finite and nonnegative, got {magnitude}")
    if not math.isfinite(phase):
        raise ValueError(f"phase must be finite, got {phase}")
    mean = magnitude**2
    policy.check_mean(mean, "coherent_state")
    cutoff = max(coherent_cutoff(mean, policy), int(min_cutoff))
    if cutoff > policy.hard_max:
        raise CutoffError(f"requested cutoff {cutoff} exceeds hard_max={policy.hard_max}")

    n = np.arange(cutoff + 1)
    amps = np.zeros(cutoff + 1, dtype=complex)
    if magnitude == 0.0:
        amps[0] = 1.0
    else:
        log_mag = -0.5 * mean + n * math.log(magnitude) - 0.5 * log_factorial(n)
        amps[:] = np.exp(log_mag) * np.exp(1j * phase * n)
    return FockVector(amps, _poisson_tail_bound(mean, cutoff))


def _squeezed_tail_bound(tanh_r: float, cosh_r: float, pairs: int) -> float:
    # |a_2m|^2 <= tanh^2m / cosh, summed geometrically over m > pairs
    if tanh_r == 0.0:
        return 0.0
    return min(1.0, tanh_r ** (2 * (pairs + 1)) * cosh_r)


def squeezed_vacuum(
    r: float,
    policy: CutoffPolicy = DEFAULT_POLICY,
    min_cutoff: int = 0,
) -> FockVector:
    """Single-mode squeezed vacuum with squeezing phase fixed to zero.

    Only even photon numbers are populated; odd amplitudes are exact zeros.
    """
    if not math.isfinite(r) or r < 0:
        raise ValueError(f"r must be finite and nonnegative, got {r}")
    policy.check_mean(math.sinh(r) ** 2, "squeezed_vacuum")
    t = math.tanh(r)
    cosh_r = math.cosh(r)
    pairs = 0
    while _squeezed_tail_bound(t, cosh_r, pairs) > policy.tail_epsilon:
        pairs += 1
        if 2 * pairs > policy.hard_max:
            raise CutoffError(
                f"squeezed vacuum with r={r:.4g} cannot reach tail "
                f"{policy.tail_epsilon:g} within hard_max={policy.hard_max}"
            )
    cutoff = max(2 * pairs, int(min_cutoff))
    if cutoff > policy.hard_max:
        raise CutoffError(f"requested cutoff {cutoff} exceeds hard_max={policy.hard_max}")
    pairs = cutoff // 2

    amps = np.zeros(cutoff + 1, dtype=complex)
    if t == 0.0:
        amps[0] = 1.0
        return FockVector(amps, 0.0)
    m = np.arange(pairs + 1)
    log_mag = (
        0.5 * log_factorial(2 * m)
        - m * math.log(2.0)
        - log_factorial(m)
        + m * math.log(t)
        - 0.5 * math.log(cosh_r)
    )
    amps[0::2] = np.where(m % 2 == 0, 1.0, -1.0) * np.exp(log_mag)
    return FockVector(amps, _squeezed_tail_bound(t, cosh_r, pairs))


def number_state(n: int, cutoff: int | None = None) -> FockVector:
    """The Fock state ``|n>`` padded to ``cutoff`` (default ``n``)."""
    if n < 0:
        raise ValueError("photon number must be nonnegative")
    cutoff = n if cutoff is None else cutoff
    if cutoff < n:
        raise ValueError(f"cutoff {cutoff} cannot hold |{n}>")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def thermal_distribution(
    nbar: float,
    policy: CutoffPolicy = DEFAULT_POLICY,
    min_cutoff: int = 0,
) -> np.ndarray:
    """Bose-Einstein photon-number distribution with mean ``nbar``."""
    if not math.isfinite(nbar) or nbar < 0:
        raise ValueError(f"nbar must be finite and nonnegative, got {nbar}")
    policy.check_mean(nbar, "thermal_distribution")
    ratio = nbar / (1.0 + nbar)
    if ratio == 0.0:
        cutoff = 0
    else:
        # tail above cutoff c is exactly ratio**(c + 1)
        cutoff = max(0, math.ceil(math.log(policy.tail_epsilon) / math.log(ratio)) - 1)
        if cutoff > policy.hard_max:
            raise CutoffError(
                f"thermal state with nbar={nbar:.4g} cannot reach tail "
                f"{policy.tail_epsilon:g} within hard_max={policy.hard_max}"
            )
    cutoff = max(cutoff, int(min_cutoff))
    n = np.arange(cutoff + 1)
    if ratio == 0.0:
        probs = (n == 0).astype(float)
    else:
        probs = np.exp(n * math.log(ratio) - math.log1p(nbar))
    return probs
