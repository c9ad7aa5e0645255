"""
Multiplexed click detectors.

An array spreads the incoming photons evenly over ``k`` on/off detectors,
each with efficiency ``eta``; the outcome is the number of detectors that
fired. ``k=None`` stands for a photon-number-resolving detector (the
``k -> infinity`` limit), whose outcome is the number of detected photons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.signal import find_peaks

from .twomode import JointDistribution, thinning_matrix

__all__ = [
    "DetectorArray",
    "click_matrix",
    "click_probability",
    "coincidence_probability",
    "visibility",
    "find_minima",
    "bound_violation_sigma",
]


@dataclass(frozen=True)
class DetectorArray:
    k: int | None = 1
    eta: float = 1.0

    def __post_init__(self):
        if self.k is not None and (int(self.k) != self.k or self.k < 1):
            raise ValueError(f"detector count must be a positive integer, got {self.k}")
        if not (0.0 <= self.eta <= 1.0):
            raise ValueError(f"efficiency must lie in [0, 1], got {self.eta}")

    @classmethod
    def resolving(cls, eta: float = 1.0) -> "DetectorArray":
        return cls(None, eta)

    @property
    def max_clicks(self) -> float:
        return math.inf if self.k is None else self.k


@lru_cache(maxsize=256)
def _click_matrix(k: int | None, eta: float, n_max: int) -> np.ndarray:
    if k is None:
        out = thinning_matrix(n_max, eta)
        out.setflags(write=False)
        return out
    size = min(k, n_max) + 1
    c = np.arange(size)
    # Markov chain over the number of fired detectors, one photon at a time
    stay = (1.0 - eta) + eta * c / k
    advance = eta * (k - c) / k
    out = np.zeros((size, n_max + 1))
    p = np.zeros(size)
    p[0] = 1.0
    out[:, 0] = p
    for n in range(1, n_max + 1):
        nxt = stay * p
        nxt[1:] += advance[:-1] * p[:-1]
        p = nxt
        out[:, n] = p
    out.setflags(write=False)
    return out


def click_matrix(array: DetectorArray, n_max: int) -> np.ndarray:
    """``M[c, n]`` = probability of ``c`` clicks given ``n`` incident photons.

    Rows run over ``c = 0..min(k, n_max)``; larger click numbers are impossible.
    """
    return _click_matrix(array.k, float(array.eta), int(n_max))


def click_probability(c: int, n: int, array: DetectorArray) -> float:
    """Probability that ``n`` photons produce exactly ``c`` clicks on ``array``.

    Equal to ``C(k,c) sum_j (-1)^j C(c,j) (eta (c-j)/k + 1 - eta)^n``, but
    evaluated by propagating the occupancy distribution photon by photon,
    which stays nonnegative and gives exact zeros for impossible outcomes.
    """
    if c < 0 or n < 0:
        raise ValueError("click and photon numbers must be nonnegative")
    if c > n or c > array.max_clicks:
        return 0.0
    return float(click_matrix(array, n)[c, n])


def _click_row(array: DetectorArray | None, c: int, n_max: int) -> np.ndarray:
    if array is None:
        return np.ones(n_max + 1)
    m = click_matrix(array, n_max)
    if c >= m.shape[0]:
        return np.zeros(n_max + 1)
    return m[c]


def coincidence_probability(
    dist: JointDistribution,
    c1: int,
    c2: int,
    array1: DetectorArray | None,
    array2: DetectorArray | None,
) -> float:
    """Probability of ``c1`` clicks on mode 1 and ``c2`` on mode 2.

    Passing ``None`` for an array leaves that mode unmonitored, i.e. it is
    summed over regardless of ``c``.
    """
    n1_max, n2_max = dist.cutoffs
    row1 = _click_row(array1, c1, n1_max)
    row2 = _click_row(array2, c2, n2_max)
    return float(row1 @ dist.probs @ row2)


def visibility(curve) -> float:
    curve = np.asarray(curve, dtype=float)
    if curve.size == 0:
        raise ValueError("visibility of an empty curve")
    if np.any(curve < 0):
        raise ValueError("visibility needs a nonnegative curve")
    hi, lo = curve.max(), curve.min()
    if hi + lo == 0:
        return 0.0
    return float((hi - lo) / (hi + lo))


def find_minima(curve, periodic: bool = False, rel_prominence: float = 1e-6) -> np.ndarray:
    """Indices of local minima whose prominence exceeds ``rel_prominence * max(curve)``.

    With ``periodic=True`` the curve is treated as one full period, so a
    minimum may sit on the first or last sample.
    """
    curve = np.asarray(curve, dtype=float)
    n = curve.size
    if n < 3:
        return np.zeros(0, dtype=int)
    threshold = rel_prominence * np.abs(curve).max()
    if threshold == 0:
        return np.zeros(0, dtype=int)
    if periodic:
        tiled = np.concatenate([curve, curve, curve])
        idx, _ = find_peaks(-tiled, prominence=threshold)
        idx = idx[(idx >= n) & (idx < 2 * n)] - n
    else:
        idx, _ = find_peaks(-curve, prominence=threshold)
    return np.sort(idx)


def bound_violation_sigma(probability: float, classical_floor: float, pulses: int) -> float:
    """One-sided shot-noise significance of a coincidence deficit below the classical floor.

    With ``lam = probability * pulses`` and ``lam_f = classical_floor * pulses``
    the result is ``(lam_f - lam) / sqrt(lam_f)`` when ``lam < lam_f``, else 0.
    """
    if pulses <= 0:
        raise ValueError("pulses must be positive")
    if not (0.0 <= probability <= 1.0 and 0.0 <= classical_floor <= 1.0):
        raise ValueError("probability and classical_floor must lie in [0, 1]")
    expected = probability * pulses
    floor = classical_floor * pulses
    if expected >= floor:
        return 0.0
    return (floor - expected) / math.sqrt(floor)
