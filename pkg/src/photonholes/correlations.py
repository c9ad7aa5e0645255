"""Equal-time Glauber correlation functions from photon-number statistics.

Normal-ordered intensity moments equal factorial moments of the
photon-number distribution, so every quantity here is a finite sum over
probabilities. For any state with a nonnegative, separable P-function the
normalized moments are at least 1; values below 1 certify nonclassicality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson

from .detection import DetectorArray, coincidence_probability
from .errors import ZeroMeanError
from .fock import DEFAULT_POLICY, CutoffPolicy, coherent_cutoff
from .twomode import JointDistribution, mean_photon

__all__ = [
    "CorrelationReport",
    "falling_factorial",
    "falling_moment",
    "g_n",
    "g_mn",
    "classical_floor",
    "poisson_mixture",
]


@dataclass(frozen=True)
class CorrelationReport:
    order: tuple[int, int]
    value: float
    label: str = ""

    @property
    def classical_margin(self) -> float:
        """``value - 1``; negative means the classical bound is violated."""
        return self.value - 1.0

    @property
    def nonclassical(self) -> bool:
        return self.value < 1.0


def falling_factorial(n, order: int) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    out = np.ones_like(n)
    for i in range(order):
        out = out * (n - i)
    return out


def falling_moment(dist, order: int) -> float:
    """``sum_n P(n) n (n-1) ... (n-order+1)``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    p = np.asarray(dist, dtype=float)
    return float(np.dot(p, falling_factorial(np.arange(p.size), order)))


def g_n(dist, n: int, label: str = "") -> CorrelationReport:
    """Single-mode ``g^(n)(0)``: the n-th factorial moment over the mean to the n."""
    if n < 1:
        raise ValueError("correlation order must be at least 1")
    mean = falling_moment(dist, 1)
    if mean <= 0:
        raise ZeroMeanError("g^(n) is undefined for a zero-mean distribution")
    return CorrelationReport((n, 0), falling_moment(dist, n) / mean**n, label)


def g_mn(dist: JointDistribution, m: int, n: int, label: str = "") -> CorrelationReport:
    """Two-mode ``g^(m,n)(x1, x2; 0)``; reduces to ``g^(m)`` of a marginal when one order is 0."""
    if m < 0 or n < 0 or m + n == 0:
        raise ValueError("orders must be nonnegative and not both zero")
    mean1 = mean_photon(dist, 1) if m else 1.0
    mean2 = mean_photon(dist, 2) if n else 1.0
    if mean1 <= 0 or mean2 <= 0:
        raise ZeroMeanError(f"g^({m},{n}) needs positive mean photon numbers in the measured modes")
    c1, c2 = dist.cutoffs
    f1 = falling_factorial(np.arange(c1 + 1), m)
    f2 = falling_factorial(np.arange(c2 + 1), n)
    numerator = float(f1 @ dist.probs @ f2)
    return CorrelationReport((m, n), numerator / (mean1**m * mean2**n), label)


def _poisson_reference(mean: float, min_cutoff: int, policy: CutoffPolicy) -> np.ndarray:
    cutoff = max(min_cutoff, coherent_cutoff(mean, policy))
    return poisson.pmf(np.arange(cutoff + 1), mean)


def classical_floor(
    dist: JointDistribution,
    m: int,
    n: int,
    arrays: tuple[DetectorArray | None, DetectorArray | None] | None = None,
    policy: CutoffPolicy = DEFAULT_POLICY,
) -> float:
    """Smallest signal a classical state with the same mean photon numbers produces.

    Without ``arrays`` this is ``mean1**m * mean2**n``, the floor for the
    factorial moment entering ``g^(m,n)``. With ``arrays`` the floor is
    expressed in coincidence-probability units: the ``(m, n)`` click
    probability of a product of Poissonians with matched means seen through
    the same detectors, i.e. the level at which ``g^(m,n) = 1``.
    """
    mean1 = mean_photon(dist, 1)
    mean2 = mean_photon(dist, 2)
    if arrays is None:
        return (mean1**m if m else 1.0) * (mean2**n if n else 1.0)
    c1, c2 = dist.cutoffs
    reference = JointDistribution.product(
        _poisson_reference(mean1, c1, policy), _poisson_reference(mean2, c2, policy)
    )
    return coincidence_probability(reference, m, n, arrays[0], arrays[1])


def poisson_mixture(means, weights, max_order: int = 0, policy: CutoffPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Photon-number distribution of a finite mixture of Poissonians.

    The cutoff is widened by ``max_order`` so that factorial moments up to
    that order keep a relative truncation error below ``policy.tail_epsilon``:
    the tail of the k-th factorial moment of Poisson(mu) is ``mu**k`` times an
    ordinary tail shifted by k.
    """
    means, weights = np.asarray(means, dtype=float), np.asarray(weights, dtype=float)
    if means.shape != weights.shape or means.ndim != 1 or means.size == 0:
        raise ValueError("means and weights must be matching nonempty vectors")
    if np.any(means < 0) or np.any(weights < 0) or not np.isclose(weights.sum(), 1.0):
        raise ValueError("means must be nonnegative and weights a probability vector")
    cutoff = coherent_cutoff(float(means.max()), policy) + max_order
    n = np.arange(cutoff + 1)
    return weights @ poisson.pmf(n[None, :], means[:, None])
