"""Phase scans of coincidence rates, mirroring the measured interference curves."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .correlations import classical_floor, g_mn
from .detection import DetectorArray, bound_violation_sigma, coincidence_probability, find_minima, visibility
from .errors import ConfigError
from .fock import DEFAULT_POLICY, CutoffPolicy, coherent_state, squeezed_vacuum
from .twomode import beamsplitter, joint_distribution, mean_photon, tensor

__all__ = [
    "ScanConfig",
    "ScanResult",
    "phase_grid",
    "output_distribution",
    "phase_scan",
    "FIG2_GAMMA",
    "FIG3_GAMMA",
    "fig2_config",
    "fig3_config",
]

FIG2_GAMMA = math.sqrt(3.0)
FIG3_GAMMA = 15.0 / (5.0 - math.sqrt(10.0))
PRESET_R = 0.2
PRESET_ETA = 0.125


def phase_grid(points: int, span: float = 2 * math.pi) -> np.ndarray:
    """``points`` evenly spaced phases covering ``[0, span)``."""
    if points < 1:
        raise ConfigError("a phase grid needs at least one point")
    return np.arange(points) * (span / points)


@dataclass(frozen=True)
class ScanConfig:
    """Phase-scan parameters.

    The coherent amplitude is given either as ``gamma`` (so that
    ``|alpha|^2 = gamma * r``) or directly as ``alpha``; fixing ``alpha``
    is how the squeezing is switched off without also dimming the laser.
    """

    n1: int
    n2: int
    gamma: float | None
    r: float
    detectors1: DetectorArray
    detectors2: DetectorArray | None
    phi_grid: np.ndarray = field(default_factory=lambda: phase_grid(128))
    pulses: int | None = None
    policy: CutoffPolicy = DEFAULT_POLICY
    workers: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        grid = np.asarray(self.phi_grid, dtype=float).reshape(-1)
        if grid.size == 0:
            raise ConfigError("phi_grid is empty")
        if np.any(np.diff(grid) <= 0):
            raise ConfigError("phi_grid must be strictly increasing")
        object.__setattr__(self, "phi_grid", grid)
        if self.n1 < 0 or self.n2 < 0:
            raise ConfigError("target click numbers must be nonnegative")
        if self.n1 > self.detectors1.max_clicks:
            raise ConfigError(f"n1={self.n1} exceeds the {self.detectors1.k} detectors on mode 1")
        if self.detectors2 is None:
            if self.n2 != 0:
                raise ConfigError("mode 2 is unmonitored, so n2 must be 0")
        elif self.n2 > self.detectors2.max_clicks:
            raise ConfigError(f"n2={self.n2} exceeds the {self.detectors2.k} detectors on mode 2")
        if (self.gamma is None) == (self.alpha is None):
            raise ConfigError("give exactly one of gamma and alpha")
        if self.gamma is not None and not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if self.alpha is not None and not (self.alpha >= 0 and math.isfinite(self.alpha)):
            raise ConfigError(f"alpha must be nonnegative, got {self.alpha}")
        if not (self.r >= 0 and math.isfinite(self.r)):
            raise ConfigError(f"r must be nonnegative, got {self.r}")
        if self.pulses is not None and self.pulses <= 0:
            raise ConfigError("pulses must be positive")

    @property
    def min_cutoff(self) -> int:
        # weak fields: the absolute tail bound alone would drop photon numbers
        # that carry the target coincidence and its higher-order background
        return 2 * (self.n1 + self.n2) + 4

    @property
    def magnitude(self) -> float:
        if self.alpha is not None:
            return self.alpha
        return math.sqrt(self.gamma * self.r)

    @property
    def periodic(self) -> bool:
        grid = self.phi_grid
        if grid.size < 3:
            return False
        step = np.diff(grid)
        return bool(np.allclose(step, step[0]) and math.isclose(grid[-1] - grid[0] + step[0], 2 * math.pi))


@dataclass(frozen=True, eq=False)
class ScanResult:
    config: ScanConfig
    phi: np.ndarray
    coincidence: np.ndarray
    singles1: np.ndarray
    singles2: np.ndarray
    g: np.ndarray
    floor: np.ndarray
    visibility: float
    minima: np.ndarray

    @property
    def minima_phases(self) -> np.ndarray:
        return self.phi[self.minima]

    @property
    def margins(self) -> np.ndarray:
        """``g - 1`` at each minimum; negative entries are nonclassical."""
        return self.g[self.minima] - 1.0

    def sigma_at_minima(self, pulses: int | None = None) -> np.ndarray:
        pulses = pulses or self.config.pulses
        if pulses is None:
            raise ConfigError("pulses not set")
        return np.array(
            [bound_violation_sigma(self.coincidence[i], self.floor[i], pulses) for i in self.minima]
        )

    def rows(self):
        for i in range(self.phi.size):
            yield (self.phi[i], self.coincidence[i], self.singles1[i], self.singles2[i], self.g[i], self.floor[i])


def output_distribution(
    magnitude: float, phi: float, r: float, policy: CutoffPolicy = DEFAULT_POLICY, min_cutoff: int = 0
):
    """Joint photon-number distribution behind the 50/50 splitter."""
    state = tensor(
        coherent_state(magnitude, phi, policy, min_cutoff),
        squeezed_vacuum(r, policy, min_cutoff),
    )
    return joint_distribution(beamsplitter(state))


def _scan_point(config: ScanConfig, phi: float):
    dist = output_distribution(config.magnitude, phi, config.r, config.policy, config.min_cutoff)
    arrays = (config.detectors1, config.detectors2)
    coincidence = coincidence_probability(dist, config.n1, config.n2, *arrays)
    floor = classical_floor(dist, config.n1, config.n2, arrays, config.policy)
    g = g_mn(dist, config.n1, config.n2).value
    return coincidence, mean_photon(dist, 1), mean_photon(dist, 2), g, floor


def phase_scan(config: ScanConfig) -> ScanResult:
    """Evaluate coincidences, singles and correlations across ``config.phi_grid``."""
    if config.workers and config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            points = list(pool.map(lambda p: _scan_point(config, p), config.phi_grid))
    else:
        points = [_scan_point(config, p) for p in config.phi_grid]
    coincidence, s1, s2, g, floor = (np.array(col) for col in zip(*points))
    return ScanResult(
        config=config,
        phi=config.phi_grid,
        coincidence=coincidence,
        singles1=s1,
        singles2=s2,
        g=g,
        floor=floor,
        visibility=visibility(coincidence),
        minima=find_minima(coincidence, periodic=config.periodic),
    )


def fig2_config(r: float = PRESET_R, eta: float = PRESET_ETA, points: int = 128, **kwargs) -> ScanConfig:
    """Four-photon (2, 2) hole at gamma^2 = 3 with two detectors per output."""
    return ScanConfig(
        n1=2,
        n2=2,
        gamma=FIG2_GAMMA,
        r=r,
        detectors1=DetectorArray(2, eta),
        detectors2=DetectorArray(2, eta),
        phi_grid=phase_grid(points),
        **kwargs,
    )


def fig3_config(r: float = PRESET_R, eta: float = PRESET_ETA, points: int = 128, **kwargs) -> ScanConfig:
    """Five-photon (5, 0) hole: five detectors on mode 1, mode 2 unmonitored."""
    return ScanConfig(
        n1=5,
        n2=0,
        gamma=FIG3_GAMMA,
        r=r,
        detectors1=DetectorArray(5, eta),
        detectors2=None,
        phi_grid=phase_grid(points),
        **kwargs,
    )
