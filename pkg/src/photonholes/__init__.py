"""Simulation of correlated multiphoton holes.

A coherent state and weak squeezed vacuum meet on a balanced beamsplitter;
tuning their relative amplitude ``gamma = |alpha|^2 / r`` and phase
``phi`` cancels a chosen ``(N1, N2)`` coincidence amplitude. The package
builds the states, solves for the canceling parameters, models lossy
multiplexed detection and evaluates classical correlation bounds.
"""

__version__ = "0.1.0"

from .correlations import CorrelationReport, classical_floor, falling_moment, g_mn, g_n
from .detection import (
    DetectorArray,
    bound_violation_sigma,
    click_matrix,
    click_probability,
    coincidence_probability,
    find_minima,
    visibility,
)
from .errors import (
    ConfigError,
    CutoffError,
    IllConditionedFitError,
    NoConvergenceError,
    PhotonHolesError,
    RootCollisionError,
    ZeroMeanError,
)
from .fock import (
    DEFAULT_POLICY,
    CutoffPolicy,
    FockVector,
    coherent_state,
    log_factorial,
    number_state,
    squeezed_vacuum,
    thermal_distribution,
)
from .holes import (
    HolePolynomial,
    HoleSolution,
    HoleSpec,
    build_hole_polynomial,
    hole_amplitude,
    jacobian,
    solve_holes,
)
from .scan import ScanConfig, ScanResult, fig2_config, fig3_config, output_distribution, phase_grid, phase_scan
from .twomode import (
    BALANCED,
    BeamsplitterSpec,
    JointDistribution,
    TwoModeState,
    amplitude,
    beamsplitter,
    coherent_only_amplitude,
    joint_distribution,
    loss_channel,
    mean_photon,
    tensor,
)
