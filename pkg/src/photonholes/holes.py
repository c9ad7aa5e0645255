"""
Locate correlated photon holes: parameter points (gamma, phi) at which the
``(N1, N2)`` output amplitude of coherent + squeezed-vacuum interference
vanishes.

Only input terms with ``n + 2m = N1 + N2`` photons reach the target
amplitude, so after removing the factor

    G = exp(-|alpha|^2 / 2) cosh(r)^(-1/2) alpha^N 2^(-N/2) sqrt(N1! N2!)

the amplitude is a polynomial of degree ``floor(N/2)`` in
``u = tanh(r) exp(-2i phi) / |alpha|^2``. Its roots seed a Newton polish on
the full truncated simulation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditionedFitError, NoConvergenceError, RootCollisionError
from .fock import DEFAULT_POLICY, CutoffPolicy, coherent_state, log_factorial, squeezed_vacuum
from .twomode import amplitude, beamsplitter, coherent_only_amplitude, tensor

__all__ = [
    "HoleSpec",
    "HoleSolution",
    "HolePolynomial",
    "hole_amplitude",
    "global_factor",
    "reduced_variable",
    "build_hole_polynomial",
    "jacobian",
    "solve_holes",
]

log = logging.getLogger(__name__)

RESIDUAL_THRESHOLD = 1e-16
MAX_NEWTON_ITERATIONS = 100
COLLISION_DISTANCE = 1e-6
MAX_CONDITION = 1e8


@dataclass(frozen=True)
class HoleSpec:
    """Target coincidence ``(n1, n2)`` and the squeezing used to solve for it."""

    n1: int
    n2: int
    r: float = 1e-4
    gamma_max: float = math.inf

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("photon numbers must be nonnegative")
        if self.n1 + self.n2 < 2:
            raise ValueError(f"holes need n1 + n2 >= 2, got ({self.n1}, {self.n2})")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r}")
        if not self.gamma_max > 0:
            raise ValueError("gamma_max must be positive")

    @property
    def total(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class HoleSolution:
    n1: int
    n2: int
    gamma: float
    phi: float
    residual: float
    root_index: int

    @property
    def gamma_squared(self) -> float:
        return self.gamma**2


@dataclass(frozen=True, eq=False)
class HolePolynomial:
    """Coefficients ``c_m`` (ascending powers of ``u``) of the reduced amplitude."""

    n1: int
    n2: int
    coefficients: np.ndarray
    condition: float = field(default=1.0)

    def degree(self, rtol: float = 1e-10) -> int:
        c = np.abs(self.coefficients)
        nonzero = np.nonzero(c > rtol * c.max())[0]
        return int(nonzero[-1]) if nonzero.size else 0

    def __call__(self, u):
        return np.polynomial.polynomial.polyval(u, self.coefficients)

    def roots(self) -> np.ndarray:
        """Roots from the eigenvalues of the companion matrix of the monic polynomial."""
        d = self.degree()
        if d == 0:
            return np.zeros(0, dtype=complex)
        c = np.asarray(self.coefficients[: d + 1], dtype=complex)
        companion = np.zeros((d, d), dtype=complex)
        companion[0, :] = -c[d - 1 :: -1] / c[d]
        companion[1:, :-1] = np.eye(d - 1)
        return np.linalg.eigvals(companion)


def _magnitude(gamma: float, r: float) -> float:
    return math.sqrt(gamma * r)


def hole_amplitude(
    gamma: float, phi: float, spec: HoleSpec, policy: CutoffPolicy = DEFAULT_POLICY
) -> complex:
    """Full-simulation amplitude ``<n1, n2|psi_out>`` at ``|alpha|^2 = gamma * r``."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    n = spec.total
    a = coherent_state(_magnitude(gamma, spec.r), phi, policy, min_cutoff=n)
    b = squeezed_vacuum(spec.r, policy, min_cutoff=n)
    return amplitude(beamsplitter(tensor(a, b)), spec.n1, spec.n2)


def global_factor(magnitude: float, phi: float, r: float, n1: int, n2: int) -> complex:
    """The factor ``G`` separating the hole amplitude from its polynomial in ``u``."""
    n = n1 + n2
    log_mag = (
        -0.5 * magnitude**2
        - 0.5 * math.log(math.cosh(r))
        + n * math.log(magnitude)
        - 0.5 * n * math.log(2.0)
        + 0.5 * (log_factorial(n1) + log_factorial(n2))
    )
    return complex(math.exp(log_mag) * np.exp(1j * n * phi))


def reduced_variable(gamma: float, phi: float, r: float) -> complex:
    return complex(math.tanh(r) / (gamma * r) * np.exp(-2j * phi))


def build_hole_polynomial(
    n1: int,
    n2: int,
    sample_r: float = 0.05,
    sample_radius: float = 1.0,
    policy: CutoffPolicy = DEFAULT_POLICY,
) -> HolePolynomial:
    """Recover the hole polynomial by sampling the full simulation.

    The amplitude is evaluated at ``floor(N/2) + 1`` points spaced evenly on
    the circle ``|u| = sample_radius`` and the Vandermonde system is solved
    for the coefficients. On the unit circle the system is a scaled DFT and
    perfectly conditioned.

    Raises
    ------
    IllConditionedFitError
        If the Vandermonde condition number exceeds ``1e8``.
    """
    spec = HoleSpec(n1, n2, r=sample_r)
    d = spec.total // 2
    angles = 2.0 * np.pi * np.arange(d + 1) / (d + 1)
    u = sample_radius * np.exp(1j * angles)
    vander = np.vander(u, d + 1, increasing=True)
    cond = float(np.linalg.cond(vander))
    if cond > MAX_CONDITION:
        raise IllConditionedFitError(
            f"Vandermonde condition number {cond:.3g} exceeds {MAX_CONDITION:g}; "
            f"move sample_radius (now {sample_radius:g}) closer to 1"
        )
    gamma = math.tanh(sample_r) / (sample_r * sample_radius)
    values = np.empty(d + 1, dtype=complex)
    for i, angle in enumerate(angles):
        phi = -0.5 * angle
        amp = hole_amplitude(gamma, phi, spec, policy)
        values[i] = amp / global_factor(_magnitude(gamma, sample_r), phi, sample_r, n1, n2)
    coefficients = np.linalg.solve(vander, values)
    return HolePolynomial(n1, n2, coefficients, cond)


def jacobian(
    gamma: float,
    phi: float,
    spec: HoleSpec,
    step: float | None = None,
    policy: CutoffPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Central-difference derivative of ``(Re A, Im A)`` with respect to ``(gamma, phi)``.

    ``step`` defaults to ``1e-6 * max(1, gamma)`` for gamma; the phase step
    is ``step / max(1, gamma)``.
    """
    h_gamma = 1e-6 * max(1.0, gamma) if step is None else step
    h_phi = h_gamma / max(1.0, gamma)

    def f(g, p):
        a = hole_amplitude(g, p, spec, policy)
        return np.array([a.real, a.imag])

    d_gamma = (f(gamma + h_gamma, phi) - f(gamma - h_gamma, phi)) / (2 * h_gamma)
    d_phi = (f(gamma, phi + h_phi) - f(gamma, phi - h_phi)) / (2 * h_phi)
    return np.column_stack([d_gamma, d_phi])


def _refine(gamma: float, phi: float, spec: HoleSpec, policy: CutoffPolicy) -> tuple[float, float, float]:
    def target(g):
        ref = coherent_only_amplitude(_magnitude(g, spec.r), 0.0, spec.n1, spec.n2)
        return RESIDUAL_THRESHOLD * abs(ref) ** 2

    amp = hole_amplitude(gamma, phi, spec, policy)
    for _ in range(MAX_NEWTON_ITERATIONS):
        if abs(amp) ** 2 <= target(gamma):
            return gamma, phi, abs(amp) ** 2
        jac = jacobian(gamma, phi, spec, policy=policy)
        step = np.linalg.solve(jac, -np.array([amp.real, amp.imag]))
        damping = 1.0
        while True:
            g_new = gamma + damping * step[0]
            if g_new > 0:
                p_new = phi + damping * step[1]
                amp_new = hole_amplitude(g_new, p_new, spec, policy)
                if abs(amp_new) < abs(amp) or damping < 1e-6:
                    break
            damping *= 0.5
        gamma, phi, amp = g_new, p_new, amp_new
    if abs(amp) ** 2 <= target(gamma):
        return gamma, phi, abs(amp) ** 2
    raise NoConvergenceError(
        f"Newton refinement for ({spec.n1}, {spec.n2}) at r={spec.r:g} stalled at "
        f"|A|^2={abs(amp) ** 2:.3g} after {MAX_NEWTON_ITERATIONS} iterations"
    )


def _reduce_phase(phi: float) -> float:
    phi = float(phi) % math.pi
    return 0.0 if math.pi - phi < 1e-12 else phi


def _phase_distance(a: float, b: float) -> float:
    d = abs(a - b) % math.pi
    return min(d, math.pi - d)


def solve_holes(spec: HoleSpec, policy: CutoffPolicy = DEFAULT_POLICY) -> list[HoleSolution]:
    """All hole solutions for ``spec``, sorted by gamma then phase.

    Each nonzero root ``u_k`` gives the seed ``gamma = tanh(r) / (r |u_k|)``,
    ``phi = -arg(u_k) / 2 (mod pi)``, which is then polished with damped
    Newton steps on the full amplitude. Phases are reported in ``[0, pi)``;
    ``phi + pi`` is the same hole.

    Raises
    ------
    NoConvergenceError
        A seed failed to refine below the residual threshold.
    RootCollisionError
        Two refined solutions lie within ``1e-6`` of each other.
    """
    poly = build_hole_polynomial(spec.n1, spec.n2, policy=policy)
    roots = poly.roots()
    expected = spec.total // 2
    if roots.size != expected:
        log.warning(
            "(%d, %d) hole polynomial has degree %d, not %d; its leading coefficient vanishes",
            spec.n1, spec.n2, roots.size, expected,
        )
    seeds = []
    for u in roots:
        if u == 0:
            continue
        gamma = math.tanh(spec.r) / (spec.r * abs(u))
        phi = _reduce_phase(-0.5 * np.angle(u))
        seeds.append((gamma, phi))

    solutions = []
    for gamma, phi in seeds:
        if gamma > spec.gamma_max:
            log.info("skipping root with gamma=%.6g above gamma_max=%g", gamma, spec.gamma_max)
            continue
        g, p, residual = _refine(gamma, phi, spec, policy)
        solutions.append((float(g), _reduce_phase(p), float(residual)))
    # gammas of conjugate roots agree only to rounding
    solutions.sort(key=lambda s: (round(s[0], 8), s[1]))

    for i, (g1, p1, _) in enumerate(solutions):
        for g2, p2, _ in solutions[i + 1 :]:
            if math.hypot(g1 - g2, _phase_distance(p1, p2)) < COLLISION_DISTANCE:
                raise RootCollisionError(
                    f"({spec.n1}, {spec.n2}) solutions at gamma={g1:.9g}, phi={p1:.9g} "
                    f"and gamma={g2:.9g}, phi={p2:.9g} coincide"
                )
    return [
        HoleSolution(spec.n1, spec.n2, g, p, res, idx) for idx, (g, p, res) in enumerate(solutions)
    ]
