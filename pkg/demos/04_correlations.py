"""
Correlation functions and the classical bound
=============================================

Factorial-moment correlations for reference states, classical mixtures and holes.
"""

import math

import numpy as np

from photonholes import HoleSpec, JointDistribution, coherent_state, g_mn, g_n, solve_holes, thermal_distribution
from photonholes.correlations import poisson_mixture
from photonholes.scan import output_distribution

# %% Coherent light sits exactly at g^(n) = 1, thermal light at n!
coh = coherent_state(1.2, min_cutoff=40).probabilities()
th = thermal_distribution(0.5, min_cutoff=120)
for n in (2, 3, 4):
    print(f"g^({n}) coherent {g_n(coh, n).value:.10f}  thermal {g_n(th, n).value:.6f} (n! = {math.factorial(n)})")

# %% Separable mixtures of Poissonians never go below 1
rng = np.random.default_rng(1)
worst = math.inf
for _ in range(200):
    marginals = [poisson_mixture(rng.uniform(0.01, 3, 3), rng.dirichlet(np.ones(3)), 5) for _ in range(2)]
    worst = min(worst, g_mn(JointDistribution.product(*marginals), 2, 2).value)
print(f"lowest g^(2,2) over 200 classical mixtures: {worst:.10f}")

# %% Hole states fall far below the bound
for target in [(1, 1), (2, 2), (5, 0)]:
    spec = HoleSpec(*target, r=1e-4)
    for s in solve_holes(spec):
        dist = output_distribution(math.sqrt(s.gamma * spec.r), s.phi, spec.r, min_cutoff=2 * sum(target) + 4)
        print(f"hole {target} gamma={s.gamma:.4f}: g = {g_mn(dist, *target).value:.2e}")
