"""
Phase scans with lossy detectors
================================

Coincidence rate versus laser phase for the four- and five-photon holes.
"""

import numpy as np

from photonholes import fig2_config, fig3_config, phase_scan

# %% Four-photon hole: two detectors per output, 12.5% transmission, assumed r = 0.2
result = phase_scan(fig2_config(pulses=3 * 10**10))
print(f"(2,2) visibility {result.visibility:.4f}, minima at phi = {np.round(result.minima_phases, 4)}")
print("g^(2,2) at minima:", np.round(result.g[result.minima], 4))
print("significance at minima for 3e10 pulses:", np.round(result.sigma_at_minima(), 1))

# %% Singles stay flat while the coincidence dips
print(f"singles variation {np.ptp(result.singles1) / result.singles1.mean():.1e}")

# %% Five-photon hole: five detectors on one output, the other unmonitored
result = phase_scan(fig3_config())
print(f"(5,0) visibility {result.visibility:.4f}, minima at phi = {np.round(result.minima_phases, 4)}")

# %% Visibility drops as squeezing grows because higher pairs fill the hole
for r in (0.05, 0.1, 0.2, 0.4):
    print(f"r = {r}: (2,2) visibility {phase_scan(fig2_config(r=r, points=64)).visibility:.4f}")
