"""
Finding correlated photon holes
===============================

Solve for the laser amplitude and phase that cancel a chosen coincidence.
"""

import math

from photonholes import HoleSpec, build_hole_polynomial, coherent_only_amplitude, hole_amplitude, solve_holes

# %% The target amplitude is a polynomial in u = tanh(r) e^{-2i phi} / |alpha|^2
for target in [(1, 1), (2, 2), (5, 0)]:
    poly = build_hole_polynomial(*target)
    scaled = poly.coefficients / poly.coefficients[0]
    print(f"{target}: polynomial coefficients (scaled) {scaled.real.round(6)}")

# %% Each root gives one hole; gamma = |alpha|^2 / r and phi is defined modulo pi
for target in [(1, 1), (2, 2), (5, 0), (4, 4)]:
    spec = HoleSpec(*target, r=1e-4)
    for s in solve_holes(spec):
        print(f"{target} root {s.root_index}: gamma = {s.gamma:.6f}, gamma^2 = {s.gamma_squared:.4f}, phi = {s.phi:.6f}")

# %% The cancellation is deep compared with the laser-only amplitude
spec = HoleSpec(2, 2, r=1e-4)
s = solve_holes(spec)[0]
laser_only = coherent_only_amplitude(math.sqrt(s.gamma * spec.r), 0.0, 2, 2)
print(f"|A|^2 at hole / laser-only |A|^2 = {abs(hole_amplitude(s.gamma, s.phi, spec)) ** 2 / abs(laser_only) ** 2:.1e}")

# %% Stronger squeezing shifts gamma by about r^2 / 3 relative
for r in (1e-3, 0.05, 0.2):
    print(f"r = {r}: (2,2) gamma^2 = {solve_holes(HoleSpec(2, 2, r=r))[0].gamma_squared:.6f}")
