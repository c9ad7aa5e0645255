"""
Fock states and the balanced beamsplitter
=========================================

Truncated coherent and squeezed states, and what a 50/50 splitter does to them.
"""

import math

import numpy as np

from photonholes import (
    amplitude,
    beamsplitter,
    coherent_only_amplitude,
    coherent_state,
    joint_distribution,
    number_state,
    squeezed_vacuum,
    tensor,
)

# %% A coherent state is truncated where its Poisson tail drops below 1e-12
alpha = coherent_state(1.5, phase=0.3)
print(f"coherent |alpha|=1.5: cutoff {alpha.cutoff}, tail bound {alpha.tail_bound:.2e}, norm {alpha.norm():.15f}")

# %% Squeezed vacuum only populates even photon numbers
sq = squeezed_vacuum(0.4)
print("squeezed r=0.4, first amplitudes:", np.round(sq.amplitudes[:6].real, 5))
print(f"mean photon number {sq.mean_photon():.6f} vs sinh^2 r = {math.sinh(0.4) ** 2:.6f}")

# %% Two single photons bunch: the (1,1) outcome vanishes
hom = joint_distribution(beamsplitter(tensor(number_state(1), number_state(1))))
print("HOM outcome probabilities P(2,0), P(1,1), P(0,2):", hom.probs[2, 0], hom.probs[1, 1], hom.probs[0, 2])

# %% With no squeezing the output is a product of two coherent states of amplitude alpha/sqrt(2)
out = beamsplitter(tensor(coherent_state(1.0, 0.7, min_cutoff=8), squeezed_vacuum(0.0)))
for n1, n2 in [(1, 1), (2, 2), (5, 0)]:
    print(f"A({n1},{n2}) simulated {amplitude(out, n1, n2):.12f}  closed form {coherent_only_amplitude(1.0, 0.7, n1, n2):.12f}")
