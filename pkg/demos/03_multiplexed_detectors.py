"""
Multiplexed click detectors
===========================

Arrays of on/off detectors behind a balanced split, with loss.
"""

import numpy as np

from photonholes import DetectorArray, click_matrix, click_probability

# %% Two lossless detectors cannot tell 2 photons from 3 reliably
array = DetectorArray(k=2, eta=1.0)
for n in range(5):
    print(f"n={n}: P(c clicks) =", np.round(click_matrix(array, n)[:, n], 4))

# %% Five photons on five detectors all click only with probability 5!/5^5
print("P(5 clicks | 5 photons, k=5) =", click_probability(5, 5, DetectorArray(5)))

# %% Loss acts like binomial thinning before an ideal array
lossy = DetectorArray(2, 0.125)
print("eta=0.125, n=4:", np.round(click_matrix(lossy, 4)[:, 4], 6))

# %% k=None is a number-resolving detector
print("resolving, eta=0.5, n=3:", np.round(click_matrix(DetectorArray.resolving(0.5), 3)[:, 3], 4))
