"""The augmented CDF: mapping a point to a distribution over dyadic cells.

An ordinary ECDF sends x to a single number in [0, 1].  The augmented CDF
instead asks: if I subsample r = 2**(d+1) - 1 points from the reference
sample without replacement, where does the subsample ECDF at x land among
the 2**d dyadic cells of [0, 1]?  The answer is a probability vector with
exact hypergeometric entries, and it is what the test averages over a
whole sample.
"""

import numpy as np

from august import (
    SubsampleConfig,
    augmented_cdf,
    bootstrap_augmented_cdf,
    exhaustive_subsample_cdf,
)

cfg = SubsampleConfig(depth=1)  # two cells, subsamples of size r = 3
y = np.arange(1.0, 8.0)  # reference sample {1, ..., 7}
x = 3.5

print(f"reference sample: {y}")
print(f"query point x = {x}, depth d = {cfg.depth}, subsample size r = {cfg.r}")
print()

exact = augmented_cdf(x, y, cfg)
print(f"closed form:          {exact.probs}   (= 22/35, 13/35)")

brute = exhaustive_subsample_cdf(x, y, cfg)
print(f"all C(7,3) subsamples: {brute.probs}   (exhaustive average)")

boot = bootstrap_augmented_cdf(x, y, cfg, replicates=200_000, seed=0)
print(f"literal resampling:    {boot.probs}   (200k bootstrap draws)")
print()

# The vector depends on x only through the count below it, so any strictly
# increasing transformation of everything changes nothing.
mapped = augmented_cdf(np.exp(x), np.exp(y), cfg)
print(f"after exp-transform:   {mapped.probs}   (rank invariance)")
print()

# Extreme points pin the whole mass to an end cell.
print(f"x below everything: {augmented_cdf(0.0, y, cfg).probs}")
print(f"x above everything: {augmented_cdf(9.0, y, cfg).probs}")
