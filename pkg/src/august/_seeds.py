"""Deterministic RNG streams for Monte-Carlo replicates.

Every stochastic operation derives one stream per replicate from
``(seed, domain, index)``.  Aggregation is always order-independent
(counts, sums, sorted pools), so results do not depend on how replicates
are scheduled.  Domains keep streams from different operations disjoint
even when they share a user seed.
"""

import numpy as np

# Domain tags; each seeded operation owns one.
NULL_TABLE = 0
POWER_TRIAL = 1
SIGMA = 2
PERMUTATION = 3
BOOTSTRAP = 4
ASYMPTOTIC = 5
TIE_JITTER = 6
BASELINE = 7


def replicate_rng(seed, domain, index=0):
    """Generator for replicate ``index`` of ``domain`` under ``seed``."""
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    return np.random.default_rng(np.random.SeedSequence((seed, domain, index)))
