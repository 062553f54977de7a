"""The two-sample test statistic, computed two ways.

``august`` is the quadratic-time reference: each point of one sample gets
its augmented CDF against the other sample by direct counting, and the
statistic is ``S = -(s_x . s_y)`` where ``s_x`` and ``s_y`` are the
Hadamard symmetry statistics of the averaged cell probabilities.

``august_plus`` computes the identical result in ``O(N log N)`` by sorting:
after a sort, the count of the other sample at or below each point is a
rank, the per-count cell probabilities form a lookup table of size
``O(N * 2**d)``, and averaging reduces to a count-weighted matrix product.
The two routes must agree to 1e-12 in every field; that equivalence is the
module's central correctness property.

Both samples' values enter only through ranks, so the statistic is
invariant under joint strictly increasing transforms and is exactly
distribution-free under the null.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _seeds
from .errors import DegenerateVector, SampleTooSmall, TiesPresent
from .hadamard import fwht
from .hypergeom import SubsampleConfig, cell_probabilities_for_counts

__all__ = [
    "TiePolicy",
    "AugustResult",
    "august",
    "august_plus",
    "august_many",
    "cos_angle",
    "minimum_sample_size",
]

_EQ_TOL = 1e-12


def minimum_sample_size(depth):
    """Smallest admissible sample size per side: the subsample size r."""
    return (1 << (depth + 1)) - 1


@dataclass(frozen=True)
class TiePolicy:
    """How duplicate values across the combined sample are handled.

    The test's theory assumes continuous distributions, so the default is
    to refuse tied data outright.  ``jitter`` adds seeded uniform noise at
    a scale strictly below the minimal nonzero gap of the combined sample,
    which preserves every non-tied rank.
    """

    mode: str = "error"
    jitter_scale: float = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("error", "jitter"):
            raise ValueError(f"unknown tie mode {self.mode!r}")
        if self.jitter_scale is not None and self.jitter_scale <= 0:
            raise ValueError("jitter_scale must be strictly positive")


@dataclass(frozen=True)
class AugustResult:
    """Statistic plus the full decomposition it was built from."""

    statistic: float
    s_x: np.ndarray
    s_y: np.ndarray
    p_x: np.ndarray
    p_y: np.ndarray
    depth: int
    m: int
    n: int
    tie_policy_applied: str  # "none" or "jitter"

    def __post_init__(self):
        bound = (1 << self.depth) - 1
        assert abs(self.statistic + float(self.s_x @ self.s_y)) <= _EQ_TOL
        assert abs(self.statistic) <= bound + _EQ_TOL


def _resolve_ties(x, y, policy):
    """Return tie-free copies of the samples plus what was applied."""
    combined = np.concatenate([x, y])
    if np.unique(combined).size == combined.size:
        return x, y, "none"
    if policy.mode == "error":
        raise TiesPresent(
            "combined sample contains duplicate values; pass a jitter tie "
            "policy to break them"
        )
    diffs = np.diff(np.sort(combined))
    gaps = diffs[diffs > 0]
    if gaps.size == 0 and policy.jitter_scale is None:
        raise TiesPresent(
            "all values identical; jitter needs an explicit jitter_scale"
        )
    min_gap = gaps.min() if gaps.size else np.inf
    scale = policy.jitter_scale if policy.jitter_scale is not None else min_gap / 2
    if scale >= min_gap:
        raise ValueError(
            f"jitter_scale {scale} must be below the minimal nonzero gap "
            f"{min_gap} of the combined sample"
        )
    rng = _seeds.replicate_rng(policy.seed, _seeds.TIE_JITTER)
    noise = rng.uniform(0.0, scale, combined.size)
    jittered = combined + noise
    if np.unique(jittered).size != jittered.size:
        raise TiesPresent("jitter failed to separate duplicate values")
    return jittered[: x.size], jittered[x.size:], "jitter"


def _prepare(x, y, depth, tie_policy):
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    r = minimum_sample_size(depth)
    if x.size < r or y.size < r:
        raise SampleTooSmall(
            f"need at least {r} points per sample at depth {depth}, "
            f"got sizes {x.size} and {y.size}"
        )
    policy = tie_policy if tie_policy is not None else TiePolicy()
    return _resolve_ties(x, y, policy)


def _assemble(p_x, p_y, depth, m, n, applied):
    full_x = fwht(p_x)
    full_y = fwht(p_y)
    assert abs(full_x[0] - 1.0) <= 1e-9 and abs(full_y[0] - 1.0) <= 1e-9
    s_x = full_x[1:]
    s_y = full_y[1:]
    return AugustResult(
        statistic=float(-(s_x @ s_y)),
        s_x=s_x,
        s_y=s_y,
        p_x=p_x,
        p_y=p_y,
        depth=depth,
        m=m,
        n=n,
        tie_policy_applied=applied,
    )


def _count_at_or_below(reference, points):
    """#{reference <= p} for each p, by direct comparison (quadratic)."""
    out = np.empty(points.size, dtype=np.int64)
    block = max(1, 16_000_000 // max(reference.size, 1))
    for start in range(0, points.size, block):
        stop = min(start + block, points.size)
        out[start:stop] = (
            points[start:stop, None] >= reference[None, :]
        ).sum(axis=1)
    return out


def august(x, y, depth, tie_policy=None):
    """Quadratic-time reference computation of the test statistic."""
    x, y, applied = _prepare(x, y, depth, tie_policy)
    m, n = x.size, y.size
    cfg = SubsampleConfig(depth)
    p_x = cell_probabilities_for_counts(
        _count_at_or_below(y, x), n, cfg
    ).mean(axis=0)
    p_y = cell_probabilities_for_counts(
        _count_at_or_below(x, y), m, cfg
    ).mean(axis=0)
    return _assemble(p_x, p_y, depth, m, n, applied)


@lru_cache(maxsize=8)
def _cell_prob_table(n, depth):
    """(n + 1, 2**depth) lookup: row K is the cell vector for count K."""
    table = cell_probabilities_for_counts(
        np.arange(n + 1), n, SubsampleConfig(depth)
    )
    table.setflags(write=False)
    return table


def august_plus(x, y, depth, tie_policy=None):
    """Sort-based computation; identical to ``august`` in O(N log N)."""
    x, y, applied = _prepare(x, y, depth, tie_policy)
    m, n = x.size, y.size
    x_sorted = np.sort(x)
    y_sorted = np.sort(y)
    # The counts feed a bincount, so sorted queries (cache-friendly) are fine.
    counts_x = np.searchsorted(y_sorted, x_sorted, side="right")
    counts_y = np.searchsorted(x_sorted, y_sorted, side="right")
    p_x = np.bincount(counts_x, minlength=n + 1) @ _cell_prob_table(n, depth) / m
    p_y = np.bincount(counts_y, minlength=m + 1) @ _cell_prob_table(m, depth) / n
    return _assemble(p_x, p_y, depth, m, n, applied)


def august_many(xs, ys, depth):
    """Batched statistics for Monte-Carlo work.

    ``xs`` and ``ys`` are (B, m) and (B, n) matrices; row b is one
    replicate pair.  Returns ``(statistics, s_x, s_y)`` with shapes (B,),
    (B, 2**depth - 1), (B, 2**depth - 1).  Rows are assumed tie-free
    (continuous draws); no tie policy is applied.  Matches ``august_plus``
    row-by-row to 1e-12.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    ys = np.atleast_2d(np.asarray(ys, dtype=np.float64))
    if xs.shape[0] != ys.shape[0]:
        raise ValueError("xs and ys must have the same number of replicates")
    reps, m = xs.shape
    n = ys.shape[1]
    r = minimum_sample_size(depth)
    if m < r or n < r:
        raise SampleTooSmall(
            f"need at least {r} points per sample at depth {depth}, "
            f"got sizes {m} and {n}"
        )
    table_x = _cell_prob_table(n, depth)
    table_y = _cell_prob_table(m, depth)
    width = 1 << depth
    stats = np.empty(reps)
    s_x = np.empty((reps, width - 1))
    s_y = np.empty((reps, width - 1))
    chunk = max(1, 4_000_000 // (m + n))
    for start in range(0, reps, chunk):
        stop = min(start + chunk, reps)
        rows = stop - start
        merged = np.concatenate([xs[start:stop], ys[start:stop]], axis=1)
        order = np.argsort(merged, axis=1)
        from_y = order >= m
        seen_y = np.cumsum(from_y, axis=1)
        seen_x = np.arange(1, m + n + 1) - seen_y
        counts_x = seen_y[~from_y].reshape(rows, m)
        counts_y = seen_x[from_y].reshape(rows, n)
        offsets = np.arange(rows)[:, None]
        tallies_x = np.bincount(
            (offsets * (n + 1) + counts_x).ravel(), minlength=rows * (n + 1)
        ).reshape(rows, n + 1)
        tallies_y = np.bincount(
            (offsets * (m + 1) + counts_y).ravel(), minlength=rows * (m + 1)
        ).reshape(rows, m + 1)
        p_x = tallies_x @ table_x / m
        p_y = tallies_y @ table_y / n
        full_x = fwht(p_x)
        full_y = fwht(p_y)
        assert abs(full_x[:, 0] - 1.0).max() <= 1e-9
        assert abs(full_y[:, 0] - 1.0).max() <= 1e-9
        s_x[start:stop] = full_x[:, 1:]
        s_y[start:stop] = full_y[:, 1:]
        stats[start:stop] = -(s_x[start:stop] * s_y[start:stop]).sum(axis=1)
    return stats, s_x, s_y


def cos_angle(result):
    """Cosine of the angle between the two symmetry vectors.

    Exactly separated samples give ``-(2**d - 1)**-1`` at any depth.
    """
    norm_x = float(np.linalg.norm(result.s_x))
    norm_y = float(np.linalg.norm(result.s_y))
    if norm_x == 0.0 or norm_y == 0.0:
        raise DegenerateVector(
            "symmetry vector has zero norm (exactly uniform cell "
            "probabilities); the angle is undefined"
        )
    return float(result.s_x @ result.s_y) / (norm_x * norm_y)
