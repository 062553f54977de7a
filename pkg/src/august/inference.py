"""P-values, calibration, and power tooling.

The statistic is exactly distribution-free under the null, so one
Monte-Carlo null table per ``(m, n, depth, sims, seed)`` serves every
dataset with matching sizes.  Tables are simulated from standard uniforms
by default (any continuous generator gives the same law), sorted, and can
be persisted to a binary cache with a JSON sidecar.

The asymptotic mode simulates the large-sample Gaussian limit of the
concatenated symmetry vectors: the limiting covariance has no closed form
here, so it is estimated from null simulations at finite N and the mode is
labeled approximate.  ``alternative_mu`` computes the population-level mean
of the symmetry vectors under a fixed pair of laws by Gauss-Legendre
quadrature, which powers a-priori power analysis.
"""

import json
import os
import struct
from dataclasses import dataclass

import numpy as np

from . import _seeds
from .core import august_many, minimum_sample_size
from .errors import IOFailure, LambdaMismatch, QuadratureFailure, SampleTooSmall
from .hadamard import sylvester

__all__ = [
    "GENERATORS",
    "NullTable",
    "AsymptoticConfig",
    "AlternativeSpec",
    "build_null_table",
    "p_value",
    "estimate_sigma",
    "asymptotic_p_value",
    "alternative_mu",
    "power_simulation",
    "null_table_path",
    "save_null_table",
    "load_null_table",
    "cached_null_table",
]

GENERATORS = {
    "uniform": lambda rng, size: rng.random(size),
    "normal": lambda rng, size: rng.standard_normal(size),
    "cauchy": lambda rng, size: rng.standard_cauchy(size),
}

_FORMAT_VERSION = 1
_MAGIC = b"AUGNULTB"
_REPLICATE_CHUNK = 2048


@dataclass(frozen=True)
class NullTable:
    """Sorted Monte-Carlo null statistics keyed by (m, n, depth, sims, seed)."""

    stats: np.ndarray
    m: int
    n: int
    depth: int
    sims: int
    seed: int
    generator_tag: str

    def __post_init__(self):
        stats = np.asarray(self.stats, dtype=np.float64)
        object.__setattr__(self, "stats", stats)
        if stats.size != self.sims:
            raise ValueError("stats length must equal sims")
        if stats.size and np.any(np.diff(stats) < 0):
            raise ValueError("stats must be sorted ascending")


@dataclass(frozen=True)
class AsymptoticConfig:
    """Empirical stand-in for the large-sample Gaussian null limit."""

    lam: float
    sigma: np.ndarray
    calibration_N: int
    calibration_reps: int

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=np.float64)
        if np.abs(sigma - sigma.T).max() > 1e-9:
            raise ValueError("sigma must be symmetric")
        object.__setattr__(self, "sigma", (sigma + sigma.T) / 2.0)
        if not 0.0 < self.lam < 1.0:
            raise ValueError("lam must lie in (0, 1)")


@dataclass(frozen=True)
class AlternativeSpec:
    """A fixed pair of continuous laws for power analysis.

    ``cdf_x`` / ``quantile_x`` describe the first sample's law, ``cdf_y``
    the second sample's.  Only the first law's quantile function is needed:
    both mean integrals reduce to quadrature against
    ``w(u) = cdf_y(quantile_x(u))`` on the unit interval.
    """

    cdf_x: callable
    cdf_y: callable
    quantile_x: callable
    label: str = ""


def _simulate_batches(m, n, depth, reps, seed, domain, sampler):
    """Yield august_many outputs over replicate chunks with per-replicate RNG."""
    for start in range(0, reps, _REPLICATE_CHUNK):
        stop = min(start + _REPLICATE_CHUNK, reps)
        xs = np.empty((stop - start, m))
        ys = np.empty((stop - start, n))
        for i in range(start, stop):
            rng = _seeds.replicate_rng(seed, domain, i)
            xs[i - start] = sampler(rng, m)
            ys[i - start] = sampler(rng, n)
        yield august_many(xs, ys, depth)


def build_null_table(m, n, depth, sims, seed, generator="uniform"):
    """Simulate ``sims`` null statistics and return them sorted.

    Replicate i draws both samples from one RNG stream derived from
    ``(seed, i)``, so the table is reproducible and independent of
    scheduling.
    """
    r = minimum_sample_size(depth)
    if m < r or n < r:
        raise SampleTooSmall(f"need m, n >= {r} at depth {depth}")
    if sims < 100:
        raise ValueError("sims must be at least 100")
    sampler = GENERATORS[generator]
    stats = np.concatenate([
        batch[0]
        for batch in _simulate_batches(
            m, n, depth, sims, seed, _seeds.NULL_TABLE, sampler
        )
    ])
    return NullTable(np.sort(stats), m, n, depth, sims, seed, generator)


def p_value(statistic, table):
    """Add-one Monte-Carlo p-value: (1 + #{t >= S}) / (sims + 1).

    The add-one convention guarantees p > 0 and a valid test at any finite
    table size.
    """
    if table.stats.size == 0:
        raise ValueError("null table is empty")
    at_or_above = table.sims - int(
        np.searchsorted(table.stats, statistic, side="left")
    )
    return (1 + at_or_above) / (table.sims + 1)


def estimate_sigma(m, n, depth, reps, seed):
    """Sample covariance of sqrt(N) * (s_x, s_y) under the null.

    The limiting covariance blocks have no closed form, so this finite-N
    estimate backs the asymptotic p-value mode.
    """
    if reps < 1000:
        raise ValueError("reps must be at least 1000")
    sampler = GENERATORS["uniform"]
    rows = []
    for _, s_x, s_y in _simulate_batches(
        m, n, depth, reps, seed, _seeds.SIGMA, sampler
    ):
        rows.append(np.hstack([s_x, s_y]))
    scaled = np.sqrt(m + n) * np.vstack(rows)
    sigma = np.cov(scaled, rowvar=False)
    return AsymptoticConfig(
        lam=m / (m + n),
        sigma=sigma,
        calibration_N=m + n,
        calibration_reps=reps,
    )


def asymptotic_p_value(statistic, m, n, cfg, draws=100_000, seed=0):
    """Approximate p-value from the simulated Gaussian limit.

    Draws ``(z_x, z_y)`` from N(0, sigma), forms ``-(z_x . z_y) / N`` and
    returns the add-one exceedance proportion against ``statistic``.
    """
    lam = m / (m + n)
    if abs(lam - cfg.lam) > 0.1:
        raise LambdaMismatch(
            f"m/(m+n) = {lam:.3f} but config was calibrated at {cfg.lam:.3f}"
        )
    eigvals, eigvecs = np.linalg.eigh(cfg.sigma)
    factor = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))
    rng = _seeds.replicate_rng(seed, _seeds.ASYMPTOTIC)
    z = rng.standard_normal((draws, cfg.sigma.shape[0])) @ factor.T
    half = cfg.sigma.shape[0] // 2
    sims = -(z[:, :half] * z[:, half:]).sum(axis=1) / (m + n)
    return (1 + int(np.count_nonzero(sims >= statistic))) / (draws + 1)


def _cell_polynomials(depth):
    """Coefficient pairs (j, binom(r, j)) per cell for the theoretical CDF map."""
    r = minimum_sample_size(depth)
    from math import comb

    cells = []
    for cell in range(1 << depth):
        j1, j2 = 2 * cell, 2 * cell + 1
        cells.append(((j1, comb(r, j1)), (j2, comb(r, j2))))
    return r, cells


def _cell_values(depth, w):
    """Theoretical cell probabilities b_k(w) for an array of CDF values w."""
    r, cells = _cell_polynomials(depth)
    w = np.asarray(w, dtype=np.float64)
    out = np.empty((1 << depth,) + w.shape)
    for k, ((j1, c1), (j2, c2)) in enumerate(cells):
        out[k] = c1 * w**j1 * (1 - w) ** (r - j1) + c2 * w**j2 * (1 - w) ** (r - j2)
    return out


def _cell_derivatives(depth, u):
    """d/du of the theoretical cell probabilities at interior points u."""
    r, cells = _cell_polynomials(depth)
    u = np.asarray(u, dtype=np.float64)
    out = np.empty((1 << depth,) + u.shape)
    for k, pair in enumerate(cells):
        acc = np.zeros_like(u)
        for j, c in pair:
            if j > 0:
                acc += c * j * u ** (j - 1) * (1 - u) ** (r - j)
            if r - j > 0:
                acc -= c * (r - j) * u**j * (1 - u) ** (r - j - 1)
        out[k] = acc
    return out


def _check_handles(spec):
    grid = np.linspace(1e-6, 1.0 - 1e-6, 33)
    points = np.asarray([spec.quantile_x(u) for u in grid], dtype=np.float64)
    if np.any(np.diff(points) < -1e-12):
        raise ValueError("quantile_x must be nondecreasing")
    for cdf, name in ((spec.cdf_x, "cdf_x"), (spec.cdf_y, "cdf_y")):
        vals = np.asarray([cdf(p) for p in points], dtype=np.float64)
        if np.any(np.diff(vals) < -1e-9):
            raise ValueError(f"{name} must be nondecreasing")
        if vals.min() < -1e-9 or vals.max() > 1.0 + 1e-9:
            raise ValueError(f"{name} must map into [0, 1]")


def alternative_mu(spec, depth, quadrature_nodes=128):
    """Population mean of the concatenated symmetry vectors under F != G.

    Both blocks reduce to integrals on [0, 1] of smooth functions of
    ``w(u) = cdf_y(quantile_x(u))`` and are evaluated by fixed-order
    Gauss-Legendre quadrature; the result is checked to be stable under
    node doubling.  Returns the zero vector when the two laws coincide.
    """
    if quadrature_nodes < 64:
        raise ValueError("quadrature_nodes must be at least 64")
    _check_handles(spec)
    reduced = sylvester(depth)[1:, :].astype(np.float64)
    last_cell = (1 << depth) - 1

    def evaluate(nodes):
        t, weights = np.polynomial.legendre.leggauss(nodes)
        u = (t + 1.0) / 2.0
        weights = weights / 2.0
        w = np.clip(
            np.asarray([spec.cdf_y(spec.quantile_x(v)) for v in u]), 0.0, 1.0
        )
        # First block: integral of b_k(w(u)) du.
        first = _cell_values(depth, w) @ weights
        # Second block: b_k(1) - integral of b_k'(u) w(u) du, the
        # integration-by-parts form of the swapped-roles integral.
        boundary = np.zeros(1 << depth)
        boundary[last_cell] = 1.0
        second = boundary - _cell_derivatives(depth, u) @ (weights * w)
        return np.concatenate([reduced @ first, reduced @ second])

    coarse = evaluate(quadrature_nodes)
    fine = evaluate(2 * quadrature_nodes)
    if np.abs(fine - coarse).max() > 1e-8:
        raise QuadratureFailure(
            "node doubling moved a coordinate by more than 1e-8; "
            "check the CDF/quantile handles for smoothness"
        )
    return fine


def power_simulation(
    gen_x,
    gen_y,
    m,
    n,
    depth,
    alpha,
    reps,
    seed,
    null_table=None,
    table_sims=2000,
):
    """Fraction of replicates rejected at level alpha.

    ``gen_x`` and ``gen_y`` are seeded samplers ``f(rng, size)``.  P-values
    come from a shared null table (built once from uniforms unless one is
    supplied); replicate draws use per-replicate streams, so the result is
    deterministic given ``seed``.
    """
    if reps < 100:
        raise ValueError("reps must be at least 100")
    table = null_table
    if table is None:
        table = build_null_table(m, n, depth, table_sims, seed)
    rejections = 0
    for start in range(0, reps, _REPLICATE_CHUNK):
        stop = min(start + _REPLICATE_CHUNK, reps)
        xs = np.empty((stop - start, m))
        ys = np.empty((stop - start, n))
        for i in range(start, stop):
            rng = _seeds.replicate_rng(seed, _seeds.POWER_TRIAL, i)
            xs[i - start] = gen_x(rng, m)
            ys[i - start] = gen_y(rng, n)
        stats = august_many(xs, ys, depth)[0]
        at_or_above = table.sims - np.searchsorted(
            table.stats, stats, side="left"
        )
        pvals = (1 + at_or_above) / (table.sims + 1)
        rejections += int(np.count_nonzero(pvals <= alpha))
    return rejections / reps


def null_table_path(cache_dir, m, n, depth, sims, seed, generator_tag):
    """Canonical cache filename for a table key."""
    name = f"null_m{m}_n{n}_d{depth}_B{sims}_s{seed}_{generator_tag}.nulltab"
    return os.path.join(cache_dir, name)


def save_null_table(table, cache_dir):
    """Write the binary table plus its JSON sidecar; returns the path.

    Layout: magic, little-endian header (version, m, n, depth, sims, seed,
    tag length), the tag bytes, then ``sims`` float64 statistics.  Writes
    are atomic (temp file then rename).
    """
    path = null_table_path(
        cache_dir, table.m, table.n, table.depth, table.sims, table.seed,
        table.generator_tag,
    )
    tag = table.generator_tag.encode("ascii")
    header = _MAGIC + struct.pack(
        "<IQQIQQI",
        _FORMAT_VERSION,
        table.m,
        table.n,
        table.depth,
        table.sims,
        table.seed,
        len(tag),
    )
    sidecar = json.dumps(
        {
            "format_version": _FORMAT_VERSION,
            "m": table.m,
            "n": table.n,
            "depth": table.depth,
            "sims": table.sims,
            "seed": table.seed,
            "generator_tag": table.generator_tag,
        },
        sort_keys=True,
        indent=2,
    )
    try:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(tag)
            fh.write(table.stats.astype("<f8").tobytes())
        os.replace(tmp, path)
        tmp_json = path + ".json.tmp"
        with open(tmp_json, "w", encoding="ascii") as fh:
            fh.write(sidecar + "\n")
        os.replace(tmp_json, path + ".json")
    except OSError as exc:
        raise IOFailure(f"could not write null table to {path}: {exc}") from exc
    return path


def load_null_table(path):
    """Read a table written by ``save_null_table``."""
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise IOFailure(f"could not read null table from {path}: {exc}") from exc
    fixed = len(_MAGIC) + struct.calcsize("<IQQIQQI")
    if len(blob) < fixed or blob[: len(_MAGIC)] != _MAGIC:
        raise IOFailure(f"{path} is not a null-table cache file")
    version, m, n, depth, sims, seed, tag_len = struct.unpack(
        "<IQQIQQI", blob[len(_MAGIC): fixed]
    )
    if version != _FORMAT_VERSION:
        raise IOFailure(f"unsupported null-table format version {version}")
    tag = blob[fixed: fixed + tag_len].decode("ascii")
    stats = np.frombuffer(blob[fixed + tag_len:], dtype="<f8")
    if stats.size != sims:
        raise IOFailure(f"{path} is truncated: {stats.size} of {sims} statistics")
    return NullTable(stats.copy(), m, n, depth, sims, seed, tag)


def cached_null_table(m, n, depth, sims, seed, generator, cache_dir):
    """Load the table for a key if cached, else build and persist it.

    Returns ``(table, hit)`` where ``hit`` says whether the cache served it.
    """
    path = null_table_path(cache_dir, m, n, depth, sims, seed, generator)
    if os.path.exists(path):
        return load_null_table(path), True
    table = build_null_table(m, n, depth, sims, seed, generator)
    save_null_table(table, cache_dir)
    return table, False
