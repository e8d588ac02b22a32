"""Erdős–Rényi baselines and the Walsh proximity ratio."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import metrics
from .network import Graph


@dataclass(frozen=True)
class SimulatedBaseline:
    cc: float | None
    d: float | None
    runs: int
    d_missing: int  # runs whose largest component had < 2 nodes


@dataclass(frozen=True)
class NullBaseline:
    cc_rg_analytic: float | None
    d_rg_analytic: float | None
    cc_rg_sim: float | None
    d_rg_sim: float | None
    runs: int
    seed: int | None
    w_analytic: float | None
    w_sim: float | None


def analytic_baseline(n, z):
    """``(z / n, ln n / ln z)``; the distance is None unless z > 1."""
    if n < 2 or z <= 0:
        raise ValueError(f"need n >= 2 and z > 0, got n={n}, z={z}")
    cc = z / n
    d = math.log(n) / math.log(z) if z > 1 else None
    return cc, d


def _unrank_pairs(n, k):
    """Map linear indices into the row-major strict upper triangle to (i, j)."""
    k = np.asarray(k, dtype=np.int64)
    total = n * (n - 1) // 2
    # row i starts at i*n - i*(i+1)/2; solve from the end of the triangle
    r = total - 1 - k
    t = ((np.sqrt(8.0 * r + 1.0) - 1.0) // 2).astype(np.int64)
    # float sqrt can land one off near perfect squares
    t += (t + 1) * (t + 2) // 2 <= r
    t -= t * (t + 1) // 2 > r
    i = n - 2 - t
    start = i * n - i * (i + 1) // 2
    j = k - start + i + 1
    return np.stack([i, j], axis=1)


def random_gnm(n, m, rng):
    """Uniform G(n, m): exactly ``m`` distinct edges, no self-loops."""
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside [0, {total}] for n={n}")
    picks = rng.choice(total, size=m, replace=False) if m else np.empty(0, np.int64)
    return Graph(n, _unrank_pairs(n, np.sort(picks)))


def _one_run(n, m, seed_seq):
    g = random_gnm(n, m, np.random.default_rng(seed_seq))
    members, _ = metrics.largest_component(g)
    return metrics.clustering_coefficient(g), metrics.mean_distance(g, members)


def simulate_baseline(n, m, runs, seed, workers=1):
    """Mean clustering and mean distance over ``runs`` random G(n, m) graphs.

    Run ``r`` draws from ``SeedSequence(seed).spawn(runs)[r]``, so results do
    not depend on ``workers``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if n < 1:
        return SimulatedBaseline(None, None, runs, runs)
    children = np.random.SeedSequence(seed).spawn(runs)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda s: _one_run(n, m, s), children))
    else:
        results = [_one_run(n, m, s) for s in children]
    ccs = [cc for cc, _ in results]
    ds = [d for _, d in results if d is not None]
    return SimulatedBaseline(
        cc=float(np.mean(ccs)),
        d=float(np.mean(ds)) if ds else None,
        runs=runs,
        d_missing=runs - len(ds),
    )


def walsh_ratio(cc, d_mean, cc_rg, d_rg):
    """(cc / cc_rg) / (d_mean / d_rg), or None if any input is missing or <= 0."""
    vals = (cc, d_mean, cc_rg, d_rg)
    if any(v is None or not math.isfinite(v) or v <= 0 for v in vals):
        return None
    return (cc / cc_rg) / (d_mean / d_rg)


def null_baseline(observed, runs=100, seed=None, workers=1):
    """Analytic and simulated baselines plus W for observed :class:`NetworkMetrics`."""
    n, m = observed.n, observed.m
    cc_a = d_a = None
    if n >= 2 and m > 0:
        cc_a, d_a = analytic_baseline(n, 2.0 * m / n)
    cc_s = d_s = None
    if runs > 0 and n >= 2:
        if seed is None:
            raise ValueError("a seed is required for simulated baselines")
        sim = simulate_baseline(n, m, runs, seed, workers=workers)
        cc_s, d_s = sim.cc, sim.d
    return NullBaseline(
        cc_rg_analytic=cc_a,
        d_rg_analytic=d_a,
        cc_rg_sim=cc_s,
        d_rg_sim=d_s,
        runs=runs,
        seed=seed,
        w_analytic=walsh_ratio(observed.cc, observed.d_mean, cc_a, d_a),
        w_sim=walsh_ratio(observed.cc, observed.d_mean, cc_s, d_s),
    )
