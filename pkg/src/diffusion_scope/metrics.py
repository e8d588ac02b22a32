"""Topological statistics of a city network.

Edge weights are ignored throughout; functions accept either a
:class:`~diffusion_scope.network.CityYearNetwork` or a bare
:class:`~diffusion_scope.network.Graph`. Node indices follow the network's
sorted key order, which is what makes the largest-component tie-break
lexicographic.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .network import CityYearNetwork, Graph


@dataclass(frozen=True)
class NetworkMetrics:
    n: int
    m: int
    density: float | None
    z: float | None
    cc: float | None
    d_mean: float | None
    largest_component_fraction: float | None


def _graph(net):
    return net.graph if isinstance(net, CityYearNetwork) else net


def degree_histogram(net):
    """``{degree: node count}`` including degree 0."""
    g = _graph(net)
    indptr, _ = g.csr
    return dict(sorted(Counter(np.diff(indptr).tolist()).items()))


def clustering_coefficient(net):
    """Mean local clustering over all nodes; nodes of degree < 2 count as 0."""
    g = _graph(net)
    if g.n == 0:
        return None
    indptr, indices = g.csr
    deg = np.diff(indptr)
    tri = kernels.triangles(indptr, indices)
    pairs = deg * (deg - 1) / 2.0
    local = np.divide(tri, pairs, out=np.zeros(g.n), where=pairs > 0)
    return float(local.sum() / g.n)


def largest_component(net):
    """``(node indices, fraction of n)`` of the biggest connected component.

    Ties go to the component holding the smallest node index.
    """
    g = _graph(net)
    if g.n == 0:
        return np.empty(0, dtype=np.int64), None
    indptr, indices = g.csr
    labels = kernels.component_labels(indptr, indices)
    sizes = np.bincount(labels)
    # first occurrence of each label in index order
    first = np.full(len(sizes), g.n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(g.n))
    best = min(range(len(sizes)), key=lambda c: (-sizes[c], first[c]))
    members = np.flatnonzero(labels == best)
    return members, len(members) / g.n


def mean_distance(net, component=None):
    """Mean BFS hop distance over unordered pairs of the largest component.

    Returns None when that component has fewer than two nodes.
    """
    g = _graph(net)
    if component is None:
        component, _ = largest_component(g)
    k = len(component)
    if k < 2:
        return None
    indptr, indices = g.csr
    total = kernels.distance_sum(indptr, indices, component)
    return total / (k * (k - 1))


def compute_metrics(net):
    g = _graph(net)
    n, m = g.n, g.m
    if n == 0:
        return NetworkMetrics(0, 0, None, None, None, None, None)
    members, fraction = largest_component(g)
    return NetworkMetrics(
        n=n,
        m=m,
        density=2.0 * m / (n * (n - 1)) if n >= 2 else None,
        z=2.0 * m / n,
        cc=clustering_coefficient(g),
        d_mean=mean_distance(g, members),
        largest_component_fraction=fraction,
    )
