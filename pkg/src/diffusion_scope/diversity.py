"""Rao-Stirling diversity, globalization and the distances they run on."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_KM = 6371.0  # mean radius used by the common haversine calculators


class AlignmentError(ValueError):
    """Distribution and distance matrix labels differ."""


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple
    d: np.ndarray
    units: str = "dimensionless"


@dataclass(frozen=True)
class MassDistribution:
    labels: tuple
    p: np.ndarray


@dataclass(frozen=True)
class LinkDistribution:
    labels: tuple
    p: np.ndarray


@dataclass(frozen=True)
class DiversityResult:
    D: float | None
    C: float | None
    coherence: float | None


def _check(dist, dmat):
    if tuple(dist.labels) != tuple(dmat.labels):
        raise AlignmentError("labels of distribution and distance matrix are not aligned")


def _off_diagonal(d):
    d = np.array(d, dtype=float)
    np.fill_diagonal(d, 0.0)
    return d


def rao_stirling(p, d):
    """Sum of p_i p_j d_ij over ordered pairs i != j."""
    _check(p, d)
    if len(p.labels) == 0:
        return 0.0
    vec = np.asarray(p.p, dtype=float)
    return float(vec @ _off_diagonal(d.d) @ vec)


def globalization(p, d):
    """Sum of p_ij d_ij over ordered pairs i != j."""
    _check(p, d)
    if len(p.labels) == 0:
        return 0.0
    return float(np.sum(_off_diagonal(p.p) * _off_diagonal(d.d)))


def coherence(D, C):
    if D is None or C is None or D <= 0:
        return None
    return C / D


def great_circle_km(a, b):
    """Haversine distance in km between ``(lat, lon)`` points given in degrees."""
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    h = (math.sin((lat2 - lat1) / 2) ** 2
         + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2)
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def geographic_distances(labels, coords):
    """Pairwise haversine km between ``coords`` (an (n, 2) lat/lon array)."""
    c = np.radians(np.asarray(coords, dtype=float).reshape(-1, 2))
    lat, lon = c[:, :1], c[:, 1:]
    h = (np.sin((lat - lat.T) / 2) ** 2
         + np.cos(lat) * np.cos(lat.T) * np.sin((lon - lon.T) / 2) ** 2)
    d = 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(tuple(labels), d, "kilometers")


def cognitive_distances(similarity, labels, tol=1e-9):
    """``1 - cosine`` after checking symmetry, range and unit diagonal."""
    s = np.asarray(similarity, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] != len(labels):
        raise ValueError(f"similarity must be square and match {len(labels)} labels")
    if not np.allclose(s, s.T, atol=tol, rtol=0):
        raise ValueError("similarity matrix is not symmetric")
    if s.size and (s.min() < -tol or s.max() > 1 + tol):
        raise ValueError("similarity entries must lie in [0, 1]")
    if not np.allclose(np.diag(s), 1.0, atol=tol, rtol=0):
        raise ValueError("similarity diagonal must be 1")
    d = np.clip(1.0 - s, 0.0, 1.0)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(tuple(labels), d, "dimensionless")


def category_mass(records, categories):
    """Whole-counted category shares over ``categories``.

    A record in k categories adds 1 to each of them. Categories outside
    ``categories`` are ignored. Returns None if nothing was counted.
    """
    pos = {c: i for i, c in enumerate(categories)}
    counts = np.zeros(len(categories))
    for rec in records:
        for cat in rec.categories:
            i = pos.get(cat)
            if i is not None:
                counts[i] += 1
    total = counts.sum()
    if total == 0:
        return None
    return MassDistribution(tuple(categories), counts / total)


def city_mass(net):
    """Paper-count shares over the geocoded cities of ``net`` (None if none)."""
    nodes = [node for node in net.nodes if node.geocoded]
    total = sum(node.papers for node in nodes)
    if not total:
        return None
    return MassDistribution(tuple(node.key for node in nodes),
                            np.array([node.papers / total for node in nodes]))


def link_mass(net):
    """Edge-weight shares over ordered city pairs, geocoded cities only.

    Each unordered link contributes ``w / (2 W)`` to both (i, j) and (j, i)
    so the matrix sums to 1. Returns an empty distribution when no link
    joins two geocoded cities.
    """
    keep = [i for i, node in enumerate(net.nodes) if node.geocoded]
    pos = {old: new for new, old in enumerate(keep)}
    labels = tuple(net.nodes[i].key for i in keep)
    p = np.zeros((len(keep), len(keep)))
    for i, j, w in net.edges:
        if i in pos and j in pos:
            p[pos[i], pos[j]] += w
            p[pos[j], pos[i]] += w
    total = p.sum()
    if total == 0:
        return LinkDistribution((), np.zeros((0, 0)))
    return LinkDistribution(labels, p / total)


def geo_diversity(net):
    """D (expected), C (observed) and C/D in km for the geocoded part of ``net``."""
    mass = city_mass(net)
    if mass is None:
        return DiversityResult(None, None, None)
    coords = [(node.lat, node.lon) for node in net.nodes if node.geocoded]
    dm = geographic_distances(mass.labels, coords)
    D = rao_stirling(mass, dm)
    links = link_mass(net)
    if len(links.labels) == 0:
        C = 0.0
    else:
        C = globalization(links, dm)
    return DiversityResult(D, C, coherence(D, C))
