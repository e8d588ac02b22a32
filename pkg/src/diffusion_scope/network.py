"""Per-year intercity coauthorship networks."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import kernels
from .records import CityKey


@dataclass(frozen=True)
class CityNode:
    key: CityKey
    papers: int
    lat: float | None = None
    lon: float | None = None

    @property
    def geocoded(self):
        return self.lat is not None and self.lon is not None


@dataclass(frozen=True)
class Graph:
    """Bare undirected simple graph: ``n`` nodes, ``edges`` as an (m, 2) int array."""

    n: int
    edges: np.ndarray

    @cached_property
    def csr(self):
        return kernels.csr_from_edges(self.n, self.edges)

    @property
    def m(self):
        return len(self.edges)

    @classmethod
    def from_pairs(cls, n, pairs):
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        return cls(n, arr)


@dataclass(frozen=True)
class CityYearNetwork:
    """Weighted city graph for one year.

    ``nodes`` are sorted by key; ``edges`` hold ``(i, j, weight)`` node
    indices with ``i < j``, so each undirected link appears once.
    """

    year: int
    nodes: tuple[CityNode, ...] = ()
    edges: tuple[tuple[int, int, int], ...] = ()
    excluded_cities: int = 0

    @property
    def n(self):
        return len(self.nodes)

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def index(self):
        return {node.key: i for i, node in enumerate(self.nodes)}

    @cached_property
    def graph(self):
        return Graph.from_pairs(self.n, ((i, j) for i, j, _ in self.edges))

    @cached_property
    def adjacency(self):
        """``{key: {neighbour_key: weight}}``, symmetric."""
        adj = {node.key: {} for node in self.nodes}
        for i, j, w in self.edges:
            a, b = self.nodes[i].key, self.nodes[j].key
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def weight(self, a, b):
        return self.adjacency.get(a, {}).get(b, 0)

    def degrees(self):
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    @property
    def ungeocoded(self):
        return sum(1 for node in self.nodes if not node.geocoded)


def slice_by_year(records):
    """Partition records by their ``year``; only non-empty years appear."""
    out = defaultdict(list)
    for rec in records:
        out[rec.year].append(rec)
    return dict(sorted(out.items()))


def build_network(records, year, gazetteer, min_city_papers=2):
    """Build the city network of ``year`` from ``records``.

    A city's paper count is the number of records naming it at least once;
    each record naming two distinct cities adds 1 to their link. Cities with
    fewer than ``min_city_papers`` papers are then dropped with their links
    (a single pass, not iterated). Cities missing from ``gazetteer`` stay in
    the graph without coordinates.
    """
    papers = Counter()
    weights = Counter()
    for rec in records:
        if rec.year != year:
            continue
        cities = sorted(rec.cities())
        papers.update(cities)
        weights.update(combinations(cities, 2))

    kept = sorted(k for k, c in papers.items() if c >= min_city_papers)
    nodes = []
    for key in kept:
        coords = gazetteer.get(key) if gazetteer is not None else None
        lat, lon = coords if coords is not None else (None, None)
        nodes.append(CityNode(key, papers[key], lat, lon))
    index = {key: i for i, key in enumerate(kept)}
    edges = sorted(
        (index[a], index[b], w) for (a, b), w in weights.items() if a in index and b in index
    )
    return CityYearNetwork(year, tuple(nodes), tuple(edges), len(papers) - len(kept))


def write_pajek(net):
    """Pajek ``.net`` text for ``net``.

    Vertex coordinates map longitude/latitude onto Pajek's unit square
    (x = (lon + 180) / 360, y = (90 - lat) / 180); coordinate-less cities get
    none.
    """
    lines = [f"*Vertices {net.n}"]
    for i, node in enumerate(net.nodes, start=1):
        label = str(node.key).replace('"', "'")
        if node.geocoded:
            x = (node.lon + 180.0) / 360.0
            y = (90.0 - node.lat) / 180.0
            lines.append(f'{i} "{label}" {x:.6f} {y:.6f}')
        else:
            lines.append(f'{i} "{label}"')
    lines.append("*Edges")
    lines.extend(f"{i + 1} {j + 1} {w}" for i, j, w in net.edges)
    return "\n".join(lines) + "\n"
