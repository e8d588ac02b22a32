"""Hot graph kernels over CSR adjacency.

Each public kernel has two implementations: a numba-compiled loop
(``_nb_*``) and a vectorised numpy/scipy path (``_np_*``). The public names
dispatch on :data:`diffusion_scope._accel.USE_JIT`, which is fixed at import
time from the ``DIFFUSION_SCOPE_NO_JIT`` environment variable.

All kernels take ``indptr``/``indices`` int64 arrays describing a simple
undirected graph (each edge stored in both directions, no self-loops).
"""
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ._accel import USE_JIT, njit


def csr_from_edges(n, edges):
    """Build symmetric CSR arrays from an ``(m, 2)`` integer edge array."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst.astype(np.int64)


def _to_sparse(indptr, indices):
    n = len(indptr) - 1
    data = np.ones(len(indices), dtype=np.int64)
    return sparse.csr_matrix((data, indices, indptr), shape=(n, n))


# -- connected components ----------------------------------------------------

@njit
def _nb_component_labels(indptr, indices):
    n = len(indptr) - 1
    labels = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    current = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = current
        head = 0
        tail = 1
        queue[0] = start
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if labels[v] < 0:
                    labels[v] = current
                    queue[tail] = v
                    tail += 1
        current += 1
    return labels


def _np_component_labels(indptr, indices):
    n = len(indptr) - 1
    if n == 0:
        return np.empty(0, dtype=np.int64)
    _, labels = csgraph.connected_components(_to_sparse(indptr, indices), directed=False)
    return labels.astype(np.int64)


# -- BFS distance sums ---------------------------------------------------------

@njit
def _nb_distance_sum(indptr, indices, sources):
    # sum of hop distances from each source to every node it reaches
    n = len(indptr) - 1
    dist = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    total = 0
    for s in sources:
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if dist[v] < 0:
                    dist[v] = du
                    total += du
                    queue[tail] = v
                    tail += 1
    return total


def _np_distance_sum(indptr, indices, sources, chunk=512):
    # level-synchronous BFS from a block of sources at once: frontier @ A
    n = len(indptr) - 1
    adj = _to_sparse(indptr, indices).astype(np.float32)
    sources = np.asarray(sources, dtype=np.int64)
    total = 0
    for lo in range(0, len(sources), chunk):
        block = sources[lo:lo + chunk]
        visited = np.zeros((len(block), n), dtype=bool)
        visited[np.arange(len(block)), block] = True
        frontier = visited.astype(np.float32)
        depth = 0
        while True:
            depth += 1
            reached = np.asarray((adj @ frontier.T).T) > 0
            reached &= ~visited
            count = int(reached.sum())
            if count == 0:
                break
            total += depth * count
            visited |= reached
            frontier = reached.astype(np.float32)
    return total


# -- triangles -------------------------------------------------------------------

@njit
def _nb_triangles(indptr, indices):
    n = len(indptr) - 1
    mark = np.full(n, -1, np.int64)
    tri = np.zeros(n, np.int64)
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            mark[indices[k]] = u
        t = 0
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            for j in range(indptr[v], indptr[v + 1]):
                if mark[indices[j]] == u:
                    t += 1
        tri[u] = t // 2
    return tri


def _np_triangles(indptr, indices):
    adj = _to_sparse(indptr, indices)
    paths2 = (adj @ adj).multiply(adj)
    return np.asarray(paths2.sum(axis=1)).ravel().astype(np.int64) // 2


def component_labels(indptr, indices):
    """Component id per node; ids are arbitrary but consistent within a call."""
    if USE_JIT:
        return _nb_component_labels(indptr, indices)
    return _np_component_labels(indptr, indices)


def distance_sum(indptr, indices, sources):
    """Sum over ``sources`` of BFS hop distances to all reachable nodes."""
    sources = np.ascontiguousarray(sources, dtype=np.int64)
    if USE_JIT:
        return int(_nb_distance_sum(indptr, indices, sources))
    return _np_distance_sum(indptr, indices, sources)


def triangles(indptr, indices):
    """Number of triangles through each node."""
    if USE_JIT:
        return _nb_triangles(indptr, indices)
    return _np_triangles(indptr, indices)
