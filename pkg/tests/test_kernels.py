"""The numba and numpy kernel paths must agree exactly."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diffusion_scope import kernels
from diffusion_scope._accel import HAVE_NUMBA
from diffusion_scope.nullmodels import random_gnm

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def _same_partition(a, b):
    pairs = {}
    for x, y in zip(a.tolist(), b.tolist()):
        if pairs.setdefault(x, y) != y:
            return False
    return len(set(pairs.values())) == len(pairs)


@st.composite
def graphs(draw):
    n = draw(st.integers(min_value=1, max_value=25))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=60) if pairs else st.just([]))
    return n, np.array(edges, dtype=np.int64).reshape(-1, 2)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_paths_agree(graph):
    n, edges = graph
    indptr, indices = kernels.csr_from_edges(n, edges)
    assert np.array_equal(kernels._nb_triangles(indptr, indices), kernels._np_triangles(indptr, indices))
    assert _same_partition(kernels._nb_component_labels(indptr, indices),
                           kernels._np_component_labels(indptr, indices))
    src = np.arange(n, dtype=np.int64)
    assert kernels._nb_distance_sum(indptr, indices, src) == kernels._np_distance_sum(indptr, indices, src)


def test_paths_agree_on_larger_random_graph():
    g = random_gnm(600, 2400, np.random.default_rng(3))
    indptr, indices = g.csr
    src = np.arange(0, 600, 7, dtype=np.int64)
    assert kernels._nb_distance_sum(indptr, indices, src) == kernels._np_distance_sum(
        indptr, indices, src, chunk=32)
    assert np.array_equal(kernels._nb_triangles(indptr, indices), kernels._np_triangles(indptr, indices))


def test_csr_symmetric_sorted():
    indptr, indices = kernels.csr_from_edges(4, [(2, 0), (0, 1), (3, 1)])
    assert indptr.tolist() == [0, 2, 4, 5, 6]
    assert indices.tolist() == [1, 2, 0, 3, 0, 1]
