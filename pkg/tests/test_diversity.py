import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from diffusion_scope.diversity import (
    AlignmentError,
    DistanceMatrix,
    LinkDistribution,
    MassDistribution,
    category_mass,
    city_mass,
    coherence,
    cognitive_distances,
    geo_diversity,
    geographic_distances,
    globalization,
    great_circle_km,
    link_mass,
    rao_stirling,
)
from diffusion_scope.network import CityNode, CityYearNetwork
from diffusion_scope.records import CityKey, PublicationRecord

R = 6371.0


def dm(d, labels=None):
    d = np.asarray(d, dtype=float)
    return DistanceMatrix(tuple(labels or range(len(d))), d)


def test_rao_examples():
    assert rao_stirling(MassDistribution((0,), np.array([1.0])), dm([[0.0]])) == 0.0
    p = MassDistribution((0, 1), np.array([0.5, 0.5]))
    assert rao_stirling(p, dm([[0, 1], [1, 0]])) == 0.5


def test_alignment_checked():
    p = MassDistribution(("a", "b"), np.array([0.5, 0.5]))
    with pytest.raises(AlignmentError):
        rao_stirling(p, dm([[0, 1], [1, 0]], ["b", "a"]))
    with pytest.raises(AlignmentError):
        globalization(LinkDistribution(("a", "b"), np.zeros((2, 2))), dm([[0, 1], [1, 0]], ["a", "c"]))


def random_instance(rng, n):
    p = rng.random(n)
    p /= p.sum()
    d = rng.random((n, n)) * rng.choice([1.0, 1000.0])
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return p, d


def test_rao_matches_brute_force():
    rng = np.random.default_rng(10)
    for _ in range(50):
        p, d = random_instance(rng, 10)
        got = rao_stirling(MassDistribution(tuple(range(10)), p), dm(d))
        assert got == pytest.approx(oracles.rao_stirling(p.tolist(), d.tolist()), rel=1e-12)


def test_globalization_examples():
    p = np.zeros((3, 3))
    p[0, 2] = p[2, 0] = 0.5
    d = np.array([[0, 5, 1000], [5, 0, 7], [1000, 7, 0]], dtype=float)
    assert globalization(LinkDistribution((0, 1, 2), p), dm(d)) == 1000.0
    assert globalization(LinkDistribution((), np.zeros((0, 0))), dm(np.zeros((0, 0)))) == 0.0


def test_globalization_matches_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(50):
        _, d = random_instance(rng, 8)
        w = rng.random((8, 8))
        w = w + w.T
        np.fill_diagonal(w, 0.0)
        w /= w.sum()
        got = globalization(LinkDistribution(tuple(range(8)), w), dm(d))
        assert got == pytest.approx(oracles.globalization(w.tolist(), d.tolist()), rel=1e-12)


def test_coherence():
    assert coherence(2.0, 2.0) == 1.0
    assert coherence(2.0, 0.0) == 0.0
    assert coherence(0.0, 1.0) is None
    assert coherence(None, 1.0) is None


@settings(max_examples=100)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=12), st.floats(0.01, 100),
       st.randoms(use_true_random=False))
def test_uniform_distance_is_scaled_gini_simpson(weights, c, rnd):
    w = np.array(weights)
    if w.sum() == 0:
        w[0] = 1.0
    p = w / w.sum()
    n = len(p)
    d = np.full((n, n), c)
    np.fill_diagonal(d, 0.0)
    labels = tuple(range(n))
    D = rao_stirling(MassDistribution(labels, p), dm(d))
    assert D == pytest.approx(c * (1 - float(np.sum(p ** 2))), abs=1e-12)
    perm = list(range(n))
    rnd.shuffle(perm)
    Dp = rao_stirling(MassDistribution(labels, p[perm]), dm(d[np.ix_(perm, perm)]))
    assert Dp == pytest.approx(D, abs=1e-12)


def test_zero_diversity_when_all_mass_on_one_label():
    p = MassDistribution((0, 1, 2), np.array([0.0, 1.0, 0.0]))
    assert rao_stirling(p, dm([[0, 4, 5], [4, 0, 6], [5, 6, 0]])) == 0.0


def test_haversine_fixed_points():
    assert great_circle_km((10.0, 20.0), (10.0, 20.0)) == 0.0
    assert great_circle_km((0, 0), (0, 180)) == pytest.approx(math.pi * R, abs=1e-9)
    assert great_circle_km((0, 0), (0, 180)) == pytest.approx(20015.09, abs=0.01)
    assert great_circle_km((0, 0), (0, 90)) == pytest.approx(10007.54, abs=0.01)


def test_haversine_against_vector_oracle():
    rng = np.random.default_rng(12)
    for _ in range(500):
        a = (rng.uniform(-90, 90), rng.uniform(-180, 180))
        b = (rng.uniform(-90, 90), rng.uniform(-180, 180))
        assert great_circle_km(a, b) == pytest.approx(oracles.great_circle_km(a, b), abs=1e-6)


def test_distance_matrix_matches_scalar():
    coords = [(46.52, 6.63), (42.36, -71.06), (-33.87, 151.21)]
    m = geographic_distances("abc", coords)
    assert m.units == "kilometers"
    for i in range(3):
        for j in range(3):
            assert m.d[i, j] == pytest.approx(great_circle_km(coords[i], coords[j]), abs=1e-9)
    assert np.array_equal(m.d, m.d.T)


def test_cognitive_distances():
    s = np.array([[1.0, 0.0, 0.3], [0.0, 1.0, 1.0], [0.3, 1.0, 1.0]])
    d = cognitive_distances(s, "xyz")
    assert d.d[0, 1] == 1.0 and d.d[1, 2] == 0.0 and d.d[0, 2] == pytest.approx(0.7)
    assert np.array_equal(cognitive_distances(np.eye(3), "xyz").d, 1 - np.eye(3))
    with pytest.raises(ValueError):
        cognitive_distances(np.array([[1.0, 0.2], [0.3, 1.0]]), "xy")
    with pytest.raises(ValueError):
        cognitive_distances(np.array([[1.0, 1.2], [1.2, 1.0]]), "xy")
    with pytest.raises(ValueError):
        cognitive_distances(np.array([[0.9, 0.2], [0.2, 1.0]]), "xy")


def rec(*cats):
    return PublicationRecord("r", 2000, (), tuple(cats))


def test_category_mass():
    m = category_mass([rec("X", "Y")], ["X", "Y", "Z"])
    assert m.p.tolist() == [0.5, 0.5, 0.0]
    assert category_mass([rec("X"), rec("X")], ["X", "Y"]).p.tolist() == [1.0, 0.0]
    assert category_mass([rec(), rec("Q")], ["X"]) is None


def net_of(nodes, edges):
    return CityYearNetwork(2000, tuple(nodes), tuple(edges))


K = [CityKey(c, "X") for c in "ABCD"]


def test_link_mass():
    one = net_of([CityNode(K[0], 2, 0, 0), CityNode(K[1], 2, 0, 1)], [(0, 1, 3)])
    lm = link_mass(one)
    assert lm.p[0, 1] == lm.p[1, 0] == 0.5
    two = net_of([CityNode(K[0], 2, 0, 0), CityNode(K[1], 2, 0, 1), CityNode(K[2], 2, 1, 0)],
                 [(0, 1, 1), (0, 2, 3)])
    lm = link_mass(two)
    assert lm.p[0, 1] + lm.p[1, 0] == pytest.approx(0.25)
    assert lm.p[0, 2] + lm.p[2, 0] == pytest.approx(0.75)
    assert len(link_mass(net_of([CityNode(K[0], 2, 0, 0)], [])).labels) == 0


def test_link_mass_skips_ungeocoded():
    net = net_of([CityNode(K[0], 2, 0, 0), CityNode(K[1], 2, 0, 1), CityNode(K[3], 2)],
                 [(0, 1, 1), (0, 2, 5)])
    lm = link_mass(net)
    assert lm.labels == (K[0], K[1])
    assert lm.p.sum() == pytest.approx(1.0, abs=1e-12)


def test_geo_diversity_two_cities():
    net = net_of([CityNode(K[0], 2, 0, 0), CityNode(K[1], 2, 0, 90)], [(0, 1, 2)])
    res = geo_diversity(net)
    quarter = math.pi * R / 2
    assert res.D == pytest.approx(0.5 * quarter)
    assert res.C == pytest.approx(quarter)
    assert res.coherence == pytest.approx(2.0)
    assert city_mass(net).p.tolist() == [0.5, 0.5]
