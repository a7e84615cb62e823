import math

import numpy as np
import pytest

from lpam import gen_lattice, gen_planted_partition, gen_sbm
from lpam.errors import DimensionTooSmall, InvalidProbability


def test_lattice_8x8():
    g = gen_lattice(8, 8)
    assert (g.node_count, g.edge_count) == (64, 112)
    assert g.is_connected()
    # open boundary: corners have degree 2
    assert [g.degrees[i] for i in (0, 7, 56, 63)] == [2, 2, 2, 2]


def test_lattice_2x2_is_four_cycle():
    g = gen_lattice(2, 2)
    assert g.edge_count == 4
    assert set(g.edges) == {(0, 1), (0, 2), (1, 3), (2, 3)}


@pytest.mark.parametrize("rows, cols", [(1, 5), (5, 1), (0, 0)])
def test_lattice_too_small(rows, cols):
    with pytest.raises(DimensionTooSmall):
        gen_lattice(rows, cols)


@pytest.mark.parametrize("rows, cols", [(2, 3), (3, 7), (5, 5)])
def test_lattice_edge_formula(rows, cols):
    assert gen_lattice(rows, cols).edge_count == rows * (cols - 1) + cols * (rows - 1)


def test_planted_partition_shape():
    g, truth = gen_planted_partition(6, 5, 0.20, 0.10, seed=3)
    assert g.node_count == 30
    assert truth.cluster_count == 6
    assert all(len(c) == 5 for c in truth.memberships)


def test_planted_partition_cliques():
    g, truth = gen_planted_partition(3, 4, 1.0, 0.0, seed=1)
    assert g.edge_count == 3 * 6
    assert [sorted(c) for c in g.components()] == [sorted(c) for c in truth.memberships]


def test_planted_partition_expected_edges():
    counts = [gen_planted_partition(6, 5, 0.20, 0.10, seed=s)[0].edge_count for s in range(1000)]
    expected = 6 * math.comb(5, 2) * 0.2 + (math.comb(30, 2) - 60) * 0.1
    assert expected == pytest.approx(49.5)
    assert abs(np.mean(counts) - expected) <= 3


def test_sbm_sizes():
    sizes = [10, 10, 10, 10, 10, 9, 9]
    g, truth = gen_sbm(sizes, 0.2, 0.1, seed=0)
    assert g.node_count == 68 and truth.cluster_count == 7


def test_sbm_two_disjoint_edges():
    g, _ = gen_sbm([2, 2], 1.0, 0.0, seed=5)
    assert set(g.edges) == {(0, 1), (2, 3)}


def test_sbm_degree_parity():
    for s in range(20):
        g, _ = gen_sbm([5, 5], 0.5, 0.5, seed=s)
        assert int(g.degrees.sum()) % 2 == 0


def test_reproducible():
    a = gen_sbm([6, 7, 8], 0.4, 0.1, seed=11)[0]
    b = gen_sbm([6, 7, 8], 0.4, 0.1, seed=11)[0]
    c = gen_sbm([6, 7, 8], 0.4, 0.1, seed=12)[0]
    assert a.edges == b.edges
    assert a.edges != c.edges


@pytest.mark.parametrize("p_in, p_out", [(1.5, 0.1), (0.2, -0.1), (0.1, 0.2)])
def test_invalid_probability(p_in, p_out):
    with pytest.raises(InvalidProbability):
        gen_sbm([3, 3], p_in, p_out, seed=0)


def test_equal_probabilities_blocks_indistinguishable():
    p, seeds = 0.3, 1000
    intra = inter = 0
    for s in range(seeds):
        g, truth = gen_planted_partition(3, 6, p, p, seed=s)
        block = np.repeat(np.arange(3), 6)
        e = np.asarray(g.edges)
        same = block[e[:, 0]] == block[e[:, 1]]
        intra += int(same.sum())
        inter += int((~same).sum())
    n_intra = 3 * math.comb(6, 2) * seeds
    n_inter = (math.comb(18, 2) - 3 * math.comb(6, 2)) * seeds
    d_intra, d_inter = intra / n_intra, inter / n_inter
    sigma = math.sqrt(p * (1 - p) * (1 / n_intra + 1 / n_inter))
    assert abs(d_intra - d_inter) < 3 * sigma
