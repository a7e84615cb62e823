"""Synthetic graphs with known structure.

Random generators draw from numpy's PCG64 bit generator seeded with the
given integer, one uniform per node pair in row-major ``(i < j)`` order, so
an edge set is a pure function of ``(parameters, seed)``.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionTooSmall, InvalidProbability
from .graph import Cover, Graph


def gen_lattice(rows: int, cols: int) -> Graph:
    """Open-boundary ``rows x cols`` grid; node ``r * cols + c``."""
    if rows < 2 or cols < 2:
        raise DimensionTooSmall(f"lattice needs rows, cols >= 2, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def lattice_quadrants(rows: int, cols: int) -> Cover:
    """Four-block reference cover of a lattice (top/bottom x left/right halves)."""
    blocks = [set(), set(), set(), set()]
    for r in range(rows):
        for c in range(cols):
            blocks[2 * (r >= rows // 2) + (c >= cols // 2)].add(r * cols + c)
    return Cover.from_sets(rows * cols, blocks)


def _check_probs(p_in, p_out):
    if not (0.0 <= p_out <= p_in <= 1.0):
        raise InvalidProbability(f"need 0 <= p_out <= p_in <= 1, got p_in={p_in}, p_out={p_out}")


def gen_sbm(block_sizes, p_in: float, p_out: float, seed: int):
    """Stochastic block model with uniform within/between probabilities.

    Returns the graph and the block partition as a ``Cover``.
    """
    _check_probs(p_in, p_out)
    sizes = [int(s) for s in block_sizes]
    if any(s < 1 for s in sizes):
        raise DimensionTooSmall("block sizes must be positive")
    n = sum(sizes)
    if n < 2:
        raise DimensionTooSmall("need at least 2 nodes")
    block = np.repeat(np.arange(len(sizes)), sizes)
    iu, ju = np.triu_indices(n, 1)
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(iu.size)
    prob = np.where(block[iu] == block[ju], p_in, p_out)
    hit = u < prob
    graph = Graph.from_edges(n, zip(iu[hit].tolist(), ju[hit].tolist()))
    truth = Cover.from_sets(n, [np.flatnonzero(block == b).tolist() for b in range(len(sizes))])
    return graph, truth


def gen_planted_partition(clusters: int, nodes_per_cluster: int, p_in: float, p_out: float, seed: int):
    """Planted partition: ``clusters`` equal blocks of ``nodes_per_cluster`` nodes."""
    if clusters < 1 or nodes_per_cluster < 1:
        raise DimensionTooSmall("clusters and nodes_per_cluster must be positive")
    return gen_sbm([nodes_per_cluster] * clusters, p_in, p_out, seed)
