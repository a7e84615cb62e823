"""Laplacian pseudoinverse and the commute / amplified commute distances.

Effective resistance is taken from the Moore-Penrose pseudoinverse of the
Laplacian, ``r(i, j) = L+_ii + L+_jj - 2 L+_ij``, which equals the ratio of
Kirchhoff minors and costs one symmetric eigendecomposition for all pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO

import numpy as np

from .errors import DisconnectedGraph, EigenFailure, InvalidParams, IsolatedNode
from .graph import Graph

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
KINDS = ("cm", "acm")


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense symmetric pairwise distances with zero diagonal.

    ``clamped`` counts off-diagonal entries that came out non-positive and
    were set to 0 (only the amplified commute distance can produce them).
    """

    matrix: np.ndarray
    kind: str
    clamped: int = 0

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def laplacian(graph: Graph) -> np.ndarray:
    """Kirchhoff matrix ``Deg - Adj`` as a dense float array."""
    a = graph.adjacency_matrix()
    return np.diag(a.sum(axis=1)) - a


def pseudo_inverse(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a symmetric matrix via ``eigh``.

    Eigenvalues with ``|lambda| <= tol * max|lambda|`` are treated as zero.
    The result is exactly symmetric.
    """
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return m.copy()
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    scale = np.max(np.abs(w))
    if scale == 0.0:
        return np.zeros_like(m)
    keep = np.abs(w) > tol * scale
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / w[keep]
    p = (v * inv) @ v.T
    return (p + p.T) / 2.0


def _require_connected(graph: Graph):
    if graph.node_count < 2:
        raise DisconnectedGraph("distances need at least 2 nodes")
    if not graph.is_connected():
        n = len(graph.components())
        raise DisconnectedGraph(f"graph has {n} connected components; commute distance is undefined across them")


def resistance_distances(graph: Graph, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Effective resistance between every pair of nodes of a connected graph."""
    _require_connected(graph)
    p = pseudo_inverse(laplacian(graph), tol)
    d = np.diag(p)
    r = d[:, None] + d[None, :] - 2.0 * p
    np.fill_diagonal(r, 0.0)
    return r


def commute_distances(graph: Graph, tol: float = DEFAULT_TOL) -> DistanceMatrix:
    """Commute-time distance ``vol(G) * r(i, j)``."""
    r = resistance_distances(graph, tol)
    return DistanceMatrix(graph.volume * r, "cm")


def amplified_commute_distances(graph: Graph, tol: float = DEFAULT_TOL) -> DistanceMatrix:
    """Amplified commute distance.

    ``d_cm/vol - 1/d_i - 1/d_j + 2 w_ij/(d_i d_j) - w_ii/d_i^2 - w_jj/d_j^2``
    with unit weights on present edges. The self-weight terms vanish on
    simple graphs. Off-diagonal entries at or below ``1e-12 * max`` are
    clamped to 0 and counted; these arise e.g. between two leaves hanging
    off a common neighbour, where the exact value is 0.
    """
    _require_connected(graph)
    deg = graph.degrees.astype(float)
    if np.any(deg == 0):
        raise IsolatedNode("amplified commute distance is undefined for degree-0 nodes")
    cm = commute_distances(graph, tol).matrix
    w = graph.adjacency_matrix()
    w_self = np.diag(w)
    inv = 1.0 / deg
    amp = (
        cm / graph.volume
        - inv[:, None]
        - inv[None, :]
        + 2.0 * w * np.outer(inv, inv)
        - (w_self * inv * inv)[:, None]
        - (w_self * inv * inv)[None, :]
    )
    amp = (amp + amp.T) / 2.0
    np.fill_diagonal(amp, 0.0)
    floor = 1e-12 * max(float(np.max(np.abs(amp))), 1.0)
    low = amp <= floor
    np.fill_diagonal(low, False)
    clamped = int(np.count_nonzero(low)) // 2
    if clamped:
        log.warning("amplified commute distance: %d node pairs clamped to 0", clamped)
        amp[low] = 0.0
    return DistanceMatrix(amp, "acm", clamped)


def edge_distances(graph: Graph, kind: str, tol: float = DEFAULT_TOL) -> DistanceMatrix:
    """Distance of ``kind`` (``"cm"`` or ``"acm"``) between nodes of ``graph``."""
    if kind == "cm":
        return commute_distances(graph, tol)
    if kind == "acm":
        return amplified_commute_distances(graph, tol)
    raise InvalidParams(f"unknown distance kind {kind!r}; expected one of {KINDS}")


def write_tsv(dm: DistanceMatrix, stream: IO[str]) -> None:
    """Row-major TSV dump, ``%.12g`` per entry."""
    for row in dm.matrix:
        stream.write("\t".join("%.12g" % x for x in row))
        stream.write("\n")
