"""Graph, cover and line-graph types plus their text formats.

Nodes are dense integer indices ``0..n-1``. External string labels are kept
only for I/O; all arithmetic works on indices.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    DuplicateEdge,
    EmptyCluster,
    EmptyGraph,
    LpamError,
    MalformedLine,
    SelfLoop,
    UnknownNode,
)

TextSource = Union[str, IO[str], Iterable[str]]


def _lines(source: TextSource):
    if isinstance(source, str):
        return source.splitlines()
    return source


@dataclass(frozen=True)
class Graph:
    """Undirected simple unweighted graph with stable edge indices.

    Edges are stored once as ``(u, v)`` with ``u < v``; edge ``i`` is the
    ``i``-th pair of :attr:`edges` for the lifetime of the object.
    """

    node_count: int
    edges: tuple
    adjacency: tuple
    node_labels: Optional[tuple] = None

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable, node_labels: Optional[Sequence[str]] = None) -> "Graph":
        norm = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"self-loop on node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise LpamError(f"edge ({u}, {v}) outside 0..{node_count - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        adj = [[] for _ in range(node_count)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        labels = None
        if node_labels is not None:
            labels = tuple(str(x) for x in node_labels)
            if len(labels) != node_count:
                raise LpamError("node_labels length differs from node_count")
        return cls(node_count, tuple(norm), tuple(tuple(sorted(a)) for a in adj), labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    @property
    def volume(self) -> int:
        """Sum of degrees, i.e. twice the edge count."""
        return 2 * len(self.edges)

    def label(self, node: int) -> str:
        return self.node_labels[node] if self.node_labels is not None else str(node)

    @cached_property
    def label_index(self) -> dict:
        return {self.label(i): i for i in range(self.node_count)}

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.node_count, self.node_count))
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1.0
            a[e[:, 1], e[:, 0]] = 1.0
        return a

    def components(self) -> list:
        """Connected components as sorted node lists, largest first (ties by smallest node)."""
        seen = [False] * self.node_count
        comps = []
        for s in range(self.node_count):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        comps.sort(key=lambda c: (-len(c), c[0]))
        return comps

    def is_connected(self) -> bool:
        return self.node_count > 0 and len(self.components()) == 1

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph, nodes renumbered in ascending order, labels carried over."""
        keep = sorted(set(nodes))
        remap = {v: i for i, v in enumerate(keep)}
        edges = [(remap[u], remap[v]) for u, v in self.edges if u in remap and v in remap]
        return Graph.from_edges(len(keep), edges, [self.label(v) for v in keep])


@dataclass(frozen=True)
class Cover:
    """A family of node sets over ``0..node_count-1``.

    Clusters may overlap, may be empty, and need not cover every node.
    """

    node_count: int
    memberships: tuple

    @classmethod
    def from_sets(cls, node_count: int, clusters: Iterable[Iterable[int]]) -> "Cover":
        ms = tuple(frozenset(int(v) for v in c) for c in clusters)
        for c in ms:
            if any(v < 0 or v >= node_count for v in c):
                raise LpamError(f"cluster member outside 0..{node_count - 1}")
        return cls(node_count, ms)

    @classmethod
    def from_affiliation(cls, f: np.ndarray) -> "Cover":
        f = np.asarray(f)
        return cls(f.shape[0], tuple(frozenset(np.flatnonzero(f[:, c]).tolist()) for c in range(f.shape[1])))

    @property
    def cluster_count(self) -> int:
        return len(self.memberships)

    def affiliation(self) -> np.ndarray:
        """Binary ``node_count x k`` matrix with ``F[v, c] = 1`` iff ``v`` is in cluster ``c``."""
        f = np.zeros((self.node_count, self.cluster_count), dtype=np.int64)
        for c, members in enumerate(self.memberships):
            if members:
                f[list(members), c] = 1
        return f

    def membership_counts(self) -> np.ndarray:
        return self.affiliation().sum(axis=1)

    @property
    def overlapping_node_count(self) -> int:
        return int(np.sum(self.membership_counts() >= 2))


@dataclass(frozen=True)
class LineGraphMap:
    """Line graph of ``G`` with the edge-of-G to node-of-L(G) bijection."""

    line_graph: Graph
    edge_to_lnode: tuple
    source_edge_endpoints: tuple

    def lnode_of(self, edge: int) -> int:
        return self.edge_to_lnode[edge]


def build_line_graph(graph: Graph) -> LineGraphMap:
    """Line graph: one node per edge of ``graph``, adjacent iff the edges share an endpoint.

    Line-node ``i`` is edge ``i`` of ``graph``. The number of line edges is
    the sum over nodes of ``C(deg, 2)``.
    """
    if graph.edge_count == 0:
        raise EmptyGraph("cannot build the line graph of a graph without edges")
    incident = [[] for _ in range(graph.node_count)]
    for i, (u, v) in enumerate(graph.edges):
        incident[u].append(i)
        incident[v].append(i)
    ledges = []
    for inc in incident:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                ledges.append((inc[a], inc[b]))
    labels = [f"{graph.label(u)}-{graph.label(v)}" for u, v in graph.edges]
    lg = Graph.from_edges(graph.edge_count, ledges, labels)
    return LineGraphMap(lg, tuple(range(graph.edge_count)), graph.edges)


# --- text formats -----------------------------------------------------------

def parse_edge_list(source: TextSource) -> Graph:
    """Read a whitespace-separated edge list.

    Blank lines and lines starting with ``#`` are ignored. Node tokens are
    arbitrary strings, indexed densely in order of first appearance.
    """
    index = {}
    edges = []
    seen = set()
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(f"expected 2 node tokens, got {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            raise SelfLoop(f"self-loop on node {a!r}", lineno)
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {a!r} {b!r}", lineno)
        seen.add(e)
        edges.append(e)
    return Graph.from_edges(len(index), edges, list(index))


def format_edge_list(graph: Graph) -> str:
    return "".join(f"{graph.label(u)} {graph.label(v)}\n" for u, v in graph.edges)


def parse_cover(source: TextSource, graph: Graph, allow_empty: bool = False) -> Cover:
    """Read a cover file: one cluster per line, node tokens as in ``graph``.

    ``#`` lines are ignored. A blank line is an empty cluster, which is an
    error unless ``allow_empty``; blank lines after the last cluster are
    ignored either way.
    """
    clusters = []
    pending_blank = []
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            pending_blank.append(lineno)
            continue
        for b in pending_blank:
            if not allow_empty:
                raise EmptyCluster("empty cluster", b)
            clusters.append(frozenset())
        pending_blank = []
        members = set()
        for tok in line.split():
            try:
                members.add(graph.label_index[tok])
            except KeyError:
                raise UnknownNode(f"node {tok!r} is not in the graph", lineno) from None
        clusters.append(frozenset(members))
    return Cover(graph.node_count, tuple(clusters))


def format_cover(cover: Cover, graph: Optional[Graph] = None) -> str:
    """Cover in file format; members sorted by node index, one cluster per line."""
    label = graph.label if graph is not None else str
    return "".join(" ".join(label(v) for v in sorted(c)) + "\n" for c in cover.memberships)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def read_cover(path, graph: Graph, allow_empty: bool = False) -> Cover:
    with open(path, encoding="utf-8") as fh:
        return parse_cover(fh, graph, allow_empty=allow_empty)


def write_text(path, text: str) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- descriptive statistics --------------------------------------------------

@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    avg_clustering_coefficient: float
    known_cluster_count: Optional[int] = None
    overlapping_node_count: Optional[int] = None
    avg_internal_degree: Optional[float] = None
    internal_edge_density: Optional[float] = None
    normalized_cut: Optional[float] = None


def local_clustering(graph: Graph) -> np.ndarray:
    """Per-node clustering coefficient; 0 for nodes of degree below 2."""
    nbrs = [set(a) for a in graph.adjacency]
    out = np.zeros(graph.node_count)
    for v, adj in enumerate(graph.adjacency):
        d = len(adj)
        if d < 2:
            continue
        links = sum(1 for i, a in enumerate(adj) for b in adj[i + 1:] if b in nbrs[a])
        out[v] = links / (d * (d - 1) / 2)
    return out


def graph_stats(graph: Graph, truth: Optional[Cover] = None) -> GraphStats:
    cc = local_clustering(graph)
    avg_cc = float(cc.mean()) if graph.node_count else 0.0
    if truth is None:
        return GraphStats(graph.node_count, graph.edge_count, avg_cc)
    from . import metrics

    return GraphStats(
        graph.node_count,
        graph.edge_count,
        avg_cc,
        known_cluster_count=truth.cluster_count,
        overlapping_node_count=truth.overlapping_node_count,
        avg_internal_degree=metrics.avg_internal_degree(graph, truth),
        internal_edge_density=metrics.internal_edge_density(graph, truth),
        normalized_cut=metrics.normalized_cut(graph, truth),
    )
