"""Cover comparison scores and per-cover structural quality measures."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from .errors import DegenerateAgreement, DegenerateCover, EmptyCover, UniverseMismatch
from .graph import Cover, Graph

log = logging.getLogger(__name__)

COMPARISONS = ("onmi", "omega", "f1")
QUALITY = ("avg_internal_degree", "internal_edge_density", "normalized_cut")


def _universe(a: Cover, b: Cover, universe: Optional[int]) -> int:
    if a.node_count != b.node_count:
        raise UniverseMismatch(f"covers are over {a.node_count} and {b.node_count} nodes")
    n = a.node_count if universe is None else int(universe)
    if n != a.node_count:
        raise UniverseMismatch(f"universe {n} differs from cover node count {a.node_count}")
    return n


def _h(p: np.ndarray) -> np.ndarray:
    """Elementwise ``-p log2 p`` with ``h(0) = 0``."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = -p[nz] * np.log2(p[nz])
    return out


def _normalized_conditional(fx: np.ndarray, fy: np.ndarray, n: int) -> float:
    """Mean over clusters X of ``H(X|Y) / H(X)`` with the LFK acceptance rule."""
    x = fx.sum(axis=0)
    y = fy.sum(axis=0)
    o = fx.T @ fy
    a = n - x[:, None] - y[None, :] + o
    b = y[None, :] - o
    c = x[:, None] - o
    hx = _h(x / n) + _h((n - x) / n)
    ha, hb, hc, hd = _h(a / n), _h(b / n), _h(c / n), _h(o / n)
    agree = ha + hd
    disagree = hb + hc
    # grouping keeps H(X|X) exactly 0: (ha + hd) - (hd + ha)
    cond = agree + disagree - (_h((b + o) / n) + _h((a + c) / n))
    cond = np.where(agree > disagree, np.maximum(cond, 0.0), np.inf)
    best = np.minimum(cond.min(axis=1), hx)
    keep = hx > 0
    if not np.any(keep):
        raise DegenerateCover("every cluster has zero entropy (empty or the whole universe)")
    return float(np.mean(best[keep] / hx[keep]))


def onmi_lfk(a: Cover, b: Cover, universe: Optional[int] = None) -> float:
    """Overlapping NMI, LFK variant.

    Each cluster is a binary membership variable over the universe. For a
    cluster X the conditional entropy given a cluster Y only counts when the
    two agreement terms outweigh the two disagreement terms; otherwise it
    falls back to H(X). Clusters with zero entropy (empty or full) are
    skipped. Result is ``1 - (N(X|Y) + N(Y|X)) / 2``.
    """
    n = _universe(a, b, universe)
    fa, fb = a.affiliation(), b.affiliation()
    fa, fb = fa[:, fa.sum(axis=0) > 0], fb[:, fb.sum(axis=0) > 0]
    return 1.0 - 0.5 * (_normalized_conditional(fa, fb, n) + _normalized_conditional(fb, fa, n))


def _pair_counts(cover: Cover) -> np.ndarray:
    f = cover.affiliation()
    co = f @ f.T
    iu = np.triu_indices(cover.node_count, 1)
    return co[iu]


def omega_index(a: Cover, b: Cover, universe: Optional[int] = None) -> float:
    """Omega index: chance-corrected agreement on pairwise co-membership counts."""
    n = _universe(a, b, universe)
    pairs = n * (n - 1) // 2
    if pairs == 0:
        raise DegenerateAgreement("need at least 2 nodes")
    ta, tb = _pair_counts(a), _pair_counts(b)
    obs = int(np.count_nonzero(ta == tb)) / pairs
    top = int(max(ta.max(), tb.max())) + 1
    na = np.bincount(ta, minlength=top).astype(object)
    nb = np.bincount(tb, minlength=top).astype(object)
    exp = int(np.dot(na, nb)) / (pairs * pairs)
    if exp == 1.0:
        raise DegenerateAgreement("expected agreement is 1; omega is undefined")
    return (obs - exp) / (1.0 - exp)


def _f1(x: frozenset, y: frozenset) -> float:
    if not x or not y:
        return 0.0
    return 2.0 * len(x & y) / (len(x) + len(y))


def f1_score(a: Cover, b: Cover) -> float:
    """Symmetric average best-match F1 between the clusters of two covers."""
    if a.cluster_count == 0 or b.cluster_count == 0:
        raise EmptyCover("F1 needs at least one cluster on each side")
    ab = np.mean([max(_f1(x, y) for y in b.memberships) for x in a.memberships])
    ba = np.mean([max(_f1(x, y) for x in a.memberships) for y in b.memberships])
    return float(0.5 * (ab + ba))


def _cluster_edge_stats(graph: Graph, cover: Cover):
    """Per cluster: size, internal edge count, cut size, volume."""
    f = cover.affiliation()
    size = f.sum(axis=0)
    if graph.edge_count:
        e = np.asarray(graph.edges)
        fu, fv = f[e[:, 0]], f[e[:, 1]]
        internal = (fu & fv).sum(axis=0)
        cut = (fu ^ fv).sum(axis=0)
    else:
        internal = cut = np.zeros(cover.cluster_count, dtype=np.int64)
    vol = (f * graph.degrees[:, None]).sum(axis=0)
    return size, internal, cut, vol


def _check_graph(graph: Graph, cover: Cover):
    if graph.node_count != cover.node_count:
        raise UniverseMismatch(f"graph has {graph.node_count} nodes, cover {cover.node_count}")


def internal_edge_density(graph: Graph, cover: Cover) -> float:
    """Mean over non-empty clusters of ``|E(C)| / C(|C|, 2)``; singletons count 0."""
    _check_graph(graph, cover)
    size, internal, _, _ = _cluster_edge_stats(graph, cover)
    vals = [i / (s * (s - 1) / 2) if s > 1 else 0.0 for s, i in zip(size, internal) if s > 0]
    return float(np.mean(vals)) if vals else 0.0


def avg_internal_degree(graph: Graph, cover: Cover) -> float:
    """Mean over non-empty clusters of ``2 |E(C)| / |C|``."""
    _check_graph(graph, cover)
    size, internal, _, _ = _cluster_edge_stats(graph, cover)
    vals = [2.0 * i / s for s, i in zip(size, internal) if s > 0]
    return float(np.mean(vals)) if vals else 0.0


def normalized_cut(graph: Graph, cover: Cover) -> float:
    """Sum over non-empty clusters of ``cut(C, V - C) / vol(C)``.

    Overlapping nodes count toward every cluster they belong to. A cover
    with no members scores 0; zero-volume clusters are skipped.
    """
    _check_graph(graph, cover)
    size, _, cut, vol = _cluster_edge_stats(graph, cover)
    total = 0.0
    for s, c, v in zip(size, cut, vol):
        if s == 0:
            continue
        if v == 0:
            log.warning("normalized cut: skipping a cluster of isolated nodes")
            continue
        total += c / v
    return float(total)


def compare(a: Cover, b: Cover, which=COMPARISONS) -> dict:
    """Requested comparison scores; ``None`` where a score is undefined."""
    funcs = {"onmi": onmi_lfk, "omega": omega_index, "f1": f1_score}
    out = {}
    for name in which:
        try:
            out[name] = funcs[name](a, b)
        except (DegenerateCover, DegenerateAgreement, EmptyCover) as exc:
            log.warning("%s undefined: %s", name, exc)
            out[name] = None
    return out


def quality(graph: Graph, cover: Cover, which=QUALITY) -> dict:
    funcs = {
        "avg_internal_degree": avg_internal_degree,
        "internal_edge_density": internal_edge_density,
        "normalized_cut": normalized_cut,
    }
    return {name: funcs[name](graph, cover) for name in which}
