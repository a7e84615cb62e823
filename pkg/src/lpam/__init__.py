"""Overlapping community detection by link partitioning around medoids."""

from .cover import BelongingRatios, belonging_ratios, lpam, partition_edges, threshold_cover
from .distances import (
    DistanceMatrix,
    amplified_commute_distances,
    commute_distances,
    laplacian,
    pseudo_inverse,
)
from .generators import gen_lattice, gen_planted_partition, gen_sbm
from .graph import (
    Cover,
    Graph,
    GraphStats,
    LineGraphMap,
    build_line_graph,
    graph_stats,
    parse_cover,
    parse_edge_list,
)
from .kmedian import MedoidSolution, assign, objective, solve_clarans, solve_exact
from .metrics import (
    avg_internal_degree,
    f1_score,
    internal_edge_density,
    normalized_cut,
    omega_index,
    onmi_lfk,
)

__version__ = "0.1.0"
