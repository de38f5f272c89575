"""segrep: a workbench for grounded L-shape, stick, and stabbed grid
intersection representations of graphs.

The library provides exact (rational-arithmetic) representation verifiers,
brute-force recognizers that emit witness representations, and the two
constructive reduction pipelines that connect stick graphs to grounded
L-graphs and planar layouts to stabbed grid representations.
"""

from .graphs import (
    BipartiteGraph,
    Graph,
    OddCycleError,
    apex_graph,
    bipartition,
    full_subdivision,
    girth,
    parse_graph,
    serialize_graph,
)

__all__ = [
    "BipartiteGraph",
    "Graph",
    "OddCycleError",
    "apex_graph",
    "bipartition",
    "full_subdivision",
    "girth",
    "parse_graph",
    "serialize_graph",
]

__version__ = "0.1.0"
