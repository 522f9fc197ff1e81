from .graph import (
    MIN_EDGE_WEIGHT,
    Edge,
    GraphFunction,
    WeightedGraph,
    VertexSubset,
    as_graph_function
)

__all__ = [
    "MIN_EDGE_WEIGHT",
    "Edge",
    "GraphFunction",
    "WeightedGraph",
    "VertexSubset",
    "as_graph_function"
]
