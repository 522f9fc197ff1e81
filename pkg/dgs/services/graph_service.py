import logging
from typing import List, Tuple

import numpy as np
from scipy.sparse import csgraph

from dgs.exceptions import DisconnectedGraphError, PreconditionError
from dgs.models import VertexSubset, WeightedGraph

logger = logging.getLogger(__name__)


class GraphService:
    """Connectivity, hop metric, balls and boundaries of a weighted graph."""

    @staticmethod
    def weighted_degree(g: WeightedGraph, x: int) -> float:
        """b(x) = sum_y b(x, y)."""
        return float(g.degrees[g.check_vertex(x)])

    @staticmethod
    def components(g: WeightedGraph) -> List[List[int]]:
        count, labels = csgraph.connected_components(g.b, directed=False)
        parts: List[List[int]] = [[] for _ in range(count)]
        for x, label in enumerate(labels):
            parts[label].append(x)
        return sorted(parts, key=lambda part: part[0])

    @staticmethod
    def is_connected(g: WeightedGraph) -> bool:
        count, _ = csgraph.connected_components(g.b, directed=False)
        return count == 1

    @staticmethod
    def require_connected(g: WeightedGraph) -> None:
        count, _ = csgraph.connected_components(g.b, directed=False)
        if count != 1:
            raise DisconnectedGraphError(f"graph has {count} connected components", components=count)

    @staticmethod
    def distances_from(g: WeightedGraph, x0: int) -> np.ndarray:
        """Hop distances from x0; inf outside the component of x0. Edge weights are irrelevant."""
        x0 = g.check_vertex(x0)
        return csgraph.shortest_path(g.b, directed=False, unweighted=True, indices=x0)

    @staticmethod
    def graph_distance(g: WeightedGraph, x: int, y: int) -> float:
        y = g.check_vertex(y)
        return float(GraphService.distances_from(g, x)[y])

    @staticmethod
    def eccentricity(g: WeightedGraph, x0: int) -> int:
        """Largest finite distance from x0."""
        distances = GraphService.distances_from(g, x0)
        return int(np.max(distances[np.isfinite(distances)]))

    @staticmethod
    def ball(g: WeightedGraph, x0: int, r: int) -> VertexSubset:
        if r < 0:
            raise PreconditionError(f"ball radius must be >= 0, got {r}")
        distances = GraphService.distances_from(g, x0)
        return VertexSubset.of(g, np.flatnonzero(distances <= r).tolist())

    @staticmethod
    def boundary(g: WeightedGraph, A: VertexSubset) -> Tuple[VertexSubset, VertexSubset]:
        """(dA, dA^c): vertices of A adjacent to A^c, and vertices of A^c adjacent to A."""
        inside = A.indicator(g)
        touches_outside = g.b @ (1.0 - inside) > 0
        touches_inside = g.b @ inside > 0
        inner = np.flatnonzero((inside == 1.0) & touches_outside)
        outer = np.flatnonzero((inside == 0.0) & touches_inside)
        return VertexSubset.of(g, inner.tolist()), VertexSubset.of(g, outer.tolist())

    @staticmethod
    def exhausting_balls(g: WeightedGraph, x0: int) -> List[VertexSubset]:
        """B_0 subset B_1 subset ... ending at V, consecutive duplicates removed."""
        GraphService.require_connected(g)
        distances = GraphService.distances_from(g, x0)
        balls: List[VertexSubset] = []
        for r in range(int(np.max(distances)) + 1):
            current = VertexSubset.of(g, np.flatnonzero(distances <= r).tolist())
            if not balls or current.members != balls[-1].members:
                balls.append(current)
        return balls

    @staticmethod
    def induced_components(g: WeightedGraph, W: VertexSubset) -> List[List[int]]:
        """Connected components of the subgraph induced by W, in original indices."""
        members = W.sorted()
        if not members:
            return []
        sub = g.b[members][:, members]
        count, labels = csgraph.connected_components(sub, directed=False)
        parts: List[List[int]] = [[] for _ in range(count)]
        for position, label in enumerate(labels):
            parts[label].append(members[position])
        return sorted(parts, key=lambda part: part[0])

    @staticmethod
    def require_connected_window(g: WeightedGraph, W: VertexSubset) -> None:
        if not len(W):
            raise PreconditionError("window is empty")
        parts = GraphService.induced_components(g, W)
        if len(parts) != 1:
            raise DisconnectedGraphError(
                f"window of {len(W)} vertices splits into {len(parts)} components",
                components=len(parts)
            )

    @staticmethod
    def shortest_path(g: WeightedGraph, x: int, y: int) -> List[int]:
        """A hop-shortest path from x to y (x first)."""
        x, y = g.check_vertex(x), g.check_vertex(y)
        _, predecessors = csgraph.breadth_first_order(
            g.b, x, directed=False, return_predecessors=True
        )
        if x != y and predecessors[y] < 0:
            raise DisconnectedGraphError(f"vertices {x} and {y} lie in different components")
        path = [y]
        while path[-1] != x:
            path.append(int(predecessors[path[-1]]))
        return path[::-1]
