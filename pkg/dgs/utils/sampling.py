"""Seeded random functions used by the property checks."""
from typing import Optional

import numpy as np

from dgs.config import settings
from dgs.models import GraphFunction, WeightedGraph


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(settings.default_seed if seed is None else seed)


def random_function(g: WeightedGraph, rng: np.random.Generator, scale: float = 1.0) -> GraphFunction:
    return rng.uniform(-scale, scale, size=g.vertex_count)


def random_compact_function(
    g: WeightedGraph,
    rng: np.random.Generator,
    radius: Optional[int] = None
) -> GraphFunction:
    """Random values on the ball of the given radius around a uniformly chosen center, zero elsewhere."""
    from dgs.services.graph_service import GraphService

    radius = settings.pairing_support_radius if radius is None else radius
    center = int(rng.integers(g.vertex_count))
    support = GraphService.ball(g, center, radius).sorted()
    values = np.zeros(g.vertex_count)
    values[support] = rng.uniform(-1.0, 1.0, size=len(support))
    return values
