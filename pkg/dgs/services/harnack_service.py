"""
Harnack constants for nonnegative super-solutions on a finite window W.

Walking along an edge x -> y inside W, a super-solution at energy E obeys
w(y) <= f(x, y) w(x) with f(x, y) = (b(x) + c(x) - m(x)E) / b(x, y). The
constant C_W(E) is the largest, over ordered pairs in W, of the cheapest
product of factors along a simple path inside W.
"""
import heapq
import logging
import math
from itertools import count
from typing import Dict, List, Optional, Tuple

import numpy as np

from dgs.config import settings
from dgs.exceptions import (
    EnergyTooHighError,
    NegativeFunctionError,
    NotAdjacentError,
    NotASupersolutionError,
    PreconditionError,
    SizeGuardError
)
from dgs.models import GraphFunction, VertexSubset, WeightedGraph, as_graph_function
from dgs.schemas import HarnackCheck, HarnackMethod, HarnackReport, MinimumPrincipleOutcome, VertexBound
from dgs.services.form_service import FormContext, FormService
from dgs.services.graph_service import GraphService
from dgs.services.spectral_service import SpectralService
from dgs.utils.tolerance import scaled_tolerance

logger = logging.getLogger(__name__)

Factors = Dict[int, List[Tuple[int, float]]]
Route = Tuple[float, List[int]]


class HarnackService:

    @staticmethod
    def edge_factor(g: WeightedGraph, E: float, x: int, y: int) -> float:
        x, y = g.check_vertex(x), g.check_vertex(y)
        if not g.adjacent(x, y):
            raise NotAdjacentError(x, y)
        factor = (g.degrees[x] + g.c[x] - g.m[x] * E) / g.weight(x, y)
        if factor <= 0:
            raise EnergyTooHighError(
                E,
                float((g.degrees[x] + g.c[x]) / g.m[x]),
                detail=f"edge factor {x}->{y} is {factor!r}; only w = 0 is a nonnegative super-solution"
            )
        return float(factor)

    @staticmethod
    def _factors(g: WeightedGraph, W: VertexSubset, E: float) -> Factors:
        factors: Factors = {}
        for x in W:
            neighbors, _ = g.neighbors(x)
            factors[x] = [(int(y), HarnackService.edge_factor(g, E, x, int(y))) for y in neighbors if int(y) in W]
        return factors

    @staticmethod
    def _path_product(g: WeightedGraph, E: float, path: List[int]) -> float:
        return math.prod(HarnackService.edge_factor(g, E, a, b) for a, b in zip(path, path[1:]))

    @staticmethod
    def _dijkstra(factors: Factors, source: int) -> Dict[int, List[int]]:
        """Cheapest path from source under log-costs; all factors are >= 1 so costs are >= 0."""
        dist = {source: 0.0}
        paths = {source: [source]}
        tie = count()
        fringe = [(0.0, next(tie), source)]
        done = set()
        while fringe:
            d, _, x = heapq.heappop(fringe)
            if x in done:
                continue
            done.add(x)
            for y, factor in factors[x]:
                candidate = d + math.log(factor)
                if y not in dist or candidate < dist[y]:
                    dist[y] = candidate
                    paths[y] = paths[x] + [y]
                    heapq.heappush(fringe, (candidate, next(tie), y))
        return paths

    @staticmethod
    def _enumerate(factors: Factors, source: int) -> Dict[int, Route]:
        """Minimum product over every simple path from source, by depth-first search."""
        best: Dict[int, Route] = {}
        stack = [(source, 1.0, [source])]
        while stack:
            x, product, path = stack.pop()
            if x != source and (x not in best or product < best[x][0]):
                best[x] = (product, path)
            for y, factor in factors[x]:
                if y not in path:
                    stack.append((y, product * factor, path + [y]))
        return best

    @staticmethod
    def harnack_constant(
        g: WeightedGraph,
        W: VertexSubset,
        E: float,
        method: str = "auto"
    ) -> HarnackReport:
        """max over x != y in W of the min over simple paths in W of the product of edge factors."""
        if method not in ("auto", "enumerate", "dijkstra"):
            raise PreconditionError(f"unknown Harnack method {method!r}")
        GraphService.require_connected_window(g, W)
        window = W.sorted()
        if len(window) == 1:
            x = window[0]
            return HarnackReport(
                E=E, window=window, constant=1.0, worst_pair=(x, x), witness_path=[x],
                method=HarnackMethod.EXACT_ENUMERATION
            )

        factors = HarnackService._factors(g, W, E)
        monotone = all(factor >= 1.0 for edges in factors.values() for _, factor in edges)
        if method == "dijkstra" and not monotone:
            raise PreconditionError("Dijkstra is exact only when every edge factor is >= 1")
        use_dijkstra = monotone and method != "enumerate"
        if not use_dijkstra and len(window) > settings.harnack_enumeration_limit:
            raise SizeGuardError(len(window), settings.harnack_enumeration_limit, what="Harnack window")

        constant = -math.inf
        worst: Tuple[int, int] = (window[0], window[1])
        witness: List[int] = []
        for x in window:
            if use_dijkstra:
                routes = {
                    y: (HarnackService._path_product(g, E, path), path)
                    for y, path in HarnackService._dijkstra(factors, x).items()
                }
            else:
                routes = HarnackService._enumerate(factors, x)
            for y in window:
                if y == x:
                    continue
                product, path = routes[y]
                if product > constant:
                    constant, worst, witness = product, (x, y), path

        logger.debug(
            "Harnack constant computed",
            extra={"E": E, "window_size": len(window), "constant": constant, "dijkstra": use_dijkstra}
        )
        return HarnackReport(
            E=E,
            window=window,
            constant=constant,
            worst_pair=worst,
            witness_path=witness,
            method=HarnackMethod.DIJKSTRA if use_dijkstra else HarnackMethod.EXACT_ENUMERATION
        )

    @staticmethod
    def _gate(g: WeightedGraph, W: VertexSubset, E: float, w: GraphFunction, tol: Optional[float]) -> np.ndarray:
        w = as_graph_function(g, w)
        negative = np.flatnonzero(w < 0)
        if negative.size:
            raise NegativeFunctionError(int(negative[0]), float(w[negative[0]]))
        if not SpectralService.is_supersolution(g, w, E, W, tol=tol):
            slack = (FormService.apply_L(FormContext.of(g), w) - E * w)[W.sorted()]
            raise NotASupersolutionError(float(np.min(slack)), E)
        return w

    @staticmethod
    def harnack_verify(
        g: WeightedGraph,
        W: VertexSubset,
        E: float,
        w: GraphFunction,
        tol: Optional[float] = None
    ) -> HarnackCheck:
        w = HarnackService._gate(g, W, E, w, tol)
        report = HarnackService.harnack_constant(g, W, E)
        values = w[W.sorted()]
        largest, smallest = float(np.max(values)), float(np.min(values))
        allowed = scaled_tolerance(largest, base=tol)
        return HarnackCheck(
            holds=largest <= report.constant * smallest + allowed,
            constant=report.constant,
            max_value=largest,
            min_value=smallest,
            ratio=largest / smallest if smallest > 0 else None
        )

    @staticmethod
    def minimum_principle_check(
        g: WeightedGraph,
        W: VertexSubset,
        w: GraphFunction,
        E: float,
        tol: Optional[float] = None
    ) -> MinimumPrincipleOutcome:
        GraphService.require_connected_window(g, W)
        w = HarnackService._gate(g, W, E, w, tol)
        values = w[W.sorted()]
        if np.all(values > 0):
            return MinimumPrincipleOutcome.ALL_POSITIVE
        if np.all(values == 0):
            return MinimumPrincipleOutcome.ALL_ZERO
        logger.warning("Minimum principle violated", extra={"E": E, "window_size": len(values)})
        return MinimumPrincipleOutcome.VIOLATION

    @staticmethod
    def vertex_bound(
        g: WeightedGraph,
        x0: int,
        x: int,
        interval: Tuple[float, float],
        e0: Optional[float] = None
    ) -> VertexBound:
        """C_x with C_x^-1 <= w(x) <= C_x for super-solutions normalized by w(x0) = 1, E in the interval."""
        low, high = float(interval[0]), float(interval[1])
        if not (math.isfinite(low) and math.isfinite(high)) or low > high:
            raise PreconditionError(f"energy interval [{low}, {high}] must be bounded and non-empty")
        path = GraphService.shortest_path(g, x0, x)
        if e0 is None:
            e0 = SpectralService.ground_energy(g).E0
        if high > e0 + scaled_tolerance(e0):
            raise EnergyTooHighError(high, e0, detail=f"interval reaches {high!r} above E0 = {e0!r}")
        report = HarnackService.harnack_constant(g, VertexSubset.of(g, path), low)
        return VertexBound(x0=path[0], x=path[-1], energy=low, constant=report.constant, path=path)
