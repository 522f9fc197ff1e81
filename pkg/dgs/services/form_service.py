"""
The formal operator L~ and the Dirichlet form Q of a weighted graph.

    L~w(x) = (1/m(x)) [ sum_y b(x,y)(w(x) - w(y)) + c(x) w(x) ]
    Q(u,v) = 1/2 sum_{x,y} b(x,y)(u(x)-u(y))(v(x)-v(y)) + sum_x c(x)u(x)v(x)

Edge sums run over each undirected edge once, which absorbs the 1/2.
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from dgs.exceptions import NegativeFunctionError
from dgs.models import GraphFunction, WeightedGraph, as_graph_function

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormContext:
    graph: WeightedGraph
    degrees: np.ndarray = field(init=False, repr=False)
    _edges: Tuple[np.ndarray, np.ndarray, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", self.graph.degrees)
        object.__setattr__(self, "_edges", self.graph.edge_arrays())

    @classmethod
    def of(cls, g: WeightedGraph) -> "FormContext":
        return cls(graph=g)

    @property
    def edges(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._edges


def _require_positive(w: GraphFunction) -> None:
    bad = np.flatnonzero(w <= 0)
    if bad.size:
        x = int(bad[0])
        raise NegativeFunctionError(x, float(w[x]))


class FormService:
    @staticmethod
    def apply_L(ctx: FormContext, w: GraphFunction) -> GraphFunction:
        g = ctx.graph
        w = as_graph_function(g, w)
        return ((ctx.degrees + g.c) * w - g.b @ w) / g.m

    @staticmethod
    def form_Q(ctx: FormContext, u: GraphFunction, v: GraphFunction = None) -> float:
        g = ctx.graph
        u = as_graph_function(g, u)
        v = u if v is None else as_graph_function(g, v)
        tails, heads, weights = ctx.edges
        edge_part = float(np.sum(weights * (u[tails] - u[heads]) * (v[tails] - v[heads])))
        return edge_part + float(np.sum(g.c * u * v))

    @staticmethod
    def inner_m(ctx: FormContext, u: GraphFunction, v: GraphFunction) -> float:
        g = ctx.graph
        return float(np.sum(as_graph_function(g, u) * as_graph_function(g, v) * g.m))

    @staticmethod
    def norm_m(ctx: FormContext, u: GraphFunction) -> float:
        return FormService.inner_m(ctx, u, u) ** 0.5

    @staticmethod
    def gs_transform(ctx: FormContext, w: GraphFunction) -> FormContext:
        """Context over (V, b_w, 0, m) with b_w(x,y) = b(x,y) w(x) w(y)."""
        g = ctx.graph
        w = as_graph_function(g, w)
        _require_positive(w)
        edges = [(x, y, weight * w[x] * w[y]) for x, y, weight in g.edges]
        return FormContext.of(g.with_weights(edges))

    @staticmethod
    def form_Qw(ctx: FormContext, w: GraphFunction, u: GraphFunction) -> float:
        g = ctx.graph
        w = as_graph_function(g, w)
        u = as_graph_function(g, u)
        _require_positive(w)
        tails, heads, weights = ctx.edges
        ratio = u / w
        diff = ratio[tails] - ratio[heads]
        return float(np.sum(weights * w[tails] * w[heads] * diff * diff))

    @staticmethod
    def gsr_defect(ctx: FormContext, w: GraphFunction, E: float, u: GraphFunction) -> float:
        """Q(u) - Q_w(u) - E ||u||^2."""
        return (
            FormService.form_Q(ctx, u)
            - FormService.form_Qw(ctx, w, u)
            - E * FormService.inner_m(ctx, u, u)
        )

    @staticmethod
    def supersolution_weighted_defect(ctx: FormContext, w: GraphFunction, E: float, u: GraphFunction) -> float:
        """sum_x ((L~ - E)w)(x) u(x)^2 / w(x) m(x); equals gsr_defect up to rounding."""
        g = ctx.graph
        w = as_graph_function(g, w)
        u = as_graph_function(g, u)
        _require_positive(w)
        slack = FormService.apply_L(ctx, w) - E * w
        return float(np.sum(slack * u * u / w * g.m))

    @staticmethod
    def pairing_residual(ctx: FormContext, w: GraphFunction, v: GraphFunction) -> Tuple[float, float]:
        """(|<L~w,v> - <w,L~v>|, |<L~w,v> - Q(w,v)|)."""
        left = FormService.inner_m(ctx, FormService.apply_L(ctx, w), v)
        right = FormService.inner_m(ctx, w, FormService.apply_L(ctx, v))
        return abs(left - right), abs(left - FormService.form_Q(ctx, w, v))

    @staticmethod
    def contraction_defect(ctx: FormContext, u: GraphFunction) -> float:
        """Q(C o u) - Q(u) for the unit contraction C(t) = min(max(t, 0), 1)."""
        u = as_graph_function(ctx.graph, u)
        return FormService.form_Q(ctx, np.clip(u, 0.0, 1.0)) - FormService.form_Q(ctx, u)
