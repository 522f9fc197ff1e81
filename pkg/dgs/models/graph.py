"""
Finite weighted graphs (V, b, c, m) and the vertex-set and function types
built on top of them.

Vertices are dense indices 0..n-1; string labels from graph files are kept
alongside for reporting. Each undirected edge is stored once, so the symmetry
b(x,y) = b(y,x) holds by construction. A graph is immutable after
construction and safe to share between threads.

On a finite graph every function w satisfies sum_y b(x,y)|w(y)| < inf, so
membership in the space the formal operator acts on is automatic and never
checked at runtime.
"""
import math
import uuid
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.sparse

from dgs.exceptions import GraphValidationError, InvalidFunctionError, InvalidVertexError

# 1/b(x,y) enters the Harnack constant; smaller weights would overflow it.
MIN_EDGE_WEIGHT = 1e-300

GraphFunction = npt.NDArray[np.float64]

Edge = Tuple[int, int, float]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Finite vertex set with symmetric edge weights b, measure m > 0 and potential c >= 0."""

    m: np.ndarray
    c: np.ndarray
    edges: Tuple[Edge, ...]
    labels: Tuple[str, ...] = ()
    token: str = field(default_factory=lambda: uuid.uuid4().hex)

    b: scipy.sparse.csr_matrix = field(init=False, repr=False)
    degrees: np.ndarray = field(init=False, repr=False)
    _weights: Dict[Tuple[int, int], float] = field(init=False, repr=False)
    _label_index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float).copy()
        c = np.asarray(self.c, dtype=float).copy()
        n = m.shape[0]
        if m.ndim != 1 or n == 0:
            raise GraphValidationError("a graph needs at least one vertex")
        if c.shape != m.shape:
            raise GraphValidationError("m and c must have one entry per vertex")
        for x in range(n):
            if not (math.isfinite(m[x]) and m[x] > 0):
                raise GraphValidationError(f"m({x}) = {m[x]!r} must be finite and > 0")
            if not (math.isfinite(c[x]) and c[x] >= 0):
                raise GraphValidationError(f"c({x}) = {c[x]!r} must be finite and >= 0")

        weights: Dict[Tuple[int, int], float] = {}
        for x, y, w in self.edges:
            x, y, w = int(x), int(y), float(w)
            if not (0 <= x < n and 0 <= y < n):
                raise GraphValidationError(f"edge ({x}, {y}) references a missing vertex")
            if x == y:
                raise GraphValidationError(f"self-loop at vertex {x}")
            if not (math.isfinite(w) and w > 0):
                raise GraphValidationError(f"b({x},{y}) = {w!r} must be finite and > 0")
            if w < MIN_EDGE_WEIGHT:
                raise GraphValidationError(f"b({x},{y}) = {w!r} is below {MIN_EDGE_WEIGHT:g}")
            key = (min(x, y), max(x, y))
            if key in weights:
                raise GraphValidationError(f"duplicate edge ({key[0]}, {key[1]})")
            weights[key] = w

        labels = tuple(str(label) for label in self.labels) or tuple(str(x) for x in range(n))
        if len(labels) != n:
            raise GraphValidationError("one label per vertex is required")
        label_index = {label: x for x, label in enumerate(labels)}
        if len(label_index) != n:
            raise GraphValidationError("vertex labels must be unique")

        edges = tuple((x, y, w) for (x, y), w in sorted(weights.items()))
        rows = np.array([e[0] for e in edges] + [e[1] for e in edges], dtype=np.int64)
        cols = np.array([e[1] for e in edges] + [e[0] for e in edges], dtype=np.int64)
        data = np.array([e[2] for e in edges] * 2, dtype=float)
        b = scipy.sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
        b.sort_indices()

        object.__setattr__(self, "m", _frozen(m))
        object.__setattr__(self, "c", _frozen(c))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "degrees", _frozen(np.asarray(b.sum(axis=1)).ravel()))
        object.__setattr__(self, "_weights", weights)
        object.__setattr__(self, "_label_index", label_index)

    @classmethod
    def build(
        cls,
        m: Sequence[float],
        c: Optional[Sequence[float]] = None,
        edges: Iterable[Edge] = (),
        labels: Sequence[str] = ()
    ) -> "WeightedGraph":
        m_array = np.asarray(m, dtype=float)
        c_array = np.zeros_like(m_array) if c is None else np.asarray(c, dtype=float)
        return cls(m=m_array, c=c_array, edges=tuple(edges), labels=tuple(labels))

    @property
    def vertex_count(self) -> int:
        return int(self.m.shape[0])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def check_vertex(self, x: int) -> int:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < self.vertex_count:
            raise InvalidVertexError(x, self.vertex_count)
        return int(x)

    def weight(self, x: int, y: int) -> float:
        """b(x, y); unstored pairs have weight 0."""
        return self._weights.get((min(x, y), max(x, y)), 0.0)

    def adjacent(self, x: int, y: int) -> bool:
        return (min(x, y), max(x, y)) in self._weights

    def neighbors(self, x: int) -> Tuple[np.ndarray, np.ndarray]:
        start, stop = self.b.indptr[x], self.b.indptr[x + 1]
        return self.b.indices[start:stop], self.b.data[start:stop]

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Undirected edges as (tails, heads, weights), each edge once."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy(), np.zeros(0)
        tails = np.array([e[0] for e in self.edges], dtype=np.int64)
        heads = np.array([e[1] for e in self.edges], dtype=np.int64)
        weights = np.array([e[2] for e in self.edges], dtype=float)
        return tails, heads, weights

    def stiffness(self) -> scipy.sparse.csr_matrix:
        """K = D - B + C, the matrix of the form Q in the vertex basis."""
        diagonal = scipy.sparse.diags(self.degrees + self.c)
        return (diagonal - self.b).tocsr()

    def label_of(self, x: int) -> str:
        return self.labels[self.check_vertex(x)]

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise InvalidVertexError(label, self.vertex_count) from None

    @property
    def is_unweighted(self) -> bool:
        """b in {0, 1}, m = 1 and c = 0."""
        return (
            all(w == 1.0 for _, _, w in self.edges)
            and bool(np.all(self.m == 1.0))
            and bool(np.all(self.c == 0.0))
        )

    def with_weights(self, edges: Iterable[Edge], c: Optional[Sequence[float]] = None) -> "WeightedGraph":
        """Same vertices and measure, new edge weights (and optionally potential)."""
        return WeightedGraph(
            m=self.m.copy(),
            c=np.zeros_like(self.m) if c is None else np.asarray(c, dtype=float),
            edges=tuple(edges),
            labels=self.labels
        )


@dataclass(frozen=True)
class VertexSubset:
    """A set A of vertex indices belonging to one graph."""

    members: FrozenSet[int]
    owner: str

    @classmethod
    def of(cls, g: WeightedGraph, members: Iterable[int]) -> "VertexSubset":
        return cls(members=frozenset(g.check_vertex(x) for x in members), owner=g.token)

    @classmethod
    def full(cls, g: WeightedGraph) -> "VertexSubset":
        return cls(members=frozenset(range(g.vertex_count)), owner=g.token)

    @classmethod
    def empty(cls, g: WeightedGraph) -> "VertexSubset":
        return cls(members=frozenset(), owner=g.token)

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def sorted(self) -> List[int]:
        return sorted(self.members)

    def indicator(self, g: WeightedGraph) -> np.ndarray:
        values = np.zeros(g.vertex_count)
        if self.members:
            values[list(self.members)] = 1.0
        return values

    def complement(self, g: WeightedGraph) -> "VertexSubset":
        return VertexSubset(members=frozenset(range(g.vertex_count)) - self.members, owner=g.token)

    def is_full(self, g: WeightedGraph) -> bool:
        return len(self.members) == g.vertex_count


def as_graph_function(g: WeightedGraph, values: Iterable[float]) -> GraphFunction:
    """Validate and copy values into a GraphFunction on g."""
    array = np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if array.ndim != 1 or array.shape[0] != g.vertex_count:
        raise InvalidFunctionError(
            f"function has shape {array.shape}, expected ({g.vertex_count},)"
        )
    if not np.all(np.isfinite(array)):
        raise InvalidFunctionError("function has non-finite entries")
    return array
