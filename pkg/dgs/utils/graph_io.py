"""
Line-oriented text format for weighted graphs.

    # comment
    v <label> <m> <c>
    e <label1> <label2> <b>

Every label is declared by a `v` line before use and each undirected edge
appears exactly once.
"""
import logging
import math
from pathlib import Path
from typing import Dict, List, Tuple, Union

from dgs.exceptions import GraphParseError, GraphValidationError
from dgs.models import MIN_EDGE_WEIGHT, WeightedGraph

logger = logging.getLogger(__name__)


def _number(token: str, line_no: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphParseError(f"{what} {token!r} is not a number", line=line_no) from None
    if not math.isfinite(value):
        raise GraphParseError(f"{what} {token!r} is not finite", line=line_no)
    return value


def load_graph(source: str) -> WeightedGraph:
    """Parse the text format into a validated WeightedGraph."""
    labels: List[str] = []
    index: Dict[str, int] = {}
    measures: List[float] = []
    potentials: List[float] = []
    edges: List[Tuple[int, int, float]] = []
    seen_edges: Dict[Tuple[int, int], int] = {}

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]

        if kind == "v":
            if len(parts) != 4:
                raise GraphParseError("vertex lines read 'v <label> <m> <c>'", line=line_no)
            label = parts[1]
            if label in index:
                raise GraphValidationError(f"vertex {label!r} declared twice", line=line_no)
            m = _number(parts[2], line_no, "measure")
            c = _number(parts[3], line_no, "potential")
            if m <= 0:
                raise GraphValidationError(f"m({label}) = {parts[2]} must be > 0", line=line_no)
            if c < 0:
                raise GraphValidationError(f"c({label}) = {parts[3]} must be >= 0", line=line_no)
            index[label] = len(labels)
            labels.append(label)
            measures.append(m)
            potentials.append(c)

        elif kind == "e":
            if len(parts) != 4:
                raise GraphParseError("edge lines read 'e <label1> <label2> <b>'", line=line_no)
            first, second = parts[1], parts[2]
            for label in (first, second):
                if label not in index:
                    raise GraphValidationError(f"vertex {label!r} used before declaration", line=line_no)
            x, y = index[first], index[second]
            if x == y:
                raise GraphValidationError(f"self-loop at {first!r}", line=line_no)
            weight = _number(parts[3], line_no, "weight")
            if weight <= 0:
                raise GraphValidationError(f"b({first},{second}) = {parts[3]} must be > 0", line=line_no)
            if weight < MIN_EDGE_WEIGHT:
                raise GraphValidationError(
                    f"b({first},{second}) = {parts[3]} is below {MIN_EDGE_WEIGHT:g}", line=line_no
                )
            key = (min(x, y), max(x, y))
            if key in seen_edges:
                raise GraphValidationError(
                    f"duplicate edge {first}-{second} (first stated on line {seen_edges[key]})", line=line_no
                )
            seen_edges[key] = line_no
            edges.append((x, y, weight))

        else:
            raise GraphParseError(f"unknown record type {kind!r}", line=line_no)

    if not labels:
        raise GraphParseError("no vertices declared")

    graph = WeightedGraph.build(m=measures, c=potentials, edges=edges, labels=labels)
    logger.debug(
        "Graph loaded",
        extra={"vertex_count": graph.vertex_count, "edge_count": graph.edge_count}
    )
    return graph


def load_graph_file(path: Union[str, Path]) -> WeightedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise GraphParseError(f"cannot read graph file {path}: {e}") from None
    return load_graph(text)


def dump_graph(g: WeightedGraph) -> str:
    """Render g in the text format; load_graph(dump_graph(g)) reproduces g."""
    lines = [f"# {g.vertex_count} vertices, {g.edge_count} edges"]
    for x, label in enumerate(g.labels):
        lines.append(f"v {label} {float(g.m[x])!r} {float(g.c[x])!r}")
    for x, y, weight in g.edges:
        lines.append(f"e {g.labels[x]} {g.labels[y]} {float(weight)!r}")
    return "\n".join(lines) + "\n"
