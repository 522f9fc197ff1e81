"""Options and helpers shared by every subcommand."""
import logging
from pathlib import Path
from typing import Any, Callable, Iterable, List, Mapping, Optional, Sequence, Tuple

import click
from pydantic import BaseModel

from dgs.config import settings
from dgs.exceptions import FixtureSpecError, InputError
from dgs.models import VertexSubset, WeightedGraph
from dgs.schemas import BaseResponse
from dgs.services.fixture_service import FixtureService
from dgs.services.graph_service import GraphService
from dgs.utils.graph_io import dump_graph, load_graph_file
from dgs.utils.serialization import to_json, write_csv, write_json

logger = logging.getLogger(__name__)


def graph_options(func: Callable) -> Callable:
    """Graph input (file or fixture), fixture overrides, seed and export."""
    options = [
        click.argument("graph", required=False, type=click.Path(dir_okay=False)),
        click.option("--fixture", help="path:N, cycle:N, star:N, z:R or random:N:P[:raw]"),
        click.option("--weights", help="edge weight override: constant or uniform:LO:HI"),
        click.option("--measure", help="measure override: constant or uniform:LO:HI"),
        click.option("--potential", help="potential override: constant or uniform:LO:HI"),
        click.option("--seed", type=int, default=None, help="seed for random fixtures and trials"),
        click.option("--export", "export_path", type=click.Path(dir_okay=False), help="write the graph in text format")
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func: Callable) -> Callable:
    func = click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="write the table as CSV")(func)
    func = click.option("--json", "json_path", type=click.Path(dir_okay=False), help="write the report as JSON")(func)
    return func


def load_input(
    graph: Optional[str],
    fixture: Optional[str],
    weights: Optional[str] = None,
    measure: Optional[str] = None,
    potential: Optional[str] = None,
    seed: Optional[int] = None,
    export_path: Optional[str] = None
) -> Tuple[WeightedGraph, int]:
    """(graph, default x0) from exactly one of a graph file or a fixture spec."""
    if (graph is None) == (fixture is None):
        raise InputError("give exactly one of a graph file or --fixture")
    if graph is not None:
        if any(v is not None for v in (weights, measure, potential)):
            raise FixtureSpecError("--weights/--measure/--potential apply to fixtures only")
        g, x0 = load_graph_file(graph), 0
    else:
        spec = FixtureService.parse_fixture(
            fixture,
            seed=settings.default_seed if seed is None else seed,
            weights=weights,
            measure=measure,
            potential=potential
        )
        g, x0 = FixtureService.build_fixture(spec)
    if export_path is not None:
        Path(export_path).write_text(dump_graph(g), encoding="utf-8")
    return g, x0


def parse_vertex_set(g: WeightedGraph, text: str, x0: int) -> VertexSubset:
    """'all', 'ball:R' around x0, or a comma-separated list of vertex labels."""
    text = text.strip()
    if text == "all":
        return VertexSubset.full(g)
    if text.startswith("ball:"):
        try:
            radius = int(text[5:])
        except ValueError:
            raise InputError(f"ball radius {text[5:]!r} is not an integer") from None
        return GraphService.ball(g, x0, radius)
    if not text:
        return VertexSubset.empty(g)
    return VertexSubset.of(g, [g.index_of(label.strip()) for label in text.split(",") if label.strip()])


def parse_reals(text: str) -> List[float]:
    try:
        return [float(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise InputError(f"{text!r} is not a comma-separated list of numbers") from None


def parse_ints(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise InputError(f"{text!r} is not a comma-separated list of integers") from None


def emit(
    message: str,
    report: Any,
    lines: Iterable[str],
    json_path: Optional[str] = None,
    csv_path: Optional[str] = None,
    rows: Optional[Sequence[Mapping[str, Any]]] = None,
    columns: Optional[Sequence[str]] = None
) -> None:
    """Write the optional files, then print either the summary lines or the JSON envelope."""
    if json_path is not None:
        write_json(json_path, report)
    if csv_path is not None and rows is not None:
        write_csv(csv_path, [r.model_dump() if isinstance(r, BaseModel) else r for r in rows], columns)

    ctx = click.get_current_context()
    if (ctx.obj or {}).get("print_json"):
        click.echo(to_json(BaseResponse(success=True, message=message, data=report)), nl=False)
        return
    for line in lines:
        click.echo(line)
