import click

from dgs.commands.common import emit, graph_options, load_input, output_options, parse_vertex_set
from dgs.middlewares import handle_errors, log_command
from dgs.services.harnack_service import HarnackService
from dgs.utils.serialization import format_real


@click.command("harnack")
@graph_options
@output_options
@click.option("-E", "energy", type=float, required=True, help="energy")
@click.option("--window", default="all", show_default=True, help="'all', 'ball:R' or comma-separated labels")
@click.option("--x0", type=int, default=None, help="center for ball windows (index)")
@click.option(
    "--method",
    type=click.Choice(["auto", "enumerate", "dijkstra"]),
    default="auto",
    show_default=True
)
@handle_errors
@log_command
def harnack(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path, energy, window, x0, method):
    """Harnack constant C_W(E) with worst pair and witness path."""
    g, default_x0 = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    x0 = g.check_vertex(default_x0 if x0 is None else x0)
    W = parse_vertex_set(g, window, x0)
    report = HarnackService.harnack_constant(g, W, energy, method=method)

    lines = [
        f"C_W(E) = {format_real(report.constant)}",
        f"worst pair = ({g.label_of(report.worst_pair[0])}, {g.label_of(report.worst_pair[1])})",
        "witness path = " + " - ".join(g.label_of(x) for x in report.witness_path),
        f"method = {report.method.value}"
    ]
    rows = [{"step": k, "vertex": g.label_of(x)} for k, x in enumerate(report.witness_path)]
    emit("Harnack constant computed", report, lines, json_path, csv_path, rows, ["step", "vertex"])
