import click

from dgs.commands.common import emit, graph_options, load_input, output_options
from dgs.middlewares import handle_errors, log_command
from dgs.services.graph_service import GraphService
from dgs.services.spectral_service import SpectralService
from dgs.utils.serialization import format_real


@click.command("supersol")
@graph_options
@output_options
@click.option("-E", "energy", type=float, required=True, help="energy below E0")
@click.option("--x0", type=int, default=None, help="normalization vertex (index)")
@click.option("-r", "--radius", type=int, default=1, show_default=True, help="window radius around x0")
@click.option("--tol", type=float, default=None, help="relative residual of the resolvent solve")
@handle_errors
@log_command
def supersol(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path, energy, x0, radius, tol):
    """Positive super-solution at E, normalized at x0, exact on ball(x0, r)."""
    g, default_x0 = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    x0 = g.check_vertex(default_x0 if x0 is None else x0)
    window = GraphService.ball(g, x0, radius)
    certificate = SpectralService.construct_supersolution(g, energy, x0, window, tol=tol)

    lines = [
        f"E = {format_real(certificate.E)}  (E0 = {format_real(certificate.E0)})",
        f"x0 = {g.label_of(certificate.x0)}, window size = {len(certificate.window)}",
        f"min slack on window = {format_real(certificate.min_slack)}"
    ]
    lines += [f"{g.label_of(x)} {format_real(value)}" for x, value in enumerate(certificate.w)]
    rows = [{"vertex": g.label_of(x), "w": value} for x, value in enumerate(certificate.w)]
    emit("Super-solution constructed", certificate, lines, json_path, csv_path, rows, ["vertex", "w"])
