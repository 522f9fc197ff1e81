import click

from dgs.commands.common import emit, graph_options, load_input, output_options
from dgs.middlewares import handle_errors, log_command
from dgs.services.spectral_service import SpectralService
from dgs.utils.serialization import format_real


@click.command("spectrum")
@graph_options
@output_options
@click.option("--tol", type=float, default=None, help="certified residual bound")
@click.option("--deflate", is_flag=True, help="also report the second eigenvalue")
@click.option("--oracle", is_flag=True, help="also list the dense spectrum")
@handle_errors
@log_command
def spectrum(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path, tol, deflate, oracle):
    """Ground state energy E0 of the graph."""
    g, _ = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    result = SpectralService.ground_energy(g, tol=tol)

    lines = [
        f"E0 = {format_real(result.E0)}",
        f"residual = {format_real(result.residual)}",
        f"iterations = {result.iterations}",
        f"method = {result.method}"
    ]
    if deflate and result.second_energy is not None:
        lines.append(f"E1 = {format_real(result.second_energy)}")
    report = result.model_dump()
    if oracle:
        values, _ = SpectralService.dense_spectrum(g)
        report["oracle_spectrum"] = values.tolist()
        lines.append("spectrum = " + " ".join(format_real(float(v)) for v in values))
    rows = [{"k": k, "eigenvalue": v} for k, v in enumerate(report.get("oracle_spectrum", []))]
    emit("Ground state computed", report, lines, json_path, csv_path, rows, ["k", "eigenvalue"])
