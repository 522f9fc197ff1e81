import click

from dgs.commands.common import emit, graph_options, load_input, output_options
from dgs.exceptions import NumericalError
from dgs.middlewares import handle_errors, log_command
from dgs.services.spectral_service import SpectralService
from dgs.utils.serialization import format_real


@click.command("gsr-check")
@graph_options
@output_options
@click.option("--trials", type=int, default=100, show_default=True, help="random test functions")
@click.option("--below", type=int, default=0, show_default=True, help="super-solution energies E0 - k*spacing to test")
@click.option("--spacing", type=float, default=0.1, show_default=True)
@handle_errors
@log_command
def gsr_check(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path, trials, below, spacing):
    """Check Q(u) = Q_w(u) + E0 ||u||^2 at the ground state on random u."""
    g, _ = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    report = SpectralService.gsr_check(g, trials=trials, seed=seed, below=below, spacing=spacing)

    lines = [
        f"E0 = {format_real(report.E0)}",
        f"max |defect| = {format_real(report.max_abs_defect)} (tolerance {format_real(report.tolerance)})"
    ]
    if report.min_supersolution_defect is not None:
        lines.append(f"min super-solution defect = {format_real(report.min_supersolution_defect)}")
    lines.append("pass" if report.passed else "FAIL")
    emit("Ground state representation checked", report, lines, json_path)
    if not report.passed:
        raise NumericalError("ground state representation check failed", error_code="GSR_001")
