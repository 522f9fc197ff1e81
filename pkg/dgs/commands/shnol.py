import click

from dgs.commands.common import emit, graph_options, load_input, output_options, parse_reals
from dgs.exceptions import InputError
from dgs.middlewares import handle_errors, log_command
from dgs.services.fixture_service import FixtureService
from dgs.services.shnol_service import DEFAULT_DELTAS, ShnolService
from dgs.utils.serialization import format_real

COLUMNS = ["n", "norm", "p", "q", "quot_p", "quot_q", "weyl"]


def _cell(value):
    return "-" if value is None else format_real(value)


@click.command("shnol")
@graph_options
@output_options
@click.option("--solution", required=True, help="cos:THETA, geometric:T or file:PATH")
@click.option("-E", "energy", type=float, default=None, help="energy; defaults to the one of a closed-form solution")
@click.option("--x0", type=int, default=None, help="ball center (index)")
@click.option("--max-radius", type=int, default=10, show_default=True)
@click.option("--bounded", is_flag=True, help="also run the bounded-Laplacian subexponential analysis")
@click.option("--alphas", default="0.5,0.1,0.01", show_default=True, help="damping rates for --bounded")
@click.option("--deltas", default=",".join(str(d) for d in DEFAULT_DELTAS), show_default=True)
@click.option("--tol", type=float, default=None, help="solution check tolerance")
@handle_errors
@log_command
def shnol(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path,
          solution, energy, x0, max_radius, bounded, alphas, deltas, tol):
    """Shnol quotients p/||w_n||, q/||w_n|| and Weyl residuals along balls."""
    g, default_x0 = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    x0 = g.check_vertex(default_x0 if x0 is None else x0)
    w = FixtureService.parse_solution(solution, g)
    if energy is None:
        energy = FixtureService.solution_energy(solution)
        if energy is None:
            raise InputError("-E is required for file solutions")

    report = ShnolService.shnol_sequence(g, w, energy, x0, max_radius, tol=tol)
    payload = {"shnol": report}
    lines = [
        f"E = {format_real(report.E)}, x0 = {g.label_of(x0)}, interior residual = {format_real(report.interior_residual)}",
        ",".join(COLUMNS)
    ]
    for row in report.rows:
        lines.append(",".join([str(row.n)] + [_cell(getattr(row, c)) for c in COLUMNS[1:]]))
    if report.oracle_distance is not None:
        lines.append(f"distance from E to the spectrum = {format_real(report.oracle_distance)}")
    lines.append("spectral evidence" if report.spectral_evidence else "no spectral evidence")

    if bounded:
        run = ShnolService.bounded_shnol_run(
            g, w, energy, x0, parse_reals(alphas), parse_reals(deltas), tol=tol
        )
        payload["bounded"] = run
        lines.append(f"C_b = {format_real(run.C_b)}, bracketing holds = {run.bracketing_holds}")
        for norm in run.weighted_norms:
            flag = "" if norm.settled else "  (not settled on this truncation)"
            lines.append(f"alpha = {format_real(norm.alpha)}: ||e^(-alpha d) w|| = {format_real(norm.norm)}{flag}")
        for row in run.subexp:
            lines.append(
                f"delta = {format_real(row.delta)}: "
                + ("no radius found" if row.radius is None else f"n_k = {row.n_k}, bound = {format_real(row.normalized_bound)}")
            )
        lines.append("subexponential" if run.subexponential else "not subexponential on this truncation")

    emit("Shnol sequence computed", payload, lines, json_path, csv_path, report.rows, COLUMNS)
