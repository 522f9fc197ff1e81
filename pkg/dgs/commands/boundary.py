import click

from dgs.commands.common import emit, graph_options, load_input, output_options, parse_vertex_set
from dgs.middlewares import handle_errors, log_command
from dgs.services.shnol_service import ShnolService
from dgs.utils.serialization import format_real


@click.command("boundary")
@graph_options
@output_options
@click.option("--set", "subset", required=True, help="A as 'all', 'ball:R' or comma-separated labels")
@click.option("--x0", type=int, default=None, help="center for ball sets (index)")
@click.option("--cheeger", is_flag=True, help="compare with Q(1_A); unweighted graphs only")
@handle_errors
@log_command
def boundary(graph, fixture, weights, measure, potential, seed, export_path, json_path, csv_path, subset, x0, cheeger):
    """Boundary measures mu and nu of a vertex set A."""
    g, default_x0 = load_input(graph, fixture, weights, measure, potential, seed, export_path)
    x0 = g.check_vertex(default_x0 if x0 is None else x0)
    A = parse_vertex_set(g, subset, x0)
    measures = ShnolService.boundary_measures(g, A)
    report = {"boundary": measures}
    if cheeger:
        report["cheeger"] = ShnolService.cheeger_compare(g, A)

    lines = []
    for side, mu, nu in (("dA", measures.mu_on_dA, measures.nu_on_dA), ("dA^c", measures.mu_on_dAc, measures.nu_on_dAc)):
        for x in mu:
            lines.append(f"{side} {g.label_of(x)} mu = {format_real(mu[x])} nu = {format_real(nu[x])}")
    if not lines:
        lines.append("A has no boundary")
    if cheeger:
        c = report["cheeger"]
        lines.append(
            f"q(1_A) = {format_real(c.q1)}  Q(1_A) = {format_real(c.Q1)}  p(1_A)^2 = {format_real(c.p1sq)}"
        )
        lines.append(f"deg_A(dA) = {c.degA_dA}  deg_A(dA^c) = {c.degA_dAc}")
        lines.append(f"chain holds = {c.chain_holds}, reverse chain holds = {c.reverse_chain_holds}")

    rows = [
        {"side": side, "vertex": g.label_of(x), "mu": mu[x], "nu": nu[x]}
        for side, mu, nu in (("dA", measures.mu_on_dA, measures.nu_on_dA), ("dAc", measures.mu_on_dAc, measures.nu_on_dAc))
        for x in mu
    ]
    emit("Boundary measures computed", report, lines, json_path, csv_path, rows, ["side", "vertex", "mu", "nu"])
