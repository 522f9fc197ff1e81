import click

from dgs.commands.common import emit, output_options, parse_ints
from dgs.middlewares import handle_errors, log_command
from dgs.services.fixture_service import FixtureService
from dgs.services.spectral_service import SpectralService
from dgs.utils.serialization import format_real

# the star core reaches the leaves
DEFAULT_CORE_RADIUS = {"z": 3, "star": 1}


@click.command("exhaust")
@output_options
@click.option("--family", type=click.Choice(["z", "star"]), default="z", show_default=True)
@click.option("-E", "energy", type=float, required=True, help="energy below every truncation's E0")
@click.option("--radii", default="5,10,20", show_default=True, help="truncation radii (z) or leaf counts (star)")
@click.option("--core-radius", type=int, default=None, help="core ball radius  [default: 3 for z, 1 for star]")
@handle_errors
@log_command
def exhaust(json_path, csv_path, family, energy, radii, core_radius):
    """Super-solutions on growing truncations compared on a fixed core."""
    if core_radius is None:
        core_radius = DEFAULT_CORE_RADIUS[family]
    table = SpectralService.exhaustion_diagnostic(
        FixtureService.family(family), energy, parse_ints(radii), core_radius
    )
    lines = ["radius,vertex_count,sup_difference"]
    for row in table.rows:
        difference = "-" if row.sup_difference is None else format_real(row.sup_difference)
        lines.append(f"{row.radius},{row.vertex_count},{difference}")
    emit(
        "Exhaustion diagnostic computed", table, lines, json_path, csv_path, table.rows,
        ["radius", "vertex_count", "sup_difference"]
    )
