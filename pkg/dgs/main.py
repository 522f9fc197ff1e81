import logging
import uuid

import click

from dgs.commands import boundary, exhaust, gsr_check, harnack, shnol, spectrum, supersol
from dgs.config import settings


def configure_logging(verbose: bool = False) -> None:
    """Logs go to stderr; stdout carries reports only."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.log_level.upper(),
        format=settings.log_format,
        force=True
    )


@click.group(name=settings.app_name)
@click.version_option(settings.version, prog_name=settings.app_name)
@click.option("--verbose", is_flag=True, help="debug logging on stderr")
@click.option("--print-json", is_flag=True, help="print reports as a JSON envelope on stdout")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, print_json: bool):
    """Dirichlet forms, ground states and spectra of finite weighted graphs."""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj.update(print_json=print_json, run_id=str(uuid.uuid4()))


cli.add_command(spectrum)
cli.add_command(supersol)
cli.add_command(harnack)
cli.add_command(shnol)
cli.add_command(gsr_check)
cli.add_command(boundary)
cli.add_command(exhaust)


def main() -> None:
    cli(prog_name=settings.app_name)
