"""
Command logging: start and finish records, timing, and slow-command warnings.
"""
import functools
import logging
import time
from datetime import datetime, timezone
from typing import Callable

import click

from dgs.config import settings

# Configure loggers
command_logger = logging.getLogger("command")
performance_logger = logging.getLogger("performance")


def log_command(func: Callable) -> Callable:
    """Log a command invocation with its parameters and elapsed time."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context(silent=True)
        command = ctx.command_path if ctx is not None else func.__name__
        run_id = (ctx.obj or {}).get("run_id") if ctx is not None else None
        log_data = {
            "run_id": run_id,
            "command": command,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "params": {k: v for k, v in kwargs.items() if v is not None}
        }
        command_logger.info("Command started", extra=log_data)

        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            elapsed = time.perf_counter() - start_time
            timing = {
                "run_id": run_id,
                "command": command,
                "elapsed": elapsed,
                "slow_command": elapsed > settings.slow_command_seconds
            }
            if timing["slow_command"]:
                performance_logger.warning(f"Slow command: {command} took {elapsed:.2f}s", extra=timing)
            else:
                performance_logger.info("Command finished", extra=timing)

    return wrapper
