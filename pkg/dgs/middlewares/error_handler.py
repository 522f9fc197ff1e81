"""
Error handling for CLI commands.
Turns exceptions into a consistent error report on stderr and a process exit code.
"""
import functools
import logging
import uuid
from datetime import datetime, timezone
from typing import Any, Callable, Dict, Optional

import click

from dgs.config import settings
from dgs.exceptions import EXIT_NUMERICAL_ERROR, BaseCustomException
from dgs.utils.serialization import to_json

# Configure logger
logger = logging.getLogger(__name__)


class ErrorResponse:
    """Standard error report format."""

    def __init__(
        self,
        error_code: str,
        message: str,
        user_message: str,
        details: Optional[Dict[str, Any]] = None,
        run_id: Optional[str] = None,
        timestamp: Optional[str] = None
    ):
        self.error_code = error_code
        self.message = message
        self.user_message = user_message
        self.details = details or {}
        self.run_id = run_id or str(uuid.uuid4())
        self.timestamp = timestamp or datetime.now(timezone.utc).isoformat()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": {
                "code": self.error_code,
                "message": self.message,
                "user_message": self.user_message,
                "details": self.details,
                "run_id": self.run_id,
                "timestamp": self.timestamp
            }
        }


def _response_for(exc: Exception, run_id: str) -> ErrorResponse:
    if isinstance(exc, BaseCustomException):
        return ErrorResponse(
            error_code=exc.error_code,
            message=exc.detail,
            user_message=exc.user_message,
            details=exc.details,
            run_id=run_id
        )
    return ErrorResponse(
        error_code="SYS_001",
        message="Internal error",
        user_message="An unexpected error occurred",
        details={"error": str(exc) if settings.debug else "Internal error"},
        run_id=run_id
    )


def _log_exception(exc: Exception, command: str, run_id: str) -> None:
    log_data = {
        "run_id": run_id,
        "command": command,
        "exception_type": type(exc).__name__,
        "exception_message": str(exc)
    }
    if isinstance(exc, BaseCustomException):
        if exc.exit_code >= EXIT_NUMERICAL_ERROR:
            logger.error(f"Numerical failure: {exc}", extra=log_data)
        else:
            logger.warning(f"Input error: {exc}", extra=log_data)
    else:
        logger.error(f"Unexpected error: {exc}", extra=log_data, exc_info=True)


def handle_errors(func: Callable) -> Callable:
    """Run a command; on failure print the error report to stderr and exit 1 (input) or 2 (numerical)."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.exceptions.Exit:
            raise
        except click.ClickException:
            raise
        except Exception as exc:
            ctx = click.get_current_context(silent=True)
            command = ctx.command_path if ctx is not None else func.__name__
            run_id = (ctx.obj or {}).get("run_id", str(uuid.uuid4())) if ctx is not None else str(uuid.uuid4())
            _log_exception(exc, command, run_id)
            response = _response_for(exc, run_id)
            click.echo(f"error [{response.error_code}]: {response.message}", err=True)
            if ctx is not None and (ctx.obj or {}).get("print_json"):
                click.echo(to_json(response.to_dict()), err=True, nl=False)
            exit_code = exc.exit_code if isinstance(exc, BaseCustomException) else EXIT_NUMERICAL_ERROR
            raise SystemExit(exit_code)

    return wrapper
