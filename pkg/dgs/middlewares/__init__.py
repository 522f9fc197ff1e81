from .error_handler import ErrorResponse, handle_errors
from .logging_middleware import log_command

__all__ = ["ErrorResponse", "handle_errors", "log_command"]
