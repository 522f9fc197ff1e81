"""Tolerance policy shared by every identity check."""
from typing import Optional

from dgs.config import settings


def scaled_tolerance(*magnitudes: float, base: Optional[float] = None) -> float:
    """Absolute tolerance base * (1 + largest magnitude among the terms involved)."""
    base = settings.identity_tol if base is None else base
    largest = max((abs(float(v)) for v in magnitudes), default=0.0)
    return base * (1.0 + largest)
