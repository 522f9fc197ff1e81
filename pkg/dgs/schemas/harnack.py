from enum import Enum
from pydantic import BaseModel
from typing import List, Optional, Tuple


class HarnackMethod(str, Enum):
    EXACT_ENUMERATION = "exact-enumeration"
    DIJKSTRA = "dijkstra-fast-path"


class MinimumPrincipleOutcome(str, Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_ZERO = "AllZero"
    VIOLATION = "Violation"


class HarnackReport(BaseModel):
    E: float
    window: List[int]
    constant: float
    worst_pair: Tuple[int, int]
    witness_path: List[int]
    method: HarnackMethod


class HarnackCheck(BaseModel):
    holds: bool
    constant: float
    max_value: float
    min_value: float
    ratio: Optional[float] = None


class VertexBound(BaseModel):
    x0: int
    x: int
    energy: float
    constant: float
    path: List[int]
