from enum import Enum
from pydantic import BaseModel
from typing import Optional


class FixtureFamily(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    Z_SEGMENT = "z"
    RANDOM = "random"


class FixtureSpec(BaseModel):
    family: FixtureFamily
    size: int
    probability: Optional[float] = None
    raw: bool = False
    seed: int = 0
    weights: Optional[str] = None
    measure: Optional[str] = None
    potential: Optional[str] = None
