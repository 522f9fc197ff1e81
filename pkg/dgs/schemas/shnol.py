from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class BoundaryReport(BaseModel):
    A: List[int]
    mu_on_dA: Dict[int, float]
    mu_on_dAc: Dict[int, float]
    nu_on_dA: Dict[int, float]
    nu_on_dAc: Dict[int, float]


class ShnolRow(BaseModel):
    n: int
    norm: float
    p: float
    q: float
    quot_p: Optional[float] = None
    quot_q: Optional[float] = None
    weyl: Optional[float] = None


class ShnolReport(BaseModel):
    E: float
    x0: int
    rows: List[ShnolRow]
    interior_residual: float
    oracle_distance: Optional[float] = None
    spectral_evidence: bool


class CbBound(BaseModel):
    C_b: float
    attained_at: int


class DefectBoundReport(BaseModel):
    p: float
    q: float
    l2_defect: float
    l2_ratio: float
    max_pairing_ratio: float
    trials: int
    holds: bool


class CheegerComparison(BaseModel):
    q1: float
    Q1: float
    p1sq: float
    degA_dA: int
    degA_dAc: int
    chain_holds: bool
    reverse_chain_holds: bool


class WeightedNorm(BaseModel):
    alpha: float
    norm: float
    tail_share: float
    settled: bool


class BracketRow(BaseModel):
    n: int
    p_squared: float
    q_squared: float
    bound: float
    holds: bool


class SubexpRow(BaseModel):
    delta: float
    radius: Optional[int] = Field(None, description="None when no radius exists inside the truncation; not a disproof")
    n_k: Optional[int] = None
    quotient_bound: Optional[float] = None
    normalized_bound: Optional[float] = None
    observed_quotient: Optional[float] = None


class BoundedShnolReport(BaseModel):
    C_b: float
    max_radius: int
    weighted_norms: List[WeightedNorm]
    bracketing: List[BracketRow]
    bracketing_holds: bool
    subexp: List[SubexpRow]
    subexponential: bool
