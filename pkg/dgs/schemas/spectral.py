from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class SpectralResult(BaseModel):
    E0: float
    ground_state: List[float]
    residual: float
    iterations: int
    second_energy: Optional[float] = None
    method: str = Field(description="'dense' or 'lanczos'")


class SupersolutionCertificate(BaseModel):
    w: List[float]
    E: float
    E0: float
    x0: int
    window: List[int]
    slack: List[float] = Field(description="(L - E)w on the window, aligned with `window`")
    min_slack: float
    window_residual: float = Field(description="max |(L - E)w| on the window; w solves there")


class ExhaustionRow(BaseModel):
    radius: int
    vertex_count: int
    core_values: Dict[str, float]
    sup_difference: Optional[float] = None


class ExhaustionTable(BaseModel):
    E: float
    core_radius: int
    rows: List[ExhaustionRow]


class EnergyLimitRow(BaseModel):
    E: float
    gap: float
    distance: float
    min_slack: float


class EnergyLimitTable(BaseModel):
    E0: float
    x0: int
    rows: List[EnergyLimitRow]


class EnergyBoundReport(BaseModel):
    E: float
    E0: float
    trials: int
    min_defect: float
    tolerance: float
    holds: bool


class SupersolutionSample(BaseModel):
    E: float
    min_slack: float
    min_value: float
    positive: bool


class ExcitedState(BaseModel):
    eigenvalue: float
    min_value: float
    max_value: float
    sign_change: bool


class PositivityBatteryReport(BaseModel):
    E0: float
    supersolutions: List[SupersolutionSample]
    perron_residual: float
    perron_positive: bool
    excited_states: List[ExcitedState]
    passed: bool


class GsrCheckReport(BaseModel):
    E0: float
    trials: int
    max_abs_defect: float
    tolerance: float
    supersolution_energies: List[float]
    min_supersolution_defect: Optional[float] = None
    passed: bool
