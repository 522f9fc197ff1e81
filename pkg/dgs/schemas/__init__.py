from .response import BaseResponse
from .spectral import (
    SpectralResult,
    SupersolutionCertificate,
    ExhaustionRow,
    ExhaustionTable,
    EnergyLimitRow,
    EnergyLimitTable,
    EnergyBoundReport,
    SupersolutionSample,
    ExcitedState,
    PositivityBatteryReport,
    GsrCheckReport
)
from .harnack import HarnackMethod, MinimumPrincipleOutcome, HarnackReport, HarnackCheck, VertexBound
from .shnol import (
    BoundaryReport,
    ShnolRow,
    ShnolReport,
    CbBound,
    DefectBoundReport,
    CheegerComparison,
    WeightedNorm,
    BracketRow,
    SubexpRow,
    BoundedShnolReport
)
from .fixture import FixtureFamily, FixtureSpec
