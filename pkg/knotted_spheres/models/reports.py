from __future__ import annotations

from enum import StrEnum
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field


class ClaimId(StrEnum):
    """Statements checked by the verification harness."""
    PROP1 = "PROP1"
    PROP2_B12 = "PROP2_B12"
    COR3_B15 = "COR3_B15"
    PROP4 = "PROP4"
    COR5_PSEUDO = "COR5_PSEUDO"
    COR5_SPHER = "COR5_SPHER"
    COR5_FLAT = "COR5_FLAT"
    PROP6 = "PROP6"
    THM7 = "THM7"
    COR8 = "COR8"
    PROP9 = "PROP9"
    EGREGIUM = "EGREGIUM"
    FD_CONSISTENCY = "FD_CONSISTENCY"


class ClaimStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    DISCREPANCY = "discrepancy-documented"
    VACUOUS = "vacuous"


class InstanceReport(BaseModel):
    """Outcome of one claim on one surface instance."""
    name: str
    kind: str
    description: str = ""
    samples: int = 0
    skipped: int = 0
    max_residual: Optional[float] = None
    skip_reasons: Dict[str, int] = Field(default_factory=dict)
    measured: Dict[str, Union[float, str, bool, None]] = Field(default_factory=dict)
    failed: bool = False
    discrepancy: bool = False


class ClaimReport(BaseModel):
    """Aggregated outcome of one claim over a corpus."""
    claim: ClaimId
    status: ClaimStatus
    max_residual: Optional[float] = None
    tolerance: float
    instances: List[InstanceReport] = Field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status is not ClaimStatus.FAIL


class Ledger(BaseModel):
    """All claim reports of one harness run, in claim order."""
    seed: Optional[str] = None
    claims: List[ClaimReport] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(report.ok for report in self.claims)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


class KnotArcReport(BaseModel):
    """Advisory checks that a profile arc closes up into a knotted sphere."""
    model_config = ConfigDict(frozen=True)

    endpoint_in_plane: Tuple[bool, bool]
    tangent_orthogonal: Tuple[bool, bool]
    unit_speed_max_residual: float
    tolerance: float
    endpoint_errors: Tuple[Optional[str], Optional[str]] = (None, None)
    skipped_samples: int = 0

    @property
    def closes_smoothly(self) -> bool:
        return all(self.endpoint_in_plane) and all(self.tangent_orthogonal)


class ConjugacyReport(BaseModel):
    """Result of testing whether the parameter net is conjugate on a grid."""
    conjugate: bool
    max_defect: float
    location: Optional[Tuple[float, float]] = None
    samples: int
    skipped: int = 0
    tolerance: float


class PointReport(BaseModel):
    """Geometry at one parameter point, as printed by ``eval``."""
    name: str
    u: float
    v: float
    X: Optional[Tuple[float, float, float, float]] = None
    E: Optional[float] = None
    F: Optional[float] = None
    G: Optional[float] = None
    W2: Optional[float] = None
    K: Optional[float] = None
    K_int: Optional[float] = None
    K_rot: Optional[float] = None
    H: Optional[Tuple[float, float, float, float]] = None
    H2: Optional[float] = None
    defect: Optional[float] = None
    gamma112: Optional[float] = None
    gamma212: Optional[float] = None
    h_inv: Optional[float] = None
    k_inv: Optional[float] = None
    skip_reason: Optional[str] = None


class SkippedVertex(BaseModel):
    index: int
    u: float
    v: float
    reason: str
    replaced_by: int


class MeshReport(BaseModel):
    """Sidecar of an OBJ export: sizes, projection and collapsed vertices."""
    name: str
    projection: str
    vertices: int
    faces: int
    skipped: List[SkippedVertex] = Field(default_factory=list)
