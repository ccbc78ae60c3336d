from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.models.kimura import KimuraReport
from core.models.numbers import ComplexValue
from core.models.spectrum import SpectrumTag


class ShootReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    L: float = Field(..., gt=0)
    miss: ComplexValue
    solution_samples: Optional[Tuple[Tuple[float, ComplexValue], ...]] = None


class VerificationLevel(str, Enum):
    FULL = "full"
    ALGEBRAIC = "algebraic"


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    tol: float
    level: VerificationLevel
    classification: SpectrumTag
    refined: SpectrumTag
    boundary: bool
    kimura: Optional[KimuraReport] = None
    eigenfunction_built: Optional[bool] = None
    residual: Optional[float] = None
    miss: Optional[float] = None
    monodromy_angle: Optional[float] = None
    verdicts: Dict[str, bool] = Field(default_factory=dict, description="per-check 'is an eigenvalue' verdicts")
    errors: Dict[str, str] = Field(default_factory=dict, description="checks that could not run, by name")
    eigenvalue: Optional[bool] = None
    passed: bool
