from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.models.numbers import ComplexValue


class KimuraBest(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0, le=3, description="which of the four signed sums")
    odd: int = Field(..., description="nearest odd integer to the real part")
    distance: float


class KimuraReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    sums: Tuple[ComplexValue, ComplexValue, ComplexValue, ComplexValue]
    best: KimuraBest
    triangularizable: bool
    tol: float


class CandidateEigenvalue(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    k: int = Field(..., description="the signed sum equals 2k+1")
    sign_pattern: Tuple[int, int, int]
    verified_decay: bool
    bounded_solution: bool = False
    kimura_distance: float

    @property
    def accepted(self) -> bool:
        return self.verified_decay and self.bounded_solution
