from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.models.numbers import ComplexValue


class Side(str, Enum):
    MINUS = "minus"
    PLUS = "plus"


class SpectrumTag(str, Enum):
    DISCRETE_CANDIDATE = "DiscreteCandidate"
    CONTINUOUS_SPECTRUM = "ContinuousSpectrum"
    NOT_EIGENVALUE = "NotEigenvalue"

    @property
    def letter(self) -> str:
        return {"DiscreteCandidate": "D", "ContinuousSpectrum": "C", "NotEigenvalue": "N"}[self.value]


class DecayCase(str, Enum):
    """Sign/ordering conditions on (mu, nu) at the two ends that force decay."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    NONE = "None"


class SideReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    side: Side
    kappa_pair: Tuple[ComplexValue, ComplexValue]
    decay_ok: bool


class SpectrumClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: SpectrumTag
    minus: SideReport
    plus: SideReport
    boundary: bool = False
    reason: Optional[str] = Field(default=None, description="Why a refined classification differs from the table")

    @property
    def letter(self) -> str:
        return "B" if self.boundary else self.tag.letter


class ConditionDiagnostic(BaseModel):
    """The published region inequality evaluated next to the predicate actually used."""

    model_config = ConfigDict(frozen=True)

    side: Side
    printed_value: float = Field(..., description="16 mu^2 (Re lambda - nu) + (Im lambda)^2")
    printed_holds: bool
    decay_holds: bool
    agree: bool
