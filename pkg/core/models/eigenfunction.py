from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.models.frobenius import MobiusMap
from core.models.numbers import ComplexValue


class HGParams(BaseModel):
    """Parameters of the Gauss hypergeometric equation."""

    model_config = ConfigDict(frozen=True)

    a: ComplexValue
    b: ComplexValue
    c: ComplexValue


class EigenFunction(BaseModel):
    """psi = zeta^exp0 (1 - zeta)^exp1 sum_j coeffs[j] zeta^j with zeta = mobius(z)."""

    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    mobius: MobiusMap
    exp0: ComplexValue
    exp1: ComplexValue
    coeffs: Tuple[ComplexValue, ...] = Field(..., min_length=1)
    params: HGParams

    @field_validator("coeffs")
    @classmethod
    def _normalized(cls, value):
        if value[0] != 1:
            raise ValueError("leading series coefficient must be 1")
        return value

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1
