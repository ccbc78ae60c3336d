from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.models.numbers import ComplexValue, Matrix2C


class ComplexPath(BaseModel):
    model_config = ConfigDict(frozen=True)

    waypoints: Tuple[ComplexValue, ...] = Field(..., min_length=2)
    closed: bool = False

    @field_validator("waypoints")
    @classmethod
    def _distinct_neighbours(cls, value):
        for first, second in zip(value, value[1:]):
            if first == second:
                raise ValueError("consecutive waypoints coincide")
        return value

    def reversed(self) -> "ComplexPath":
        return ComplexPath(waypoints=tuple(reversed(self.waypoints)), closed=self.closed)

    def then(self, other: "ComplexPath") -> "ComplexPath":
        if self.waypoints[-1] != other.waypoints[0]:
            raise ValueError("paths do not join")
        joined = self.waypoints + other.waypoints[1:]
        return ComplexPath(waypoints=joined, closed=joined[0] == joined[-1])


class EigenCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: str
    numeric: Tuple[ComplexValue, ComplexValue]
    predicted: Tuple[ComplexValue, ComplexValue]
    error: float
    matches: bool


class MonodromyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: ComplexValue
    base_point: ComplexValue
    radius_minus: float
    radius_plus: float
    m_minus: Matrix2C
    m_plus: Matrix2C
    common_eigenvector: Optional[Tuple[ComplexValue, ComplexValue]] = None
    triangularizable: bool
    angle: float
    tol: float
