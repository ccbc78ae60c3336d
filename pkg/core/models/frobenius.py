from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.models.numbers import ComplexValue
from core.models.problem import SLProblem
from core.services.error_handling import SingularEvaluationError
from core.services.helper import polynomials as poly


class SingularKind(str, Enum):
    REGULAR = "Regular"
    IRREGULAR = "Irregular"


class SingularSource(str, Enum):
    ZERO_OF_F = "ZeroOfF"
    POLE_OF_G = "PoleOfG"
    POLE_OF_H = "PoleOfH"
    INFINITY = "Infinity"


class SingularPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    location: Optional[ComplexValue] = Field(default=None, description="None encodes the point at infinity")
    kind: SingularKind = SingularKind.REGULAR
    source: SingularSource

    @property
    def at_infinity(self) -> bool:
        return self.location is None

    @classmethod
    def infinity(cls, kind: SingularKind = SingularKind.REGULAR) -> "SingularPoint":
        return cls(location=None, kind=kind, source=SingularSource.INFINITY)

    def describe(self) -> str:
        if self.at_infinity:
            return "inf"
        z = self.location
        return f"{z.real:g}" if z.imag == 0 else f"{z.real:g}{z.imag:+g}i"


class ExponentPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    plus: ComplexValue
    minus: ComplexValue
    equal_exponents: bool = False
    integer_difference: bool = False

    @property
    def difference(self) -> complex:
        return self.plus - self.minus


class PSymbol(BaseModel):
    """Riemann P-symbol: three singular points with their local exponents."""

    model_config = ConfigDict(frozen=True)

    points: Tuple[SingularPoint, SingularPoint, SingularPoint]
    exponents: Tuple[ExponentPair, ExponentPair, ExponentPair]
    lam: ComplexValue = 0j

    @property
    def differences(self) -> Tuple[complex, complex, complex]:
        return tuple(pair.difference for pair in self.exponents)

    @property
    def fuchs_sum(self) -> complex:
        return sum(pair.plus + pair.minus for pair in self.exponents)


class MobiusMap(BaseModel):
    """zeta = (a z + b) / (c z + d)."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    d: float

    @model_validator(mode="after")
    def _invertible(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("Mobius map with ad - bc = 0")
        return self

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


class ComplexODE(BaseModel):
    """psi'' + p(z) psi' + q(z, lambda) psi = 0, with q = h/f^2 - lambda/f^2."""

    model_config = ConfigDict(frozen=True)

    problem: SLProblem
    p_num: Tuple[complex, ...]
    p_den: Tuple[complex, ...]
    h_num: Tuple[complex, ...] = Field(..., description="numerator of h/f^2")
    h_den: Tuple[complex, ...] = Field(..., description="denominator of h/f^2")
    f_squared: Tuple[complex, ...]

    def p(self, z: complex) -> complex:
        den = poly.evaluate(self.p_den, z)
        if den == 0:
            raise SingularEvaluationError(f"p evaluated at a singular point z={z}", {"z": str(z)})
        return poly.evaluate(self.p_num, z) / den

    def q(self, z: complex, lam: complex) -> complex:
        den_h = poly.evaluate(self.h_den, z)
        den_f = poly.evaluate(self.f_squared, z)
        if den_h == 0 or den_f == 0:
            raise SingularEvaluationError(f"q evaluated at a singular point z={z}", {"z": str(z)})
        return poly.evaluate(self.h_num, z) / den_h - lam / den_f

    def companion(self, z: complex, lam: complex) -> np.ndarray:
        return np.array([[0.0, 1.0], [-self.q(z, lam), -self.p(z)]], dtype=complex)
