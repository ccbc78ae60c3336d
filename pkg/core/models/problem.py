from enum import Enum
from typing import Annotated, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.services.error_handling import SingularEvaluationError
from core.services.helper import polynomials as poly


class ProblemFamily(str, Enum):
    HULTHEN = "hulthen"
    ALLEN_CAHN = "allen_cahn"
    CUSTOM = "custom"


class FamilyTag(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: ProblemFamily = ProblemFamily.CUSTOM
    params: Tuple[float, ...] = Field(default=(), description="alpha parameters of a built-in family")


class RationalFn(BaseModel):
    """num(z)/den(z) with ascending real coefficients."""

    model_config = ConfigDict(frozen=True)

    numerator: Tuple[float, ...] = Field(..., min_length=1)
    denominator: Tuple[float, ...] = Field(default=(1.0,), min_length=1)

    @field_validator("denominator")
    @classmethod
    def _denominator_nonzero(cls, value):
        if all(c == 0 for c in value):
            raise ValueError("denominator is the zero polynomial")
        return value

    @classmethod
    def polynomial(cls, coeffs) -> "RationalFn":
        return cls(numerator=tuple(float(c) for c in coeffs))

    @classmethod
    def constant(cls, value: float) -> "RationalFn":
        return cls(numerator=(float(value),))

    @property
    def is_polynomial(self) -> bool:
        return poly.degree(self.denominator) == 0

    def __call__(self, z):
        den = poly.evaluate(self.denominator, z)
        if den == 0:
            raise SingularEvaluationError(
                f"rational function evaluated at a root of its denominator (z={z})",
                {"z": str(z)},
            )
        return poly.evaluate(self.numerator, z) / den

    def derivative(self) -> "RationalFn":
        num, den = self.numerator, self.denominator
        top = poly.add(
            poly.mul(poly.derivative(num), den),
            -poly.mul(num, poly.derivative(den)),
        )
        bottom = poly.mul(den, den)
        return RationalFn(
            numerator=tuple(float(c.real) for c in poly.as_coeffs(top)),
            denominator=tuple(float(c.real) for c in poly.as_coeffs(bottom)),
        )


class SLProblem(BaseModel):
    """
    psi'' + mu(x) psi' + nu(x) psi = lambda psi on the real line, with
    mu = g(gamma(x)), nu = h(gamma(x)) and gamma' = f(gamma) running from
    z_minus (source) to z_plus (sink).
    """

    model_config = ConfigDict(frozen=True)

    f: RationalFn
    g: RationalFn
    h: RationalFn
    z_minus: float
    z_plus: float
    gamma_init: float
    family: FamilyTag = Field(default_factory=FamilyTag)

    @field_validator("f")
    @classmethod
    def _f_is_polynomial(cls, value: RationalFn):
        if not value.is_polynomial:
            raise ValueError("f must be a polynomial (trivial denominator)")
        return value

    @property
    def is_custom(self) -> bool:
        return self.family.family == ProblemFamily.CUSTOM

    def label(self) -> str:
        if self.is_custom:
            return f"custom[{self.z_minus}, {self.z_plus}]"
        args = ",".join(f"{a:g}" for a in self.family.params)
        return f"{self.family.family.value}({args})"


class AsymptoticData(BaseModel):
    model_config = ConfigDict(frozen=True)

    mu_minus: float
    mu_plus: float
    nu_minus: float
    nu_plus: float
    a_minus: float = Field(..., gt=0, description="1/f'(z_minus)")
    a_plus: float = Field(..., lt=0, description="1/f'(z_plus)")


class RationalDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    num: List[float] = Field(..., min_length=1)
    den: List[float] = Field(default_factory=lambda: [1.0], min_length=1)


class HulthenDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["hulthen"]
    params: List[float] = Field(..., min_length=3, max_length=3)


class AllenCahnDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["allen_cahn"]
    params: List[float] = Field(..., min_length=1, max_length=1)


class CustomDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["custom"]
    f: List[float] = Field(..., min_length=1)
    g: RationalDocument
    h: RationalDocument
    z_minus: float
    z_plus: float
    gamma_init: float


ProblemDocument = Annotated[
    Union[HulthenDocument, AllenCahnDocument, CustomDocument],
    Field(discriminator="family"),
]
