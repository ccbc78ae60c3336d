"""Complex scalars and 2x2 complex matrices shared by every model."""

import cmath
import math
from typing import Annotated, Any, Dict, Tuple

import numpy as np
from pydantic import AfterValidator, BaseModel, BeforeValidator, ConfigDict, PlainSerializer


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` / ``a-bi`` / ``bi`` / ``a`` into a Python complex."""
    cleaned = text.strip().replace(" ", "").replace("I", "j").replace("i", "j")
    if not cleaned:
        raise ValueError("empty complex literal")
    try:
        return complex(cleaned)
    except ValueError as e:
        raise ValueError(f"not a complex number: {text!r}") from e


def _coerce_complex(value: Any) -> Any:
    if isinstance(value, complex):
        return value
    if isinstance(value, dict):
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    if isinstance(value, (int, float, np.integer, np.floating, np.complexfloating)):
        return complex(value)
    if isinstance(value, str):
        return parse_complex(value)
    return value


def _require_finite(value: complex) -> complex:
    if not cmath.isfinite(value):
        raise ValueError(f"non-finite complex value {value}")
    return value


def complex_to_json(value: complex) -> Dict[str, float]:
    return {"re": float(value.real), "im": float(value.imag)}


ComplexValue = Annotated[
    complex,
    BeforeValidator(_coerce_complex),
    AfterValidator(_require_finite),
    PlainSerializer(complex_to_json, when_used="json"),
]


def is_real(value: complex, tol: float = 0.0) -> bool:
    return abs(value.imag) <= tol


def principal_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle in [0, pi/2] between the complex lines spanned by u and v."""
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("zero vector has no direction")
    cosine = min(1.0, abs(np.vdot(u, v)) / (nu * nv))
    # acos loses precision for nearly parallel lines
    sine = abs(u[0] * v[1] - u[1] * v[0]) / (nu * nv)
    return math.atan2(sine, cosine)


class Matrix2C(BaseModel):
    """Row-major 2x2 complex matrix."""

    model_config = ConfigDict(frozen=True)

    a11: ComplexValue
    a12: ComplexValue
    a21: ComplexValue
    a22: ComplexValue

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Matrix2C":
        m = np.asarray(array, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {m.shape}")
        return cls(a11=m[0, 0], a12=m[0, 1], a21=m[1, 0], a22=m[1, 1])

    @classmethod
    def identity(cls) -> "Matrix2C":
        return cls(a11=1, a12=0, a21=0, a22=1)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.a11 + self.a22

    @property
    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def eigenvalues(self) -> Tuple[complex, complex]:
        half = self.trace / 2
        disc = cmath.sqrt(half * half - self.det)
        first, second = half + disc, half - disc
        return tuple(sorted((first, second), key=lambda w: (-w.real, -w.imag)))

    def __matmul__(self, other: "Matrix2C") -> "Matrix2C":
        return Matrix2C.from_array(self.to_array() @ other.to_array())

    def distance(self, other: "Matrix2C") -> float:
        return float(np.max(np.abs(self.to_array() - other.to_array())))
