from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.models.kimura import CandidateEigenvalue
from core.models.spectrum import SpectrumClass


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    param: float
    eigenvalues: Tuple[CandidateEigenvalue, ...]
    bound_lo: float
    bound_hi: float


class SweepTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    parameter: str
    sqrt_scale: bool = Field(default=False, description="bounds are reported on the sqrt(lambda) scale")
    rows: Tuple[SweepRow, ...]


class RegionGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    re_values: Tuple[float, ...]
    im_values: Tuple[float, ...]
    cells: Tuple[Tuple[SpectrumClass, ...], ...] = Field(..., description="cells[i][j] at (re_values[j], im_values[i])")

    @property
    def resolution(self) -> Tuple[int, int]:
        return len(self.re_values), len(self.im_values)

    def letters(self) -> List[str]:
        return ["".join(cell.letter for cell in row) for row in self.cells]


class ProfileRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    gamma: float
    mu: float
    nu: float
    front: Optional[float] = None
