"""
Datasets behind the spectral figures: eigenvalue branches against a family
parameter, continuous-spectrum rasters in the complex lambda plane, eigenfunction
profiles and potential shapes. CSV is the interchange format.
"""

import csv
import logging
import math
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from core.config import get_settings
from core.models.kimura import CandidateEigenvalue
from core.models.oracle import VerificationLevel
from core.models.problem import ProblemFamily, SLProblem
from core.models.report import ProfileRow, RegionGrid, SweepRow, SweepTable
from core.services.asymptotics_service import classify_lambda, endpoint_data
from core.services.eigenfunction_service import build_eigenfunction, eigenfunction_profile
from core.services.error_handling import InvalidParameterError
from core.services.kimura_service import candidate_eigenvalues
from core.services.oracle_service import verify
from core.services.problem_service import (
    coefficient_values,
    front_profile,
    heteroclinic_value,
    make_allen_cahn,
    make_hulthen,
    sup_nu,
)
from core.workers.sweep_worker import SweepWorker

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["param", "branch_k", "lambda", "sqrt_lambda", "bound_lo", "bound_hi"]
REGION_COLUMNS = ["lam_re", "lam_im", "class"]
PROFILE_COLUMNS = ["x", "gamma", "mu", "nu", "front"]
EIGENFUNCTION_COLUMNS = ["x", "psi_re", "psi_im", "psi_abs"]


def _parameter_grid(value_range: Tuple[float, float], n: int) -> List[float]:
    if n < 2:
        raise InvalidParameterError(f"a sweep needs at least two rows, got n={n}")
    lo, hi = value_range
    return [float(v) for v in np.linspace(lo, hi, n)]


def _verified(p: SLProblem, candidates: Iterable[CandidateEigenvalue], lower: float) -> Tuple[CandidateEigenvalue, ...]:
    """Candidates strictly above the lower bound that pass the algebraic verification."""
    margin = get_settings().window_margin
    kept = []
    for cand in candidates:
        if cand.lam.real <= lower + margin:
            continue
        report = verify(p, cand.lam, level=VerificationLevel.ALGEBRAIC)
        if report.eigenvalue and report.passed:
            kept.append(cand)
        else:
            logger.warning(f"Dropping lambda={cand.lam.real:.9g} of {p.label()}: verification failed")
    return tuple(kept)


def sweep_hulthen(
    alpha1: float,
    alpha3: float,
    nu_range: Tuple[float, float],
    n: int,
    worker: Optional[SweepWorker] = None,
) -> SweepTable:
    """Eigenvalue branches against nu_-, with alpha2 = alpha1 nu_- + alpha3/alpha1; bounds on the sqrt scale."""
    params = _parameter_grid(nu_range, n)
    for nu_minus in params:
        if alpha1 * nu_minus + alpha3 / alpha1 <= 0:
            raise InvalidParameterError(
                f"nu_-={nu_minus} gives alpha2 <= 0", {"nu_minus": nu_minus, "alpha1": alpha1, "alpha3": alpha3}
            )

    def row(nu_minus: float) -> SweepRow:
        p = make_hulthen(alpha1, alpha1 * nu_minus + alpha3 / alpha1, alpha3)
        return SweepRow(
            param=nu_minus,
            eigenvalues=_verified(p, candidate_eigenvalues(p), nu_minus),
            bound_lo=math.sqrt(max(nu_minus, 0.0)),
            bound_hi=math.sqrt(sup_nu(p)),
        )

    rows = (worker or SweepWorker()).process_sweep_job(row, params)
    return SweepTable(parameter="nu_minus", sqrt_scale=True, rows=tuple(rows))


def sweep_allen_cahn(alpha_range: Tuple[float, float], n: int, worker: Optional[SweepWorker] = None) -> SweepTable:
    lo, hi = alpha_range
    if not (0.0 < lo <= hi < 1.0):
        raise InvalidParameterError(f"alpha range must lie in (0, 1), got [{lo}, {hi}]")
    params = _parameter_grid(alpha_range, n)

    def row(alpha: float) -> SweepRow:
        p = make_allen_cahn(alpha)
        bound = max(alpha - 1.0, -alpha)
        return SweepRow(
            param=alpha,
            eigenvalues=_verified(p, candidate_eigenvalues(p), bound),
            bound_lo=bound,
            bound_hi=sup_nu(p),
        )

    rows = (worker or SweepWorker()).process_sweep_job(row, params)
    return SweepTable(parameter="alpha", sqrt_scale=False, rows=tuple(rows))


def _axis(value_range: Tuple[float, float], res: int) -> np.ndarray:
    lo, hi = value_range
    values = np.linspace(lo, hi, res)
    if lo == -hi:
        values = (values - values[::-1]) / 2.0
    return values


def region_grid(
    p: SLProblem,
    re_range: Tuple[float, float],
    im_range: Tuple[float, float],
    res: int,
) -> RegionGrid:
    """classify_lambda at every cell center; rows run over Im(lambda), columns over Re(lambda)."""
    if res < 10:
        raise InvalidParameterError(f"resolution must be at least 10, got {res}")
    d = endpoint_data(p)
    re_values = _axis(re_range, res)
    im_values = _axis(im_range, res)
    cells = tuple(tuple(classify_lambda(d, complex(re, im)) for re in re_values) for im in im_values)
    logger.info(f"Region grid {res}x{res} for {p.label()}")
    return RegionGrid(
        re_values=tuple(float(v) for v in re_values),
        im_values=tuple(float(v) for v in im_values),
        cells=cells,
    )


def potential_profile(p: SLProblem, xs: Iterable[float]) -> List[ProfileRow]:
    with_front = p.family.family == ProblemFamily.ALLEN_CAHN
    rows = []
    for x in xs:
        mu, nu = coefficient_values(p, x)
        rows.append(
            ProfileRow(
                x=float(x),
                gamma=heteroclinic_value(p, x),
                mu=mu,
                nu=nu,
                front=front_profile(p, x) if with_front else None,
            )
        )
    return rows


def eigenfunction_table(
    p: SLProblem, lam: complex, xs: Sequence[float], normalize: bool = False, tol: Optional[float] = None
) -> List[Tuple[float, complex]]:
    ef = build_eigenfunction(p, lam, tol)
    if ef is None:
        raise InvalidParameterError(
            f"no bounded hypergeometric solution at lambda={complex(lam)} for {p.label()}",
            {"lambda": str(complex(lam))},
        )
    return eigenfunction_profile(p, ef, xs, normalize)


# CSV writers


def write_sweep_csv(table: SweepTable, stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in table.rows:
        for cand in row.eigenvalues:
            lam = cand.lam.real
            writer.writerow(
                {
                    "param": row.param,
                    "branch_k": cand.k,
                    "lambda": lam,
                    "sqrt_lambda": math.sqrt(lam) if lam >= 0 else "",
                    "bound_lo": row.bound_lo,
                    "bound_hi": row.bound_hi,
                }
            )


def write_region_csv(grid: RegionGrid, stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=REGION_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for im, row in zip(grid.im_values, grid.cells):
        for re, cell in zip(grid.re_values, row):
            writer.writerow({"lam_re": re, "lam_im": im, "class": cell.letter})


def write_profile_csv(rows: Iterable[ProfileRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=PROFILE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row.model_dump(), "front": "" if row.front is None else row.front})


def write_eigenfunction_csv(samples: Iterable[Tuple[float, complex]], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=EIGENFUNCTION_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for x, psi in samples:
        writer.writerow({"x": x, "psi_re": psi.real, "psi_im": psi.imag, "psi_abs": abs(psi)})
