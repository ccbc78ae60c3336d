import csv
import io

import pytest

from core.models.spectrum import SpectrumTag
from core.services.error_handling import InvalidParameterError
from core.services.spectra_report_service import (
    EIGENFUNCTION_COLUMNS,
    PROFILE_COLUMNS,
    REGION_COLUMNS,
    SWEEP_COLUMNS,
    eigenfunction_table,
    potential_profile,
    region_grid,
    sweep_allen_cahn,
    sweep_hulthen,
    write_eigenfunction_csv,
    write_profile_csv,
    write_region_csv,
    write_sweep_csv,
)
from core.workers.sweep_worker import SweepWorker
from tests.spectral_values import allen_cahn_nontrivial


def _read(stream: io.StringIO):
    return list(csv.DictReader(io.StringIO(stream.getvalue())))


def test_allen_cahn_sweep_rows():
    table = sweep_allen_cahn((0.3, 0.5), 3, worker=SweepWorker(max_workers=1))
    assert table.parameter == "alpha"
    assert [row.param for row in table.rows] == pytest.approx([0.3, 0.4, 0.5])
    assert [len(row.eigenvalues) for row in table.rows] == [1, 2, 2]
    second = table.rows[1]
    assert second.eigenvalues[0].lam.real == pytest.approx(allen_cahn_nontrivial(0.4))
    assert second.bound_lo == pytest.approx(-0.4)
    assert second.bound_hi == pytest.approx((0.16 - 0.4 + 1) / 3)


def test_sweep_is_parallel_safe():
    serial = sweep_allen_cahn((0.35, 0.65), 4, worker=SweepWorker(max_workers=1))
    threaded = sweep_allen_cahn((0.35, 0.65), 4, worker=SweepWorker(max_workers=4))
    assert serial == threaded


@pytest.mark.parametrize("alpha_range", [(0.0, 0.5), (0.5, 1.0), (0.6, 0.4)])
def test_allen_cahn_sweep_range_checked(alpha_range):
    with pytest.raises(InvalidParameterError):
        sweep_allen_cahn(alpha_range, 3)


def test_sweep_needs_two_rows():
    with pytest.raises(InvalidParameterError):
        sweep_allen_cahn((0.3, 0.5), 1)


def test_hulthen_sweep_rejects_nonpositive_alpha2():
    with pytest.raises(InvalidParameterError):
        sweep_hulthen(1.0, 10.0, (-20.0, 1.0), 3)


def test_hulthen_sweep_bounds_on_sqrt_scale():
    table = sweep_hulthen(1.0, 10.0, (0.0, 1.0), 2, worker=SweepWorker(max_workers=1))
    assert table.sqrt_scale
    first, last = table.rows
    assert first.bound_lo == 0.0
    assert last.bound_lo == pytest.approx(1.0)
    assert first.bound_hi == pytest.approx(2.5**0.5)
    # nu_- = 0 reproduces the three-eigenvalue problem
    assert len(first.eigenvalues) == 3


def test_sweep_csv_layout():
    table = sweep_allen_cahn((0.35, 0.5), 2, worker=SweepWorker(max_workers=1))
    out = io.StringIO()
    write_sweep_csv(table, out)
    assert out.getvalue().splitlines()[0] == ",".join(SWEEP_COLUMNS)
    rows = _read(out)
    assert len(rows) == 4
    negative = [r for r in rows if float(r["lambda"]) < 0]
    assert negative and all(r["sqrt_lambda"] == "" for r in negative)


def test_region_grid_is_mirror_symmetric(allen_cahn):
    grid = region_grid(allen_cahn(0.3), (-1.0, 0.5), (-0.4, 0.4), 15)
    assert grid.resolution == (15, 15)
    letters = grid.letters()
    assert letters == letters[::-1]


def test_region_grid_boundary_cell(allen_cahn):
    grid = region_grid(allen_cahn(0.3), (-0.5, -0.1), (-0.1, 0.1), 21)
    assert grid.im_values[10] == 0.0
    assert grid.re_values[10] == pytest.approx(-0.3)
    assert grid.cells[10][10].letter == "B"
    assert grid.cells[10][0].tag == SpectrumTag.CONTINUOUS_SPECTRUM
    assert grid.cells[10][-1].tag == SpectrumTag.DISCRETE_CANDIDATE


def test_region_resolution_minimum(hulthen):
    with pytest.raises(InvalidParameterError):
        region_grid(hulthen, (-1.0, 1.0), (-1.0, 1.0), 9)


def test_region_csv(allen_cahn):
    grid = region_grid(allen_cahn(0.5), (-1.0, 0.5), (-0.5, 0.5), 10)
    out = io.StringIO()
    write_region_csv(grid, out)
    rows = _read(out)
    assert list(rows[0]) == REGION_COLUMNS
    assert len(rows) == 100
    assert {r["class"] for r in rows} <= {"D", "C", "N", "B"}


def test_potential_profile(hulthen, allen_cahn):
    front = potential_profile(allen_cahn(0.5), [0.0])[0]
    assert front.gamma == pytest.approx(0.5)
    assert front.front is not None
    plain = potential_profile(hulthen, [0.0, 1.0])
    assert all(row.front is None for row in plain)
    out = io.StringIO()
    write_profile_csv(plain, out)
    rows = _read(out)
    assert list(rows[0]) == PROFILE_COLUMNS
    assert rows[0]["front"] == ""


def test_eigenfunction_table(allen_cahn, hulthen):
    samples = eigenfunction_table(allen_cahn(0.5), 0.0, [-1.0, 0.0, 1.0])
    assert dict(samples)[0.0] == pytest.approx(0.25)
    out = io.StringIO()
    write_eigenfunction_csv(samples, out)
    rows = _read(out)
    assert list(rows[0]) == EIGENFUNCTION_COLUMNS
    assert float(rows[1]["psi_abs"]) == pytest.approx(0.25)
    with pytest.raises(InvalidParameterError):
        eigenfunction_table(hulthen, 1.0, [0.0])
