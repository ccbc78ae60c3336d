#!/usr/bin/env python3
"""
Write every figure dataset as CSV into one directory.
Run from the project root: python scripts/reproduce_figures.py --out-dir figures
"""

import logging
import sys
from pathlib import Path

import click
import numpy as np
from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.services.problem_service import make_allen_cahn, make_hulthen  # noqa: E402
from core.services.spectra_report_service import (  # noqa: E402
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
from core.services.kimura_service import candidate_eigenvalues  # noqa: E402

load_dotenv()

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

XS = [round(float(x), 12) for x in np.linspace(-15.0, 15.0, 301)]


def _write(path: Path, writer, payload) -> None:
    with path.open("w", encoding="utf-8", newline="") as stream:
        writer(payload, stream)
    logger.info(f"Wrote {path}")


@click.command()
@click.option("--out-dir", type=click.Path(file_okay=False), default="figures", show_default=True)
@click.option("--rows", type=int, default=41, show_default=True, help="Rows per parameter sweep")
def main(out_dir, rows):
    """Potential shapes, eigenvalue branches, eigenfunctions and continuous-spectrum regions."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    hulthen = make_hulthen(1.0, 10.0, 10.0)
    _write(out / "hulthen_potential.csv", write_profile_csv, potential_profile(hulthen, XS))
    _write(out / "hulthen_potential_a1_10.csv", write_profile_csv, potential_profile(make_hulthen(10.0, 1.0, 10.0), XS))
    _write(out / "hulthen_sweep.csv", write_sweep_csv, sweep_hulthen(1.0, 10.0, (0.0, 4.0), rows))
    for cand in candidate_eigenvalues(hulthen):
        name = f"hulthen_eigenfunction_k{abs(cand.k)}.csv"
        _write(out / name, write_eigenfunction_csv, eigenfunction_table(hulthen, cand.lam, XS, normalize=True))

    for alpha in (0.3, 0.5):
        problem = make_allen_cahn(alpha)
        tag = f"{alpha:g}".replace(".", "p")
        _write(out / f"allen_cahn_{tag}_potential.csv", write_profile_csv, potential_profile(problem, XS))
        for cand in candidate_eigenvalues(problem):
            name = f"allen_cahn_{tag}_eigenfunction_k{cand.k}.csv"
            _write(out / name, write_eigenfunction_csv, eigenfunction_table(problem, cand.lam, XS, normalize=True))

    _write(out / "allen_cahn_sweep.csv", write_sweep_csv, sweep_allen_cahn((0.05, 0.95), rows))
    grid = region_grid(make_allen_cahn(0.3), (-1.2, 0.2), (-1.0, 1.0), 200)
    _write(out / "allen_cahn_0p3_region.csv", write_region_csv, grid)
    logger.info(f"All figure datasets written to {out}")


if __name__ == "__main__":
    main()
