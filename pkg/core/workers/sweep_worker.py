"""
Sweep Worker - fans parameter sweeps out over a thread pool.
Rows are computed independently and returned in parameter order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from core.config import get_settings

logger = logging.getLogger(__name__)

Row = TypeVar("Row")


class SweepWorker:
    """Background worker for row-parallel sweeps."""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = get_settings().max_workers if max_workers is None else max_workers

    def process_sweep_job(self, build_row: Callable[[float], Row], params: Sequence[float]) -> List[Row]:
        """Evaluate build_row on every parameter; results keep the order of params."""
        if self.max_workers == 1 or len(params) < 2:
            return [build_row(value) for value in params]
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            rows = list(pool.map(build_row, params))
        logger.info(f"Sweep of {len(params)} rows finished on {self.max_workers} workers")
        return rows

    def get_worker_status(self) -> Dict[str, Any]:
        return {
            "worker_type": "sweep",
            "max_workers": self.max_workers,
            "status": "active",
        }
