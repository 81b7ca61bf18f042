"""Parallel sweep engine: one worst-case curve per grid cell."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from tqdm import tqdm

from ..backends import ArithmeticBackend, resolve_backend
from ..chain import build_kernel
from ..contracts import SweepCell
from ..errors import BLMixError, ParameterError
from ..logging_config import get_logger
from .curve import CurveStatus, worst_case_curve
from .grids import SweepGrid

logger = get_logger(__name__)

CellKey = tuple[float, int]


def run_cell(grid: SweepGrid, ratio: float, n: int,
             backend: str | ArithmeticBackend | None = None,
             extremes_only: bool = False) -> SweepCell:
    """Compute one cell. Never raises; errors land in the cell."""
    try:
        params = grid.params_at(ratio, n)
    except ParameterError as e:
        logger.warning("skipping cell ratio=%s n=%d: %s", ratio, n, e)
        return SweepCell(ratio=ratio, n=n, status="skipped", error=str(e))
    try:
        kernel = build_kernel(params, backend)
        curve = worst_case_curve(kernel, grid.epsilon, extremes_only=extremes_only)
    except BLMixError as e:
        logger.warning("cell ratio=%s n=%d failed: %s", ratio, n, e)
        return SweepCell(ratio=ratio, n=n, status="err", error=str(e))
    except Exception as e:
        logger.exception("cell ratio=%s n=%d crashed", ratio, n)
        return SweepCell(ratio=ratio, n=n, status="err", error=f"{type(e).__name__}: {e}")
    if curve.status is CurveStatus.NON_MIXING:
        return SweepCell(ratio=ratio, n=n, status="inf")
    if curve.status is CurveStatus.INCONCLUSIVE:
        return SweepCell(ratio=ratio, n=n, status="err",
                         error=f"inconclusive: d({curve.cap}) = {float(curve.d[-1]):.3g}")
    return SweepCell(ratio=ratio, n=n, status="ok", t_mix=curve.t_mix)


@dataclass
class SweepTable:
    """Sweep results keyed by (ratio, n), read back in grid order."""

    grid: SweepGrid
    cells: dict[CellKey, SweepCell] = field(default_factory=dict)

    def cell(self, ratio: float, n: int) -> SweepCell:
        return self.cells[(ratio, n)]

    def rows(self) -> list[tuple[float, list[SweepCell]]]:
        return [(ratio, [self.cells[(ratio, n)] for n in self.grid.ns]) for ratio in self.grid.ratios]

    def values(self, ratio: float) -> list[Optional[int]]:
        """t_mix per n for one row; None for non-integer cells."""
        return [self.cells[(ratio, n)].t_mix for n in self.grid.ns]

    @property
    def failures(self) -> list[SweepCell]:
        return [c for c in self.cells.values() if c.status in ("err", "skipped")]


def sweep(grid: SweepGrid,
          threads: int = 1,
          backend: str | ArithmeticBackend | None = None,
          extremes_only: bool = False,
          done: Optional[Iterable[SweepCell]] = None,
          on_cell: Optional[Callable[[SweepCell], None]] = None,
          progress: bool = False) -> SweepTable:
    """Fill every cell of the grid.

    Args:
        grid: Cells to compute
        threads: Worker threads; the result does not depend on it
        backend: Arithmetic backend name or instance
        extremes_only: Evolve only the two extreme starts (approximate)
        done: Cells already computed by an earlier run; they are not recomputed
        on_cell: Called in the calling thread as each cell completes
        progress: Show a tqdm bar on stderr
    """
    arith = resolve_backend(backend)
    table = SweepTable(grid=grid)
    for cell in done or ():
        table.cells[(cell.ratio, cell.n)] = cell
    pending = [key for key in grid.cells() if key not in table.cells]
    logger.info("sweep %s: %d cells, %d pending, %d threads",
                grid.name, len(grid.cells()), len(pending), threads)

    bar = tqdm(total=len(pending), desc=grid.name, unit="cell", disable=not progress)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        futures = {
            pool.submit(run_cell, grid, ratio, n, arith, extremes_only): (ratio, n)
            for ratio, n in pending
        }
        for future in as_completed(futures):
            cell = future.result()
            table.cells[futures[future]] = cell
            if on_cell is not None:
                on_cell(cell)
            bar.update(1)
    bar.close()
    return table
