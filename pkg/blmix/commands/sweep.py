"""Durable sweep job with state persistence, plus the sweep CSV format."""
from __future__ import annotations

import csv
import json
import math
import os
import uuid
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Optional

from ..config import config_dir
from ..contracts import SweepCell
from ..logging_config import get_logger
from ..mixing import SweepAxis, SweepGrid, SweepTable, sweep

logger = get_logger(__name__)


def default_state_dir() -> str:
    return os.path.join(config_dir(), "sweep_jobs")


@dataclass(frozen=True)
class SweepState:
    job_id: str
    grid_name: str
    axis: str
    ratios: tuple[float, ...]
    ns: tuple[int, ...]
    epsilon: float
    gamma: float
    eta: float
    h: Optional[float]
    backend: str = "float"
    cells: tuple[SweepCell, ...] = ()
    completed: bool = False

    @property
    def grid(self) -> SweepGrid:
        return SweepGrid(axis=SweepAxis(self.axis), ratios=self.ratios, ns=self.ns,
                         epsilon=self.epsilon, gamma=self.gamma, eta=self.eta, h=self.h,
                         name=self.grid_name)


def _serialize(state: SweepState) -> dict[str, Any]:
    data = asdict(state)
    data["ratios"] = list(state.ratios)
    data["ns"] = list(state.ns)
    data["cells"] = [c.model_dump() for c in state.cells]
    return data


def _deserialize(data: dict[str, Any]) -> SweepState:
    return SweepState(
        job_id=data["job_id"], grid_name=data["grid_name"], axis=data["axis"],
        ratios=tuple(data["ratios"]), ns=tuple(data["ns"]), epsilon=data["epsilon"],
        gamma=data["gamma"], eta=data["eta"], h=data.get("h"),
        backend=data.get("backend", "float"),
        cells=tuple(SweepCell(**c) for c in data.get("cells", [])),
        completed=data.get("completed", False),
    )


def _state_path(state_dir: Path, job_id: str) -> Path:
    return state_dir / f"{job_id}.json"


class SweepJob:
    """A durable, resumable sweep over a grid of (ratio, n) cells."""

    def __init__(self, grid: SweepGrid, backend: str = "float",
                 state_dir: Optional[str] = None) -> None:
        self._state_dir = Path(os.path.expanduser(state_dir or default_state_dir()))
        self._state_dir.mkdir(parents=True, exist_ok=True)
        self._state = SweepState(
            job_id=uuid.uuid4().hex[:12], grid_name=grid.name, axis=grid.axis.value,
            ratios=tuple(grid.ratios), ns=tuple(grid.ns), epsilon=grid.epsilon,
            gamma=grid.gamma, eta=grid.eta, h=grid.h, backend=backend,
        )

    @property
    def job_id(self) -> str:
        return self._state.job_id

    @property
    def state(self) -> SweepState:
        return self._state

    # ── Persistence ──────────────────────────────────────────────────

    def save_state(self) -> Path:
        """Write current state to disk (atomic via tmp+rename)."""
        path = _state_path(self._state_dir, self._state.job_id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(_serialize(self._state), indent=2))
        tmp.replace(path)
        return path

    @classmethod
    def load_state(cls, job_id: str, state_dir: Optional[str] = None) -> SweepJob:
        """Restore from a previously saved state file."""
        sdir = Path(os.path.expanduser(state_dir or default_state_dir()))
        data = json.loads(_state_path(sdir, job_id).read_text())
        job = cls.__new__(cls)
        job._state_dir = sdir
        job._state = _deserialize(data)
        return job

    @classmethod
    def find_latest_job(cls, state_dir: Optional[str] = None) -> str | None:
        """Return the job_id of the most recently modified unfinished job, or None."""
        sdir = Path(os.path.expanduser(state_dir or default_state_dir()))
        if not sdir.exists():
            return None
        files = sorted(sdir.glob("*.json"), key=lambda p: p.stat().st_mtime, reverse=True)
        for path in files:
            try:
                if not json.loads(path.read_text()).get("completed", False):
                    return path.stem
            except (OSError, json.JSONDecodeError) as e:
                logger.warning("ignoring unreadable sweep state %s: %s", path.name, e)
        return None

    # ── Execution ────────────────────────────────────────────────────

    def _record(self, cell: SweepCell) -> None:
        self._state = replace(self._state, cells=self._state.cells + (cell,))
        self.save_state()

    def run(self, threads: int = 1, progress: bool = False) -> SweepTable:
        """Compute every cell not already stored, saving after each one.

        Cells that failed in an earlier run are retried.
        """
        kept = tuple(c for c in self._state.cells if c.status in ("ok", "inf", "skipped"))
        self._state = replace(self._state, cells=kept)
        self.save_state()
        table = sweep(self._state.grid, threads=threads, backend=self._state.backend,
                      done=kept, on_cell=self._record, progress=progress)
        if not any(c.status == "err" for c in table.cells.values()):
            self._state = replace(self._state, completed=True)
            self.save_state()
        logger.info("sweep job %s finished: %d failures", self.job_id, len(table.failures))
        return table


# ── CSV ──────────────────────────────────────────────────────────────

def format_ratio(ratio: float) -> str:
    """Two decimals for grid ratios like 0.02, full precision otherwise."""
    return f"{ratio:.2f}" if round(ratio, 2) == ratio else repr(ratio)


def write_sweep_csv(table: SweepTable, path: Optional[str | Path] = None,
                    stream: Any = None) -> Optional[Path]:
    """Write ``ratio,n=50,...`` rows; failed cells become ERR.

    With a path, failure messages go to a sidecar ``<name>.errors.log``.
    """
    header = ["ratio"] + [f"n={n}" for n in table.grid.ns]
    rows = [[format_ratio(ratio)] + [cell.token for cell in cells] for ratio, cells in table.rows()]
    if path is None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return None

    path = Path(path)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    sidecar = errors_log_path(path)
    if table.failures:
        lines = [f"ratio={format_ratio(c.ratio)} n={c.n}: {c.error}"
                 for ratio, cells in table.rows() for c in cells if c.status in ("err", "skipped")]
        sidecar.write_text("\n".join(lines) + "\n")
    elif sidecar.exists():
        sidecar.unlink()
    return path


def errors_log_path(path: Path) -> Path:
    return path.with_name(path.stem + ".errors.log")


@dataclass(frozen=True)
class ParsedSweep:
    """A sweep CSV read back: ints, math.inf for non-mixing, None for ERR."""

    ns: tuple[int, ...]
    rows: dict[str, tuple[int | float | None, ...]]

    def row(self, ratio: float | str) -> tuple[int | float | None, ...]:
        key = ratio if isinstance(ratio, str) else format_ratio(ratio)
        return self.rows[key]


def _parse_token(token: str) -> int | float | None:
    token = token.strip()
    if token == "inf":
        return math.inf
    if token == "ERR":
        return None
    return int(token)


def read_sweep_csv(path: str | Path) -> ParsedSweep:
    """Parse a CSV written by write_sweep_csv."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        ns = tuple(int(col.split("=", 1)[1]) for col in header[1:])
        rows = {line[0]: tuple(_parse_token(t) for t in line[1:]) for line in reader if line}
    return ParsedSweep(ns=ns, rows=rows)
