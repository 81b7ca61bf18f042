"""t_mix against n along one ratio triple: TSV data and a self-contained SVG."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..logging_config import get_logger  # noqa: E402
from ..mixing import FigurePreset, SweepAxis, SweepGrid, sweep  # noqa: E402

logger = get_logger(__name__)


@dataclass(frozen=True)
class FigurePoint:
    n: int
    t_mix: Optional[int]
    status: str
    notice: str = ""

    @property
    def token(self) -> str:
        if self.status == "ok":
            return str(self.t_mix)
        return "inf" if self.status == "inf" else "ERR"


def figure_points(preset: FigurePreset, threads: int = 1, backend: str = "float",
                  progress: bool = False) -> list[FigurePoint]:
    """One mixing time per n; n with non-integral counts are skipped with a notice."""
    ratios = preset.ratios
    grid = SweepGrid(axis=SweepAxis.K, ratios=(ratios.gamma,), ns=preset.ns,
                     epsilon=preset.epsilon, eta=ratios.eta, h=ratios.h, name=preset.name)
    table = sweep(grid, threads=threads, backend=backend, progress=progress)
    return [FigurePoint(n=c.n, t_mix=c.t_mix, status=c.status, notice=c.error)
            for c in table.rows()[0][1]]


def write_tsv(points: list[FigurePoint], path: str | Path) -> Path:
    """Plotted points only; skipped n are left out."""
    path = Path(path)
    lines = ["n\tt_mix"]
    lines += [f"{p.n}\t{p.token}" for p in points if p.status in ("ok", "inf")]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_svg(points: list[FigurePoint], path: str | Path, title: str = "") -> Path:
    """Scatter-and-line plot with inline axes; byte-identical for identical points."""
    path = Path(path)
    xs = [p.n for p in points if p.status == "ok"]
    ys = [p.t_mix for p in points if p.status == "ok"]
    with plt.rc_context({"svg.hashsalt": "blmix", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(xs, ys, marker="o", markersize=3, linewidth=1)
        ax.set_xlabel("n")
        ax.set_ylabel("t_mix")
        if title:
            ax.set_title(title)
        ax.grid(True, linewidth=0.3)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.debug("wrote %d points to %s", len(xs), path)
    return path
