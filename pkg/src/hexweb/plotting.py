"""Matplotlib report figures, written as deterministic SVG."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .hexagon import DefectReport  # noqa: E402

plt.rcParams["svg.hashsalt"] = "hexweb"
plt.rcParams["svg.fonttype"] = "path"

_SAVE = {"format": "svg", "metadata": {"Date": None, "Creator": None}}


def _save(fig, path: Union[str, Path]) -> Path:
    path = Path(path)
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return path


def defect_figure(reports: Sequence[DefectReport], path: Union[str, Path], title: str = "") -> Path:
    """Median and max relative closure defect against hexagon size, log-log."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for rep in reports:
        hs = np.array([s.h for s in rep.stats])
        med = np.array([s.median_relative for s in rep.stats])
        mx = np.array([s.max_relative for s in rep.stats])
        floor = np.finfo(float).eps
        line, = ax.loglog(hs, np.maximum(med, floor), "o-", label=f"{rep.web} median")
        ax.loglog(hs, np.maximum(mx, floor), "s--", color=line.get_color(), alpha=0.6, label=f"{rep.web} max")
    ax.set_xlabel("hexagon size h")
    ax.set_ylabel("defect / h")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.subplots_adjust(left=0.16, right=0.97, bottom=0.14, top=0.9)
    return _save(fig, path)


def root_region_figure(mask: np.ndarray, xlim: Sequence[float], ylim: Sequence[float],
                       disk: tuple[Sequence[float], float], path: Union[str, Path], title: str = "") -> Path:
    """Boolean grid of the three-real-root region with the scan domain drawn on top."""
    fig, ax = plt.subplots(figsize=(4.6, 4.6))
    ax.imshow(mask.astype(float), origin="lower", extent=(xlim[0], xlim[1], ylim[0], ylim[1]),
              cmap="Greys", vmin=0.0, vmax=1.5, interpolation="nearest")
    (cx, cy), r = disk
    ax.add_patch(plt.Circle((cx, cy), r, fill=False, color="tab:red", lw=1.2))
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    fig.subplots_adjust(left=0.14, right=0.97, bottom=0.1, top=0.93)
    return _save(fig, path)
