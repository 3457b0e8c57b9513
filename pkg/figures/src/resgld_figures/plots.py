"""The three figure kinds rendered from run artifacts.

- density_overlay: per-run sample histograms over the analytic target density
- trace:           per-run W2-vs-step convergence lines
- sweep_heatmap:   step-size x gradient-noise grid of cloud distances

Rendering is deterministic: fixed style, Agg backend, no timestamps in the
output, so regenerating from identical inputs reproduces identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import (
    ArtifactFormatError,
    load_metrics,
    load_samples,
    load_summary,
    load_sweep,
    mixture_from_summary,
    mixture_pdf,
)

PLOT_KINDS = ("density_overlay", "trace", "sweep_heatmap")

_STYLE = {
    "figure.figsize": (7.0, 4.2),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "svg.hashsalt": "resgld-figures",
}

_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: where the runs live, what to draw, where to write."""

    kind: str
    output: Path
    run_dirs: tuple[Path, ...] = ()
    sweep_table: Path | None = None
    bins: int = 120

    def __post_init__(self) -> None:
        if self.kind not in PLOT_KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; expected one of {PLOT_KINDS}")
        object.__setattr__(self, "output", Path(self.output))
        object.__setattr__(self, "run_dirs", tuple(Path(d) for d in self.run_dirs))
        if self.kind == "sweep_heatmap":
            if self.sweep_table is None:
                raise ValueError("sweep_heatmap needs a sweep table path")
            object.__setattr__(self, "sweep_table", Path(self.sweep_table))
        elif not self.run_dirs:
            raise ValueError(f"{self.kind} needs at least one run directory")


def _run_label(run_dir: Path) -> str:
    name = load_summary(run_dir).get("name", "")
    return name or run_dir.name


def _save(fig, output: Path) -> Path:
    output.parent.mkdir(parents=True, exist_ok=True)
    # strip writer-identifying/timestamp metadata so outputs are reproducible
    metadata = {"Date": None} if output.suffix == ".svg" else {"Software": None}
    fig.savefig(output, metadata=metadata)
    plt.close(fig)
    return output


def _density_overlay(spec: FigureSpec):
    fig, ax = plt.subplots()
    mix = mixture_from_summary(load_summary(spec.run_dirs[0]))
    lo = float(np.min(mix["means"]) - 6.0 * np.max(mix["stds"]))
    hi = float(np.max(mix["means"]) + 6.0 * np.max(mix["stds"]))
    for run_dir, color in zip(spec.run_dirs, _COLORS):
        samples = load_samples(run_dir)["position"]
        ax.hist(
            samples,
            bins=spec.bins,
            range=(lo, hi),
            density=True,
            histtype="stepfilled",
            alpha=0.35,
            color=color,
            edgecolor=color,
            label=_run_label(run_dir),
        )
    grid = np.linspace(lo, hi, 800)
    ax.plot(grid, mixture_pdf(mix, grid), "k--", lw=1.4, label="target density")
    ax.set_xlabel("position")
    ax.set_ylabel("density")
    ax.legend(loc="upper left")
    ax.set_title("sample densities vs analytic target")
    return fig


def _trace(spec: FigureSpec):
    fig, ax = plt.subplots()
    for run_dir, color in zip(spec.run_dirs, _COLORS):
        m = load_metrics(run_dir)
        if len(m["step"]) == 0:
            raise ArtifactFormatError(f"{Path(run_dir) / 'metrics.csv'}: no metric rows to plot")
        ax.plot(m["step"], m["w2"], color=color, lw=1.4, label=_run_label(run_dir))
    ax.set_xlabel("iteration")
    ax.set_ylabel("2-Wasserstein distance to target")
    ax.set_yscale("log")
    ax.legend()
    ax.set_title("convergence traces")
    return fig


def _sweep_heatmap(spec: FigureSpec):
    table = load_sweep(spec.sweep_table)
    etas = np.unique(table["eta"])
    noises = np.unique(table["grad_noise_std"])
    grid = np.full((len(noises), len(etas)), np.nan)
    for eta, gn, w2 in zip(table["eta"], table["grad_noise_std"], table["w2_mean"]):
        grid[np.searchsorted(noises, gn), np.searchsorted(etas, eta)] = w2
    fig, ax = plt.subplots()
    im = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(etas)), [f"{e:g}" for e in etas])
    ax.set_yticks(range(len(noises)), [f"{g:g}" for g in noises])
    ax.set_xlabel("step size")
    ax.set_ylabel("gradient-noise std")
    ax.set_title("cloud distance to fine-step reference")
    for i in range(len(noises)):
        for j in range(len(etas)):
            if not np.isnan(grid[i, j]):
                ax.text(j, i, f"{grid[i, j]:.3f}", ha="center", va="center",
                        color="w", fontsize=7)
    fig.colorbar(im, ax=ax, label="distance")
    return fig


def plot(spec: FigureSpec) -> Path:
    """Render one figure and return the written path."""
    with plt.rc_context(_STYLE):
        if spec.kind == "density_overlay":
            fig = _density_overlay(spec)
        elif spec.kind == "trace":
            fig = _trace(spec)
        else:
            fig = _sweep_heatmap(spec)
        return _save(fig, spec.output)
