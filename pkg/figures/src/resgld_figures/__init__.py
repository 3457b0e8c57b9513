"""Figure generation from resgld run artifacts.

This package is deliberately decoupled from the sampler library: it consumes
only the documented artifact files (samples.csv, metrics.csv, summary.json,
and the sweep table CSV) and never imports resgld itself.
"""

from .io import (
    ArtifactFormatError,
    load_metrics,
    load_samples,
    load_summary,
    load_sweep,
    mixture_from_summary,
)
from .plots import PLOT_KINDS, FigureSpec, plot

__all__ = [
    "ArtifactFormatError",
    "FigureSpec",
    "PLOT_KINDS",
    "plot",
    "load_samples",
    "load_metrics",
    "load_summary",
    "load_sweep",
    "mixture_from_summary",
]

__version__ = "0.1.0"
