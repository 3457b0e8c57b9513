"""Readers for the documented run-artifact schemas.

Every reader validates the header against the documented column list and
raises a :class:`ArtifactFormatError` naming the offending file and column,
so a schema drift fails loudly instead of mis-plotting.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

SAMPLES_COLUMNS = ["step", "position", "temperature"]
METRICS_COLUMNS = ["step", "w2", "l2_density", "accept_fraction"]
SWEEP_COLUMNS = ["eta", "grad_noise_std", "w2_mean", "w2_stderr", "n_runs"]


class ArtifactFormatError(ValueError):
    """An artifact file does not match its documented schema."""


def _read_table(path: Path, expected_columns: list[str]) -> dict[str, np.ndarray]:
    if not path.exists():
        raise ArtifactFormatError(f"{path}: file not found")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ArtifactFormatError(f"{path}: empty file, expected header "
                                      f"{','.join(expected_columns)}") from None
        if header != expected_columns:
            missing = [c for c in expected_columns if c not in header]
            extra = [c for c in header if c not in expected_columns]
            detail = []
            if missing:
                detail.append(f"missing column(s) {', '.join(missing)}")
            if extra:
                detail.append(f"unexpected column(s) {', '.join(extra)}")
            raise ArtifactFormatError(
                f"{path}: header mismatch ({'; '.join(detail) or 'wrong order'})"
            )
        rows = []
        for i, row in enumerate(reader, start=2):
            if len(row) != len(expected_columns):
                raise ArtifactFormatError(
                    f"{path}: line {i} has {len(row)} fields, expected {len(expected_columns)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as err:
                raise ArtifactFormatError(f"{path}: line {i}: {err}") from None
    data = np.asarray(rows, dtype=float) if rows else np.empty((0, len(expected_columns)))
    return {name: data[:, j] for j, name in enumerate(expected_columns)}


def load_samples(run_dir: Path) -> dict[str, np.ndarray]:
    return _read_table(Path(run_dir) / "samples.csv", SAMPLES_COLUMNS)


def load_metrics(run_dir: Path) -> dict[str, np.ndarray]:
    return _read_table(Path(run_dir) / "metrics.csv", METRICS_COLUMNS)


def load_sweep(path: Path) -> dict[str, np.ndarray]:
    return _read_table(Path(path), SWEEP_COLUMNS)


def load_summary(run_dir: Path) -> dict:
    path = Path(run_dir) / "summary.json"
    if not path.exists():
        raise ArtifactFormatError(f"{path}: file not found")
    with open(path, "r", encoding="utf-8") as fh:
        summary = json.load(fh)
    for key in ("name", "sampler", "config"):
        if key not in summary:
            raise ArtifactFormatError(f"{path}: summary missing key {key!r}")
    return summary


def mixture_from_summary(summary: dict) -> dict[str, np.ndarray]:
    """The analytic target echoed in a run summary: weights, means, stds."""
    try:
        mix = summary["config"]["model"]["mixture"]
        out = {k: np.asarray(mix[k], dtype=float) for k in ("weights", "means", "stds")}
    except (KeyError, TypeError) as err:
        raise ArtifactFormatError(f"summary config echo lacks a mixture spec: {err}") from None
    if not (len(out["weights"]) == len(out["means"]) == len(out["stds"])) or not len(out["weights"]):
        raise ArtifactFormatError("summary mixture spec has mismatched component lists")
    return out


def mixture_pdf(mix: dict[str, np.ndarray], x: np.ndarray) -> np.ndarray:
    z = (x[:, None] - mix["means"]) / mix["stds"]
    comps = np.exp(-0.5 * z * z) / (mix["stds"] * math.sqrt(2.0 * math.pi))
    return comps @ mix["weights"]
