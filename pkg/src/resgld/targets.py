"""Analytic 1-D Gaussian-mixture energy landscapes with injectable noise.

The sampling targets here are mixtures of Gaussians whose energy
(negative log-density), gradient, CDF and quantiles are all available in
closed form, so sampler output can be scored exactly.  Stochastic
energy/gradient evaluation is modelled by additive noise laws attached to
an :class:`EnergyModel`; the exact quantities stay available alongside.

All evaluation functions accept a float or a 1-D array of positions and
are pure given an explicit ``numpy.random.Generator``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import ndtr

__all__ = [
    "MixtureSpec",
    "NoiseSpec",
    "EnergyModel",
    "exact_energy",
    "exact_gradient",
    "stochastic_energy",
    "stochastic_gradient",
    "target_cdf",
    "target_quantile",
    "mixture_pdf",
    "mixture_logpdf",
    "sample_mixture",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class MixtureSpec:
    """A 1-D Gaussian mixture: sum_i weights[i] * N(means[i], stds[i]^2).

    Weights must be strictly positive and sum to one (within 1e-12);
    component widths must be strictly positive.
    """

    weights: tuple[float, ...]
    means: tuple[float, ...]
    stds: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        object.__setattr__(self, "stds", tuple(float(s) for s in self.stds))
        k = len(self.weights)
        if k < 1 or len(self.means) != k or len(self.stds) != k:
            raise ValueError("weights, means and stds must share a common length >= 1")
        if any(w <= 0.0 for w in self.weights):
            raise ValueError("mixture weights must be strictly positive")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to 1 within 1e-12")
        if any(s <= 0.0 for s in self.stds):
            raise ValueError("component stds must be strictly positive")

    @property
    def n_components(self) -> int:
        return len(self.weights)

    def span(self, widths: float = 6.0) -> tuple[float, float]:
        """Interval [min mean - widths*max std, max mean + widths*max std]."""
        pad = widths * max(self.stds)
        return min(self.means) - pad, max(self.means) + pad

    # Cached parameter arrays for vectorised evaluation.  cached_property
    # stores via the instance __dict__, which frozen dataclasses permit.
    @cached_property
    def _means_arr(self) -> np.ndarray:
        return np.asarray(self.means, dtype=float)

    @cached_property
    def _stds_arr(self) -> np.ndarray:
        return np.asarray(self.stds, dtype=float)

    @cached_property
    def _weights_arr(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @cached_property
    def _log_wnorm_arr(self) -> np.ndarray:
        # log w_i - log sigma_i - log sqrt(2 pi): per-component log-density peak terms
        return (
            np.log(self._weights_arr) - np.log(self._stds_arr) - _LOG_SQRT_2PI
        )

    @cached_property
    def _scalar_params(self) -> tuple[tuple[float, float, float], ...]:
        # (log weight norm, mean, std) per component, as plain floats for the
        # scalar fast path used by the step loops.
        return tuple(
            (float(lw), mu, sd)
            for lw, mu, sd in zip(self._log_wnorm_arr, self.means, self.stds)
        )


@dataclass(frozen=True)
class NoiseSpec:
    """Additive noise law for stochastic energy/gradient evaluation.

    ``kind`` is one of ``"none"``, ``"gaussian"`` (parameter ``std``) or
    ``"student_t"`` (parameters ``dof`` and ``scale``).  Student-t noise
    requires dof > 2 so its variance is finite.
    """

    kind: str = "none"
    std: float = 0.0
    dof: float = 0.0
    scale: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "gaussian", "student_t"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind == "gaussian" and self.std < 0.0:
            raise ValueError("gaussian noise std must be >= 0")
        if self.kind == "student_t":
            if self.dof <= 2.0:
                raise ValueError("student_t noise needs dof > 2 for finite variance")
            if self.scale < 0.0:
                raise ValueError("student_t noise scale must be >= 0")

    @classmethod
    def none(cls) -> "NoiseSpec":
        return cls(kind="none")

    @classmethod
    def gaussian(cls, std: float) -> "NoiseSpec":
        return cls(kind="gaussian", std=float(std))

    @classmethod
    def student_t(cls, dof: float, scale: float) -> "NoiseSpec":
        return cls(kind="student_t", dof=float(dof), scale=float(scale))

    @property
    def is_none(self) -> bool:
        return self.kind == "none"

    def noise_std(self) -> float:
        """Standard deviation of one draw (0 for the no-noise law)."""
        if self.kind == "gaussian":
            return self.std
        if self.kind == "student_t":
            return self.scale * math.sqrt(self.dof / (self.dof - 2.0))
        return 0.0

    def draw(self, rng: np.random.Generator, size: int | None = None):
        """One draw (or ``size`` draws) from this law.

        Student-t draws are built as Z / sqrt(V/dof) with Z standard normal
        and V chi-square(dof), both taken from ``rng`` in that order, so the
        stream consumption per draw is fixed.
        """
        if self.kind == "gaussian":
            return self.std * rng.standard_normal(size)
        if self.kind == "student_t":
            z = rng.standard_normal(size)
            v = rng.chisquare(self.dof, size)
            return self.scale * z / np.sqrt(v / self.dof)
        return 0.0 if size is None else np.zeros(size)


@dataclass(frozen=True)
class EnergyModel:
    """A mixture target plus the noise laws of its stochastic estimators."""

    mixture: MixtureSpec
    energy_noise: NoiseSpec = NoiseSpec.none()
    gradient_noise: NoiseSpec = NoiseSpec.none()


def _component_logs(mixture: MixtureSpec, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-component log densities (..., K) and the standardised offsets z."""
    z = (x[..., None] - mixture._means_arr) / mixture._stds_arr
    return mixture._log_wnorm_arr - 0.5 * z * z, z


def _as_positions(x) -> tuple[np.ndarray, bool]:
    xs = np.asarray(x, dtype=float)
    if xs.ndim > 1:
        raise ValueError("positions must be a scalar or a 1-D array")
    return xs, xs.ndim == 0


def _scalar_logpdf(mixture: MixtureSpec, x: float) -> float:
    best = -math.inf
    logs = []
    for lw, mu, sd in mixture._scalar_params:
        z = (x - mu) / sd
        val = lw - 0.5 * z * z
        logs.append(val)
        if val > best:
            best = val
    acc = 0.0
    for val in logs:
        acc += math.exp(val - best)
    return best + math.log(acc)


def _scalar_gradient(mixture: MixtureSpec, x: float) -> float:
    best = -math.inf
    rows = []
    for lw, mu, sd in mixture._scalar_params:
        z = (x - mu) / sd
        val = lw - 0.5 * z * z
        rows.append((val, z / sd))
        if val > best:
            best = val
    num = 0.0
    den = 0.0
    for val, pull in rows:
        w = math.exp(val - best)
        num += w * pull
        den += w
    return num / den


def mixture_logpdf(mixture: MixtureSpec, x):
    """log density of the mixture at x."""
    if isinstance(x, (float, int)):
        return _scalar_logpdf(mixture, float(x))
    xs, scalar = _as_positions(x)
    logs, _ = _component_logs(mixture, xs)
    m = logs.max(axis=-1)
    out = m + np.log(np.exp(logs - m[..., None]).sum(axis=-1))
    return float(out) if scalar else out


def mixture_pdf(mixture: MixtureSpec, x):
    """Density of the mixture at x."""
    out = np.exp(mixture_logpdf(mixture, x))
    return float(out) if np.ndim(out) == 0 else out


def exact_energy(model: EnergyModel, x):
    """Exact energy U(x) = -log density at x.  Rejects non-finite positions."""
    if isinstance(x, (float, int)):
        if not math.isfinite(x):
            raise ValueError("energy evaluation requires finite positions")
        return -_scalar_logpdf(model.mixture, float(x))
    xs, scalar = _as_positions(x)
    if not np.all(np.isfinite(xs)):
        raise ValueError("energy evaluation requires finite positions")
    out = -mixture_logpdf(model.mixture, xs)
    return float(out) if scalar else out


def exact_gradient(model: EnergyModel, x):
    """dU/dx: the softmax-weighted average of per-component pulls (x-mu)/sigma^2."""
    if isinstance(x, (float, int)):
        return _scalar_gradient(model.mixture, float(x))
    xs, scalar = _as_positions(x)
    mix = model.mixture
    logs, z = _component_logs(mix, xs)
    w = np.exp(logs - logs.max(axis=-1, keepdims=True))
    g = (w * z / mix._stds_arr).sum(axis=-1) / w.sum(axis=-1)
    return float(g) if scalar else g


def stochastic_energy(model: EnergyModel, x, rng: np.random.Generator):
    """Unbiased noisy energy: exact_energy(x) plus one energy-noise draw per position."""
    u = exact_energy(model, x)
    if model.energy_noise.is_none:
        return u
    if isinstance(u, float):
        return u + float(model.energy_noise.draw(rng))
    return u + model.energy_noise.draw(rng, len(u))


def stochastic_gradient(model: EnergyModel, x, rng: np.random.Generator):
    """Unbiased noisy gradient: exact_gradient(x) plus one gradient-noise draw per position."""
    g = exact_gradient(model, x)
    if model.gradient_noise.is_none:
        return g
    if isinstance(g, float):
        return g + float(model.gradient_noise.draw(rng))
    return g + model.gradient_noise.draw(rng, len(g))


def target_cdf(mixture: MixtureSpec, x):
    """Mixture CDF: sum_i w_i * Phi((x - mu_i) / sigma_i)."""
    xs, scalar = _as_positions(x)
    z = (xs[..., None] - mixture._means_arr) / mixture._stds_arr
    out = (mixture._weights_arr * ndtr(z)).sum(axis=-1)
    return float(out) if scalar else out


def target_quantile(mixture: MixtureSpec, p, tol: float = 1e-12):
    """Inverse mixture CDF by bisection, to absolute tolerance ``tol``.

    Probabilities must lie strictly inside (0, 1).
    """
    ps, scalar = _as_positions(p)
    if np.any(ps <= 0.0) or np.any(ps >= 1.0):
        raise ValueError("quantile levels must lie strictly inside (0, 1)")
    # Bracket generous enough for any level reachable from a finite grid:
    # Phi(-40) ~ 1e-350 underflows to 0, so widen until the CDF straddles p.
    lo = np.full(ps.shape, min(mixture.means) - 20.0 * max(mixture.stds))
    hi = np.full(ps.shape, max(mixture.means) + 20.0 * max(mixture.stds))
    while np.any(target_cdf(mixture, lo) > ps):
        lo -= 20.0 * max(mixture.stds)
    while np.any(target_cdf(mixture, hi) < ps):
        hi += 20.0 * max(mixture.stds)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        below = target_cdf(mixture, mid) < ps
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    return float(out) if scalar else out


def sample_mixture(mixture: MixtureSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n exact i.i.d. draws by component sampling (categorical then normal)."""
    idx = rng.choice(mixture.n_components, size=n, p=mixture._weights_arr)
    return mixture._means_arr[idx] + mixture._stds_arr[idx] * rng.standard_normal(n)
