"""Adaptive estimation of the stochastic-energy variance and the swap correction.

The estimator tracks sigma_hat_sq, a smoothed estimate of the energy-noise
variance, via the recursion

    sigma_hat_sq' = (1 - gamma_m) * sigma_hat_sq + gamma_m * observed_var

with gamma_m = 1/m (so the estimate is the running mean of observations and
the initial value washes out at the first update) or a fixed gamma in (0, 1]
(exponential smoothing, for drifting variance).  The swap correction derived
from it is (1/tau_low - 1/tau_high) * sigma_hat_sq / correction_factor; an
infinite correction_factor disables the correction entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = ["CorrectionEstimator", "sample_variance", "sa_update", "correction_term"]


@dataclass(frozen=True)
class CorrectionEstimator:
    """State and policy of the variance estimator.

    ``sigma_hat_sq`` is the current estimate and ``m`` the number of updates
    applied so far.  ``update_every`` is the estimator's cadence in kernel
    steps; ``n_replicates`` how many stochastic-energy draws feed each
    observed sample variance; ``variance_site`` where those draws are made
    ("cold", "hot", or "both" for the average of the two sites' variances).
    """

    sigma_hat_sq: float = 100.0
    m: int = 0
    gamma_mode: str = "robbins_monro"
    gamma: float = 0.3
    correction_factor: float = 1.0
    n_replicates: int = 10
    update_every: int = 100
    variance_site: str = "cold"

    def __post_init__(self) -> None:
        if self.sigma_hat_sq < 0.0:
            raise ValueError("sigma_hat_sq must be >= 0")
        if self.m < 0:
            raise ValueError("update counter must be >= 0")
        if self.gamma_mode not in ("robbins_monro", "exponential"):
            raise ValueError(f"unknown gamma mode {self.gamma_mode!r}")
        if self.gamma_mode == "exponential" and not (0.0 < self.gamma <= 1.0):
            raise ValueError("fixed smoothing gamma must lie in (0, 1]")
        if self.correction_factor <= 0.0:
            raise ValueError("correction factor must be positive (math.inf disables it)")
        if self.n_replicates < 2:
            raise ValueError("need at least 2 replicates for a sample variance")
        if self.update_every < 1:
            raise ValueError("update cadence must be >= 1 kernel step")
        if self.variance_site not in ("cold", "hot", "both"):
            raise ValueError(f"unknown variance site {self.variance_site!r}")


def sample_variance(values) -> float:
    """Unbiased sample variance sum((v - mean)^2) / (n - 1); needs n >= 2."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("sample variance needs a flat list of at least 2 values")
    if arr[0] == arr[-1] and np.all(arr == arr[0]):
        return 0.0  # keep the constant case exact instead of ~1e-31
    return float(arr.var(ddof=1))


def sa_update(est: CorrectionEstimator, observed_var: float) -> CorrectionEstimator:
    """One smoothing update with a fresh variance observation (>= 0)."""
    if observed_var < 0.0:
        raise ValueError("variance observations cannot be negative")
    m_new = est.m + 1
    gamma = 1.0 / m_new if est.gamma_mode == "robbins_monro" else est.gamma
    smoothed = (1.0 - gamma) * est.sigma_hat_sq + gamma * observed_var
    return replace(est, sigma_hat_sq=smoothed, m=m_new)


def correction_term(est: CorrectionEstimator, tau_low: float, tau_high: float) -> float:
    """The energy offset (1/tau_low - 1/tau_high) * sigma_hat_sq / correction_factor."""
    if not 0.0 < tau_low < tau_high:
        raise ValueError("temperatures must satisfy 0 < tau_low < tau_high")
    if math.isinf(est.correction_factor):
        return 0.0
    return (1.0 / tau_low - 1.0 / tau_high) * est.sigma_hat_sq / est.correction_factor
