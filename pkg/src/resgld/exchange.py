"""Two-chain replica exchange: swap rates, swap decisions, and the full iteration.

One iteration advances both chains with a Langevin step at their current
temperatures, optionally refreshes the noise-variance estimate, then attempts
one swap with probability min(1, rate * intensity_times_lr).

Two equivalent swap representations are supported.  Under ``"position"`` the
two chains keep fixed temperature slots and exchange positions on an accepted
swap; under ``"temperature"`` the chains keep their positions and exchange
temperature labels.  Because every random draw is tied to a *temperature slot*
(not to a chain), the two representations generate identical
{(position, temperature)} pairs step for step, exactly to the bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adaptation import CorrectionEstimator, correction_term, sa_update, sample_variance
from .kernels import ChainState, Schedule, schedule_value, sgld_step
from .targets import EnergyModel, stochastic_energy

__all__ = [
    "ReplicaConfig",
    "ReplicaPair",
    "SwapDecision",
    "StreamSet",
    "naive_swap_rate",
    "corrected_swap_rate",
    "attempt_swap",
    "step_pair",
    "mc_swap_unbiasedness",
]

_EXP_CLAMP = 700.0  # exp(700) is finite; the decision rule caps rates at 1 anyway


@dataclass(frozen=True)
class ReplicaConfig:
    """Static pair settings: the two temperatures, the swap-intensity product
    r * eta (so the per-step swap probability min(1, rate) * intensity_times_lr
    stays a probability), and the swap representation."""

    tau_low: float
    tau_high: float
    intensity_times_lr: float = 1.0
    representation: str = "position"

    def __post_init__(self) -> None:
        if not 0.0 < self.tau_low < self.tau_high:
            raise ValueError("temperatures must satisfy 0 < tau_low < tau_high")
        if not 0.0 < self.intensity_times_lr <= 1.0:
            raise ValueError("intensity_times_lr must lie in (0, 1]")
        if self.representation not in ("position", "temperature"):
            raise ValueError(f"unknown representation {self.representation!r}")


@dataclass(frozen=True)
class SwapDecision:
    """Record of one swap attempt (one CSV row in the swap log)."""

    step_index: int
    stochastic_energy_low: float
    stochastic_energy_high: float
    sigma_hat_sq: float
    correction_used: float
    rate: float
    uniform_draw: float
    accepted: bool


@dataclass(frozen=True)
class ReplicaPair:
    """Two coupled chains and their swap bookkeeping.

    ``chain_a``/``chain_b`` are the physical chains; ``cold_chain`` is the
    index (0 or 1) of the chain currently holding the low temperature.  Under
    the position representation ``cold_chain`` never moves; under the
    temperature representation it flips on accepted swaps.
    """

    chain_a: ChainState
    chain_b: ChainState
    config: ReplicaConfig
    cold_chain: int = 0
    swap_attempts: int = 0
    swap_accepts: int = 0

    def __post_init__(self) -> None:
        if self.cold_chain not in (0, 1):
            raise ValueError("cold_chain must be 0 or 1")
        if not 0 <= self.swap_accepts <= self.swap_attempts:
            raise ValueError("swap counters must satisfy 0 <= accepts <= attempts")

    @classmethod
    def start(
        cls, config: ReplicaConfig, position_low: float = 0.0, position_high: float = 0.0
    ) -> "ReplicaPair":
        return cls(
            chain_a=ChainState(position=position_low),
            chain_b=ChainState(position=position_high),
            config=config,
        )

    @property
    def low(self) -> ChainState:
        """The chain currently at tau_low (the inference chain)."""
        return self.chain_a if self.cold_chain == 0 else self.chain_b

    @property
    def high(self) -> ChainState:
        """The chain currently at tau_high."""
        return self.chain_b if self.cold_chain == 0 else self.chain_a

    def state_pairs(self, tau_low: float, tau_high: float) -> tuple[tuple[float, float], ...]:
        """The multiset {(position, temperature)} as a sorted tuple of pairs."""
        pairs = [(self.low.position, tau_low), (self.high.position, tau_high)]
        return tuple(sorted(pairs))


def _clamped_exp(exponent):
    return np.exp(np.clip(exponent, -_EXP_CLAMP, _EXP_CLAMP))


def _clamped_exp_scalar(exponent: float) -> float:
    return math.exp(min(_EXP_CLAMP, max(-_EXP_CLAMP, exponent)))


def naive_swap_rate(energy_low, energy_high, tau_low: float, tau_high: float):
    """exp((1/tau_low - 1/tau_high) * (energy_low - energy_high)).

    Accepts scalars or arrays of energies.  Overflow saturates (the exponent
    is clamped to +-700) rather than producing inf/NaN.
    """
    if not 0.0 < tau_low < tau_high:
        raise ValueError("temperatures must satisfy 0 < tau_low < tau_high")
    gap = 1.0 / tau_low - 1.0 / tau_high
    if isinstance(energy_low, (float, int)) and isinstance(energy_high, (float, int)):
        return _clamped_exp_scalar(gap * (energy_low - energy_high))
    out = _clamped_exp(gap * (np.asarray(energy_low) - np.asarray(energy_high)))
    return float(out) if np.ndim(out) == 0 else out


def corrected_swap_rate(
    energy_low,
    energy_high,
    tau_low: float,
    tau_high: float,
    sigma_hat_sq: float,
    correction_factor: float,
):
    """The bias-corrected swap rate.

    Subtracts (1/tau_low - 1/tau_high) * sigma_hat_sq / correction_factor from
    the energy difference before exponentiating, which makes the rate an
    unbiased estimate of the exact-energy rate when the energy noise is
    Gaussian with variance sigma_hat_sq and correction_factor is 1.  With
    sigma_hat_sq = 0 or an infinite correction_factor this is exactly
    :func:`naive_swap_rate`.
    """
    if not 0.0 < tau_low < tau_high:
        raise ValueError("temperatures must satisfy 0 < tau_low < tau_high")
    if sigma_hat_sq < 0.0:
        raise ValueError("sigma_hat_sq must be >= 0")
    if correction_factor <= 0.0:
        raise ValueError("correction factor must be positive (math.inf allowed)")
    gap = 1.0 / tau_low - 1.0 / tau_high
    corr = 0.0 if math.isinf(correction_factor) else gap * sigma_hat_sq / correction_factor
    if isinstance(energy_low, (float, int)) and isinstance(energy_high, (float, int)):
        return _clamped_exp_scalar(gap * (energy_low - energy_high - corr))
    out = _clamped_exp(gap * (np.asarray(energy_low) - np.asarray(energy_high) - corr))
    return float(out) if np.ndim(out) == 0 else out


def attempt_swap(
    pair: ReplicaPair,
    rate: float,
    u: float,
    *,
    step_index: int | None = None,
    energy_low: float = math.nan,
    energy_high: float = math.nan,
    sigma_hat_sq: float = math.nan,
    correction: float = math.nan,
) -> tuple[ReplicaPair, SwapDecision]:
    """Resolve one swap attempt with uniform draw ``u`` in [0, 1).

    Accepts iff u < min(1, rate * intensity_times_lr).  On acceptance the
    position representation exchanges the two chains' positions; the
    temperature representation flips which chain holds tau_low.  Counters are
    updated either way and the decision is returned for logging.
    """
    if not 0.0 <= u < 1.0:
        raise ValueError("uniform draw must lie in [0, 1)")
    if rate < 0.0:
        raise ValueError("swap rate must be >= 0")
    accepted = u < min(1.0, rate * pair.config.intensity_times_lr)
    decision = SwapDecision(
        step_index=pair.low.step_index if step_index is None else step_index,
        stochastic_energy_low=energy_low,
        stochastic_energy_high=energy_high,
        sigma_hat_sq=sigma_hat_sq,
        correction_used=correction,
        rate=rate,
        uniform_draw=u,
        accepted=accepted,
    )
    if not accepted:
        pair = ReplicaPair(
            chain_a=pair.chain_a,
            chain_b=pair.chain_b,
            config=pair.config,
            cold_chain=pair.cold_chain,
            swap_attempts=pair.swap_attempts + 1,
            swap_accepts=pair.swap_accepts,
        )
        return pair, decision
    if pair.config.representation == "position":
        chain_a = ChainState(pair.chain_b.position, pair.chain_a.step_index)
        chain_b = ChainState(pair.chain_a.position, pair.chain_b.step_index)
        cold_chain = pair.cold_chain
    else:
        chain_a, chain_b = pair.chain_a, pair.chain_b
        cold_chain = 1 - pair.cold_chain
    pair = ReplicaPair(
        chain_a=chain_a,
        chain_b=chain_b,
        config=pair.config,
        cold_chain=cold_chain,
        swap_attempts=pair.swap_attempts + 1,
        swap_accepts=pair.swap_accepts + 1,
    )
    return pair, decision


@dataclass(frozen=True)
class StreamSet:
    """Independent random streams, one per purpose, all keyed by temperature slot.

    Kernel streams feed gradient noise and the Langevin kick of whichever
    chain currently holds that slot's temperature; energy streams feed the
    swap-rate energy estimates; ``variance`` feeds the estimator replicates
    and ``swap_uniform`` the acceptance draws.
    """

    kernel_cold: np.random.Generator
    kernel_hot: np.random.Generator
    energy_cold: np.random.Generator
    energy_hot: np.random.Generator
    variance: np.random.Generator
    swap_uniform: np.random.Generator


def _observed_variance(
    est: CorrectionEstimator, model: EnergyModel, pair: ReplicaPair, rng: np.random.Generator
) -> float:
    """Sample variance of fresh stochastic-energy replicates at the configured site."""

    def var_at(x: float) -> float:
        reps = stochastic_energy(model, np.full(est.n_replicates, x), rng)
        return sample_variance(reps)

    if est.variance_site == "cold":
        return var_at(pair.low.position)
    if est.variance_site == "hot":
        return var_at(pair.high.position)
    return 0.5 * (var_at(pair.low.position) + var_at(pair.high.position))


def step_pair(
    pair: ReplicaPair,
    model: EnergyModel,
    eta_low: Schedule,
    eta_high: Schedule,
    tau_low: Schedule,
    tau_high: Schedule,
    estimator: CorrectionEstimator | None,
    streams: StreamSet,
) -> tuple[ReplicaPair, SwapDecision, CorrectionEstimator | None]:
    """One full iteration: Langevin steps, estimator refresh, swap attempt.

    Schedules are evaluated at the pre-step index.  If ``estimator`` is None
    the naive (uncorrected) rate is used and no variance estimation happens.
    The swap-rate energies are fresh draws at the post-step positions and are
    never reused from the estimator replicates.
    """
    k = pair.low.step_index
    if pair.high.step_index != k:
        raise ValueError("paired chains must step in lockstep")
    t1 = schedule_value(tau_low, k)
    t2 = schedule_value(tau_high, k)
    if not t1 < t2:
        raise ValueError(f"temperature schedules crossed at step {k}: {t1} >= {t2}")

    new_cold = sgld_step(pair.low, model, schedule_value(eta_low, k), t1, streams.kernel_cold)
    new_hot = sgld_step(pair.high, model, schedule_value(eta_high, k), t2, streams.kernel_hot)
    chain_a, chain_b = (new_cold, new_hot) if pair.cold_chain == 0 else (new_hot, new_cold)
    pair = ReplicaPair(
        chain_a=chain_a,
        chain_b=chain_b,
        config=pair.config,
        cold_chain=pair.cold_chain,
        swap_attempts=pair.swap_attempts,
        swap_accepts=pair.swap_accepts,
    )

    if estimator is not None and new_cold.step_index % estimator.update_every == 0:
        estimator = sa_update(
            estimator, _observed_variance(estimator, model, pair, streams.variance)
        )

    e_low = stochastic_energy(model, pair.low.position, streams.energy_cold)
    e_high = stochastic_energy(model, pair.high.position, streams.energy_hot)
    if estimator is None:
        rate = naive_swap_rate(e_low, e_high, t1, t2)
        sigma_rec, corr = math.nan, 0.0
    else:
        rate = corrected_swap_rate(
            e_low, e_high, t1, t2, estimator.sigma_hat_sq, estimator.correction_factor
        )
        sigma_rec = estimator.sigma_hat_sq
        corr = correction_term(estimator, t1, t2)
    u = streams.swap_uniform.random()
    pair, decision = attempt_swap(
        pair,
        rate,
        u,
        step_index=new_cold.step_index,
        energy_low=e_low,
        energy_high=e_high,
        sigma_hat_sq=sigma_rec,
        correction=corr,
    )
    return pair, decision, estimator


def mc_swap_unbiasedness(
    tau_low: float,
    tau_high: float,
    sigma: float,
    delta_u: float,
    n_draws: int,
    rng: np.random.Generator,
) -> float:
    """Monte-Carlo mean of the corrected rate under Gaussian energy noise.

    Each draw evaluates the corrected rate (sigma_hat_sq = sigma^2,
    correction_factor = 1) at an energy difference delta_u + sqrt(2)*sigma*Z.
    The mean converges to exp((1/tau_low - 1/tau_high) * delta_u), the rate
    the exact energies would give; with sigma = 0 every draw equals it.
    """
    if n_draws < 1:
        raise ValueError("need at least one draw")
    if sigma < 0.0:
        raise ValueError("sigma must be >= 0")
    z = rng.standard_normal(n_draws)
    noisy_delta = delta_u + math.sqrt(2.0) * sigma * z
    rates = corrected_swap_rate(noisy_delta, 0.0, tau_low, tau_high, sigma**2, 1.0)
    return float(np.mean(rates))
