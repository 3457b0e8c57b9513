"""Replica-exchange stochastic gradient Langevin dynamics with bias-corrected swaps.

The package couples a low-temperature chain (the inference chain) to a
high-temperature exploration chain and lets them exchange states through a
Metropolis-style swap.  When energies are only available through noisy
estimates, the raw swap rate is biased upward because the exponential is
nonlinear in the noise; the corrected rate subtracts an adaptively estimated
variance term to restore unbiasedness, with a divisor (the correction factor)
to trade a little bias back for more frequent swaps.

Layout:

- :mod:`resgld.targets`      analytic Gaussian-mixture energies + noise laws
- :mod:`resgld.kernels`      the Langevin step and value schedules
- :mod:`resgld.adaptation`   the noise-variance estimator and correction term
- :mod:`resgld.exchange`     swap rates, swap decisions, the paired iteration
- :mod:`resgld.diagnostics`  Wasserstein/L2 scoring, swap summaries, sweeps
- :mod:`resgld.harness`      scenario configs, presets, runs, artifacts
- :mod:`resgld.cli`          the ``resgld`` command line
"""

from ._version import __version__
from .adaptation import CorrectionEstimator, correction_term, sa_update, sample_variance
from .diagnostics import (
    Histogram,
    MetricTrace,
    SweepCell,
    SweepResult,
    SwapRateSummary,
    discretization_sweep,
    l2_density_error,
    swap_rate_summary,
    w2_empirical_vs_analytic,
)
from .exchange import (
    ReplicaConfig,
    ReplicaPair,
    StreamSet,
    SwapDecision,
    attempt_swap,
    corrected_swap_rate,
    mc_swap_unbiasedness,
    naive_swap_rate,
    step_pair,
)
from .harness import (
    PRESET_NAMES,
    RunArtifacts,
    ScenarioConfig,
    config_from_dict,
    config_to_dict,
    dump_config,
    load_config,
    preset,
    rng_streams,
    run_discretization_sweep,
    run_scenario,
    verify_equivalence,
    verify_sa_consistency,
    verify_unbiasedness,
    write_sweep_csv,
)
from .kernels import ChainState, DivergenceError, Schedule, schedule_value, sgld_step
from .streams import stream
from .targets import (
    EnergyModel,
    MixtureSpec,
    NoiseSpec,
    exact_energy,
    exact_gradient,
    mixture_logpdf,
    mixture_pdf,
    sample_mixture,
    stochastic_energy,
    stochastic_gradient,
    target_cdf,
    target_quantile,
)

__all__ = [
    "__version__",
    # targets
    "MixtureSpec", "NoiseSpec", "EnergyModel",
    "exact_energy", "exact_gradient", "stochastic_energy", "stochastic_gradient",
    "target_cdf", "target_quantile", "mixture_pdf", "mixture_logpdf", "sample_mixture",
    # kernels
    "ChainState", "Schedule", "DivergenceError", "schedule_value", "sgld_step",
    # adaptation
    "CorrectionEstimator", "sample_variance", "sa_update", "correction_term",
    # exchange
    "ReplicaConfig", "ReplicaPair", "SwapDecision", "StreamSet",
    "naive_swap_rate", "corrected_swap_rate", "attempt_swap", "step_pair",
    "mc_swap_unbiasedness",
    # diagnostics
    "Histogram", "MetricTrace", "SwapRateSummary", "SweepCell", "SweepResult",
    "w2_empirical_vs_analytic", "l2_density_error", "swap_rate_summary",
    "discretization_sweep",
    # streams & harness
    "stream", "rng_streams",
    "ScenarioConfig", "RunArtifacts", "preset", "PRESET_NAMES", "run_scenario",
    "config_to_dict", "config_from_dict", "dump_config", "load_config",
    "run_discretization_sweep", "write_sweep_csv",
    "verify_unbiasedness", "verify_sa_consistency", "verify_equivalence",
]
