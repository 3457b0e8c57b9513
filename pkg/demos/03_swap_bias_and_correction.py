"""Why raw swap rates are biased under noisy energies, and how the
variance correction removes the bias.

The swap rate exponentiates an energy difference.  Feeding it unbiased but
noisy energies inflates its mean by exp(((1/tau1 - 1/tau2) * sigma)^2)
because the exponential is convex; subtracting (1/tau1 - 1/tau2) * sigma^2
inside the exponent restores the exact-energy mean.  The variance itself is
unknown in practice, so an averaging estimator learns it on the fly.

Run:  python demos/03_swap_bias_and_correction.py
"""

import math

from resgld import (
    CorrectionEstimator,
    corrected_swap_rate,
    mc_swap_unbiasedness,
    naive_swap_rate,
    sa_update,
    sample_variance,
    stream,
)

TAU1, TAU2, SIGMA = 1.0, 10.0, 1.0
GAP = 1.0 / TAU1 - 1.0 / TAU2
rng = stream(0, "demo-bias")

print(f"temperatures {TAU1} / {TAU2}; energy-noise std {SIGMA}")
print(f"{'energy gap':>10} {'exact rate':>11} {'raw mean':>9} {'corrected mean':>15}")
for delta in (-1.0, 0.0, 1.0):
    z = rng.standard_normal(500_000)
    noisy_delta = delta + math.sqrt(2.0) * SIGMA * z
    raw = naive_swap_rate(noisy_delta, 0.0, TAU1, TAU2).mean()
    corrected = mc_swap_unbiasedness(TAU1, TAU2, SIGMA, delta, 500_000, stream(1, "mc", delta))
    print(f"{delta:>10.1f} {math.exp(GAP * delta):>11.4f} {raw:>9.4f} {corrected:>15.4f}")
print(f"raw-rate inflation factor: exp((0.9*sigma)^2) = {math.exp((GAP * SIGMA) ** 2):.4f}")

# The estimator: seed it with a deliberately wrong guess and let variance
# observations (each the sample variance of 10 noisy-energy replicates)
# pull it to the truth.  The 1/m schedule makes it the running mean.
est = CorrectionEstimator(sigma_hat_sq=100.0, n_replicates=10)
print("\nestimator trajectory from a wrong initial guess of 100:")
for m in range(1, 201):
    observed = sample_variance(2.0 * rng.standard_normal(10))  # noise std 2 -> variance 4
    est = sa_update(est, observed)
    if m in (1, 3, 10, 50, 200):
        print(f"  after {m:>3} updates: sigma_hat_sq = {est.sigma_hat_sq:7.3f}")

print("\ncorrected rate with the learned variance vs the overcorrecting guess:")
for sig_sq, label in ((est.sigma_hat_sq, "learned"), (100.0, "initial guess")):
    r = corrected_swap_rate(1.0, 0.0, TAU1, TAU2, sig_sq, 1.0)
    print(f"  sigma_hat_sq {sig_sq:7.3f} ({label:>13}): rate at gap +1 = {r:.3e}")
