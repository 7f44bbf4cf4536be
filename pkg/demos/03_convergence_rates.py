"""Slowed convergence of the sample mean, by simulation.

Run with ``python3 demos/03_convergence_rates.py``; it takes about a
minute on one core.
"""
# %% [markdown]
# When the density touches the uniform level opposite the mean, the
# sample mean converges at n^(-1/(2(k+1))) rather than n^(-1/2). A seeded
# Monte Carlo study compares the median absolute deviation of the sample
# mean with the limit law.

# %%
from circfrechet import CASES, ExperimentConfig, estimate_rate, mad_experiment, predict_sim_family

for case in ("0a", "1b", "2"):
    pred = predict_sim_family(CASES[case])
    curve = mad_experiment(ExperimentConfig.for_case(case, replications=200))
    print(f"case {case}: predicted slope {-pred.rate_exponent:+.3f}, "
          f"fitted slope {estimate_rate(curve):+.3f}")
    for row in curve.rows:
        print(f"  n={row.n:>6}  MAD {row.empirical_mad:.4f}  predicted {row.predicted_mad:.4f}")

# %% [markdown]
# For k >= 1 the predicted MAD is still a sizeable fraction of a radian at
# n = 10^4. The error on the circle is bounded, so small samples sit below
# the power law and the fitted slope is shallower than the limit.
