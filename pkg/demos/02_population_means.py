"""Population means and what happens opposite them.

Run with ``python3 demos/02_population_means.py``.
"""
# %% [markdown]
# A two-level density, raised by a factor alpha on an arc around 0 and
# compensated opposite, shows all three regimes. Below uniform the mean
# is unique. At exactly uniform it spreads over an interval. Above
# uniform it splits in two.

# %%
import numpy as np

from circfrechet import example_family, population_frechet, population_means, sim_family, CASES

for alpha in (0.9, 1.0, 1.2):
    r = population_means(example_family(alpha, 0.4))
    means = [round(m / np.pi, 4) for m in r.global_means]
    flats = [(round(lo / np.pi, 4), round(hi / np.pi, 4)) for lo, hi in r.flat_intervals]
    print(f"alpha={alpha}: means {means} (units of pi), flat intervals {flats}")

# %% [markdown]
# The Frechet function is quadratic in two pieces, so it can be tabulated
# directly.

# %%
d = example_family(1.2, 0.4)
for mu in np.linspace(0, np.pi, 6):
    print(f"F({mu:.3f}) = {population_frechet(d, mu):.6f}")

# %% [markdown]
# The simulation family keeps the density symmetric about 0 and tunes how
# it approaches the uniform level at the antipode. The classification of
# that point decides the convergence rate of the sample mean.

# %%
for case, params in CASES.items():
    r = population_means(sim_family(params))
    if r.flat_intervals:
        print(f"case {case}: means fill {np.round(r.flat_intervals[0], 4)}")
    else:
        print(f"case {case}: mean {r.mean:+.3f}, antipode {r.classifications[0].kind}")
