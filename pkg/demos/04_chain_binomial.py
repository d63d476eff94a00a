# # Stochastic SEIR outbreaks
#
# A discrete-time chain-binomial model: every step, each susceptible,
# exposed and infectious individual moves on with a fixed probability.
# Small introductions often die out before taking off.

import numpy as np

from epiuq.stochastic import EI_ZERO, EpidemicState, SimConfig, run_ensemble, simulate

start = EpidemicState(0.0, 999, 0, 1, 0)
cfg = SimConfig(beta=0.001, sigma=1 / 5, gamma=1 / 5, initial=start, delta_t=0.25, seed=8, termination=EI_ZERO)

# %% One realisation.
tr = simulate(cfg)
print("duration", tr.t[-1], "final size", tr.final_size, "peak I", tr["I"].max())

# %% [markdown]
# An ensemble splits into minor outbreaks and major epidemics.

# %%
ens = run_ensemble(cfg, 2000, seed=8)
print("extinct fraction", ens.extinction_fraction)
print("mean major final size", round(ens.mean_major_final_size(), 1))
print("final size quantiles", ens.final_size_quantiles())

# %% Median infectious curve over the first few weeks.
mid = ens.bands["I"][1]
print(np.asarray(mid[:60:5]).round(1))
