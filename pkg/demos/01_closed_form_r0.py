# # Reproduction numbers from a growth rate
#
# Given an early exponential growth rate and mean stage durations, each model
# structure implies its own R0. Longer, more regular latent periods push it up.

import numpy as np

from epiuq import r0_seir, r0_seminr, r0_sir
from epiuq.r0 import growth_rate_seir

# %%
lam, gamma, sigma = 0.1, 1 / 5, 1 / 5
print("SIR   ", r0_sir(lam, gamma))
print("SEIR  ", r0_seir(lam, gamma, sigma))
print("SEmInR", r0_seminr(lam, gamma, sigma, 4.5, 3))

# %% [markdown]
# The chain shapes interpolate between exponential stages (m = n = 1, which is
# SEIR) and fixed delays (m, n large).

# %%
for m in (1, 2, 4.5, 10, 100):
    print(f"m=n={m:<5} R0={r0_seminr(lam, gamma, sigma, m, m):.4f}")

# %% [markdown]
# Going the other way: the SEIR growth rate implied by a transmission rate.
# Feeding it back through r0_seir recovers beta / gamma.

# %%
beta = 0.5
g = growth_rate_seir(beta, gamma, sigma)
print("growth rate", g, "-> R0", r0_seir(g, gamma, sigma), "vs", beta / gamma)

# %% Everything is vectorised.
lams = np.linspace(0.05, 0.3, 6)
print(np.round(r0_seminr(lams, gamma, sigma, 4.5, 3), 3))
