# # Deterministic dynamics
#
# Mean-field SIR, SEIR and SEmInR curves with a fixed-step RK4 integrator.
# Gamma-distributed stages are represented as chains of sub-compartments.

import numpy as np

from epiuq.ode import OdeConfig, initial_state, integrate
from epiuq.r0 import StructureSpec, growth_rate_seir

N = 10_000.0

# %%
for s in (StructureSpec("sir"), StructureSpec("seir"), StructureSpec("seminr", 4, 3)):
    sol = integrate(OdeConfig(s, 0.5, 0.2, N, initial_state(s, N, 1.0), sigma=0.25, dt=0.05, t_end=200.0))
    I = sol.total("I")
    print(f"{s.kind:7} peak I {I.max():8.1f} on day {sol.t[I.argmax()]:6.2f}  final R {sol.y[-1, -1]:8.1f}")

# %% [markdown]
# Early on, SEIR curves grow at the rate predicted by the linearisation.

# %%
seir = StructureSpec("seir")
sol = integrate(OdeConfig(seir, 0.5, 0.2, 1e12, initial_state(seir, 1e12, 1.0), 0.25, 0.01, 60.0))
w = sol.t >= 30
print("fitted", np.polyfit(sol.t[w], np.log(sol.y[w, 2]), 1)[0], "predicted", growth_rate_seir(0.5, 0.2, 0.25))
