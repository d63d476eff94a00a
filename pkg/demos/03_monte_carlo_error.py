# # How many draws are enough?
#
# The Monte Carlo error (MCE) of a summary is its standard deviation across
# independent reruns of the whole pipeline. It shrinks like 1/sqrt(M).

from epiuq import REFERENCE_RANGES, SerialIntervalWindow, StructureSpec
from epiuq.mce import mce_bootstrap, mce_table
from epiuq.uncertainty import evaluate

seminr = StructureSpec("seminr", 4.5, 3)
window = SerialIntervalWindow(7, 8)

# %%
rows = mce_table(seminr, REFERENCE_RANGES, window, [10**3, 10**4, 10**5], B=200, statistic="median", seed=8)
for r in rows:
    print(f"M={r['M']:>7}  MCE(median)={r['mce']:.4f}")

# %% [markdown]
# Upper tails are noisier than the median.

# %%
for r in mce_table(seminr, REFERENCE_RANGES, window, [10**4], B=200, statistic="q975", seed=8):
    print("MCE(97.5th pct) at M=1e4:", round(r["mce"], 4))

# %% [markdown]
# A bootstrap of a single run gives a cheap estimate of the same quantity.

# %%
r0 = evaluate(seminr, REFERENCE_RANGES, window, 10**4, seed=8).accepted_r0()
print("bootstrap MCE(median) at M=1e4:", round(mce_bootstrap(r0, 500, "median", seed=8), 4))
