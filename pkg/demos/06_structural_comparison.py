# # Same data, different structures
#
# One batch of draws, one serial-interval filter, three model structures.
# The structural choice moves R0 more than the parameter uncertainty does.

from epiuq import REFERENCE_RANGES, SerialIntervalWindow
from epiuq.structural import compare_structures

cmp = compare_structures(REFERENCE_RANGES, SerialIntervalWindow(7, 8), M=10**5, seed=8, m=4.5, n=3, bins=30)

# %%
for kind, res in cmp.results.items():
    s = res.summary
    print(f"{kind:7} {s.q025:.3f} {s.q50:.3f} {s.q975:.3f}")

# %% A crude text histogram on the shared bins.
res = cmp["seminr"]
scale = 60 / res.counts.max()
for lo, c in zip(res.bin_edges[:-1], res.counts):
    print(f"{lo:6.2f} " + "#" * int(c * scale))
