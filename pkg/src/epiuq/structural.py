"""R0 under SIR, SEIR and SEmInR evaluated on one shared batch of draws."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .r0 import StructureSpec, r0_seir, r0_seminr, r0_sir
from .uncertainty import (
    QuantileSummary,
    SerialIntervalWindow,
    apply_si_filter,
    percentile_summary,
    sample_params,
)

ORDER = ("sir", "seir", "seminr")


@dataclass
class StructureResult:
    summary: QuantileSummary
    r0: np.ndarray  # accepted draws only
    bin_edges: np.ndarray
    counts: np.ndarray


@dataclass
class StructureComparison:
    results: dict  # kind -> StructureResult
    M: int
    seed: int
    window: object
    m: float
    n: float

    def __getitem__(self, kind):
        return self.results[kind]

    def summary_dict(self):
        return {
            "M": self.M,
            "seed": self.seed,
            "window": None if self.window is None else [self.window.lo, self.window.hi],
            "m": self.m,
            "n": self.n,
            "structures": {k: v.summary.as_dict() for k, v in self.results.items()},
        }

    def histogram_rows(self):
        for kind, res in self.results.items():
            for lo, hi, c in zip(res.bin_edges[:-1], res.bin_edges[1:], res.counts):
                yield kind, float(lo), float(hi), int(c)

    def long_rows(self):
        for kind, res in self.results.items():
            for v in res.r0:
                yield kind, float(v)


def compare_structures(spec, window, M, seed, m=4.5, n=3.0, bins=60):
    """Evaluate all three structures on one batch, filter identically, summarise.

    The serial-interval flags are applied to the SIR values as well, even
    though SIR has no latent period. Histograms share equal-width bins over
    the pooled range of accepted values.
    """
    if spec.latent_period is None:
        raise ConfigError("structural comparison needs a latent-period distribution")
    if int(bins) < 1:
        raise ConfigError(f"bins must be at least 1, got {bins}")
    StructureSpec("seminr", m, n)  # validates m, n
    batch = sample_params(spec, M, seed)
    if window is not None:
        if not isinstance(window, SerialIntervalWindow):
            window = SerialIntervalWindow(*window)
        batch = apply_si_filter(batch, window)
        keep = batch.accepted
    else:
        keep = np.ones(len(batch), dtype=bool)
    lam, gamma, sigma = batch.lam[keep], batch.gamma[keep], batch.sigma[keep]
    values = {
        "sir": r0_sir(lam, gamma) if len(lam) else lam,
        "seir": r0_seir(lam, gamma, sigma) if len(lam) else lam,
        "seminr": r0_seminr(lam, gamma, sigma, m, n) if len(lam) else lam,
    }
    summaries = {k: percentile_summary(v, n_total=len(batch)) for k, v in values.items()}
    pooled = np.concatenate(list(values.values()))
    edges = np.linspace(pooled.min(), pooled.max(), int(bins) + 1)
    results = {}
    for k in ORDER:
        counts, _ = np.histogram(values[k], bins=edges)
        results[k] = StructureResult(summaries[k], values[k], edges, counts)
    return StructureComparison(results, int(M), seed, window, m, n)

