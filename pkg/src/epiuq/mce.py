"""Monte Carlo error of the R0 pipeline.

Two estimators are provided. :func:`mce_replicate` reruns the whole pipeline
``B`` times on independent substreams and takes the sample standard deviation
(``B - 1`` divisor) of the tracked statistic. :func:`mce_bootstrap` resamples a
single run's draws with replacement and uses the ``1/B`` divisor.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import _rng
from .errors import ConfigError, InsufficientSampleError
from .uncertainty import evaluate, quantile

log = logging.getLogger(__name__)

#: Fraction of failed replicates above which mce_replicate raises.
MAX_FAILED_FRACTION = 0.10

_BOOT_CHUNK = 4096


def _sd(values, ddof):
    # shift by the first value so a constant input gives exactly zero
    d = values - values[0]
    d = d - d.mean()
    return float(np.sqrt(np.sum(d * d) / (len(d) - ddof)))


def resolve_statistic(statistic):
    """Map a statistic name or probability to a function of a sorted 1-D or 2-D array.

    Accepts ``"median"``, ``"mean"``, a float quantile level in [0, 1], or
    ``"qNN"`` (e.g. ``"q975"`` for the 97.5th percentile).
    """
    if callable(statistic):
        return lambda s: statistic(s)
    if isinstance(statistic, str):
        name = statistic.lower()
        if name == "median":
            return lambda s: quantile(s, 0.5)
        if name == "mean":
            return lambda s: np.mean(s, axis=-1)
        if name.startswith("q") and name[1:].isdigit():
            statistic = float("0." + name[1:])
        else:
            try:
                statistic = float(name)
            except ValueError:
                raise ConfigError(f"unknown statistic {statistic!r}") from None
    p = float(statistic)
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"quantile level must lie in [0, 1], got {p}")
    return lambda s: quantile(s, p)


@dataclass(frozen=True)
class MceConfig:
    M: int
    B: int
    statistic: Union[str, float, Callable] = "median"
    seed: int = 8

    def __post_init__(self):
        if int(self.M) < 2 or int(self.B) < 2:
            raise ConfigError(f"M and B must both be at least 2, got M={self.M}, B={self.B}")


@dataclass(frozen=True)
class MceResult:
    mce: float
    values: np.ndarray
    n_failed: int

    def __float__(self):
        return self.mce


def replicate_values(structure, spec, window, cfg):
    """Statistic from each of ``cfg.B`` independent pipeline runs (NaN on failure)."""
    stat = resolve_statistic(cfg.statistic)

    def one(b):
        batch = evaluate(structure, spec, window, cfg.M, cfg.seed, stream=(b,))
        r0 = np.sort(batch.accepted_r0())
        if len(r0) == 0:
            return np.nan
        return float(stat(r0))

    # each replicate already fans out over chunks; run replicates serially
    return np.array([one(b) for b in range(int(cfg.B))])


def mce_replicate(structure, spec, window, cfg):
    """Standard deviation of the statistic over ``B`` replicate runs."""
    values = replicate_values(structure, spec, window, cfg)
    failed = int(np.count_nonzero(np.isnan(values)))
    if failed:
        log.warning("%d of %d replicates had no accepted draws", failed, cfg.B)
    if failed > MAX_FAILED_FRACTION * cfg.B or cfg.B - failed < 2:
        raise InsufficientSampleError(
            f"{failed} of {cfg.B} replicates had no accepted draws",
            n_accepted=cfg.B - failed,
            n_total=cfg.B,
        )
    ok = values[~np.isnan(values)]
    return MceResult(_sd(ok, 1), values, failed)


def mce_bootstrap(sample, B, statistic="median", seed=8):
    """Bootstrap MCE of ``statistic`` over a single sample.

    Resamples are drawn in chunks of fixed size, each from substream
    ``(seed, chunk)``, so the result does not depend on the worker count.
    """
    x = np.asarray(sample, dtype=float).ravel()
    n = len(x)
    if n < 2:
        raise InsufficientSampleError(f"need a sample of size >= 2, got {n}", n, n)
    B = int(B)
    if B < 2:
        raise ConfigError(f"B must be at least 2, got {B}")
    stat = resolve_statistic(statistic)
    rows = max(1, min(_BOOT_CHUNK, (1 << 22) // n))

    def run(args):
        c, (lo, hi) = args
        rng = _rng.substream(seed, c)
        idx = rng.integers(0, n, size=(hi - lo, n))
        return np.asarray(stat(np.sort(x[idx], axis=-1)), dtype=float)

    est = np.concatenate(_rng.pmap(run, enumerate(_rng.chunk_bounds(B, rows))))
    return _sd(est, 0)


def mce_table(structure, spec, window, grid, B, statistic="median", seed=8):
    """Rows of ``(M, B, mce)`` for each ``M`` in ``grid``."""
    B_list = [B] * len(grid) if np.isscalar(B) else list(B)
    rows = []
    for M, b in zip(grid, B_list):
        res = mce_replicate(structure, spec, window, MceConfig(int(M), int(b), statistic, seed))
        rows.append({"M": int(M), "B": int(b), "mce": res.mce, "n_failed": res.n_failed})
    return rows
