"""Monte Carlo propagation of parameter uncertainty into R0.

Transition parameters are drawn on the period scale (``1/gamma``, ``1/sigma``)
and inverted. Draws can be flagged by a serial-interval window; flagged draws
are kept so a batch can be re-summarised or re-filtered later.
"""

import csv
import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from . import _rng
from .errors import ConfigError, DomainError, InsufficientSampleError
from .r0 import StructureSpec

PROBS = (0.025, 0.5, 0.975)


@dataclass(frozen=True)
class Uniform:
    min: float
    max: float

    def sample(self, rng, size):
        return rng.uniform(self.min, self.max, size)

    @property
    def support(self):
        return self.min, self.max


@dataclass(frozen=True)
class PointMass:
    value: float

    def sample(self, rng, size):
        return np.full(size, float(self.value))

    @property
    def support(self):
        return self.value, self.value


Interval = Union[Uniform, PointMass]


def _check(name, dist, period):
    if dist is None:
        return
    if not isinstance(dist, (Uniform, PointMass)):
        raise ConfigError(f"{name}: expected Uniform or PointMass, got {type(dist).__name__}")
    lo, hi = dist.support
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigError(f"{name}: bounds must be finite")
    if isinstance(dist, Uniform) and not lo < hi:
        raise ConfigError(f"{name}: uniform needs min < max, got ({lo}, {hi})")
    if period and not lo > 0:
        raise ConfigError(f"{name}: periods must be positive, got {lo}")
    if not period and lo < 0:
        raise ConfigError(f"{name}: growth rate must be non-negative, got {lo}")


@dataclass(frozen=True)
class DistributionSpec:
    """Sampling distributions for the growth rate and the two mean periods (days)."""

    lam: Interval
    infectious_period: Interval
    latent_period: Optional[Interval] = None

    def __post_init__(self):
        if self.lam is None or self.infectious_period is None:
            raise ConfigError("lambda and infectious-period distributions are required")
        _check("lambda", self.lam, period=False)
        _check("infectious_period", self.infectious_period, period=True)
        _check("latent_period", self.latent_period, period=True)


#: Reference parameter ranges for an early SARS-CoV-2 outbreak.
REFERENCE_RANGES = DistributionSpec(
    lam=Uniform(0.21, 0.30),
    infectious_period=Uniform(4.0, 14.0),
    latent_period=Uniform(2.2, 6.0),
)


@dataclass(frozen=True)
class SerialIntervalWindow:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ConfigError(f"serial-interval window needs lo <= hi, got [{self.lo}, {self.hi}]")
        if self.lo < 0:
            raise ConfigError(f"serial-interval window must be non-negative, got lo={self.lo}")

    def contains(self, si):
        return (si >= self.lo) & (si <= self.hi)


@dataclass
class SampleBatch:
    """M parameter draws with per-draw derived quantities.

    ``sigma``, ``r0`` and ``serial_interval`` are ``None`` until computed.
    """

    lam: np.ndarray
    gamma: np.ndarray
    sigma: Optional[np.ndarray]
    seed: int
    r0: Optional[np.ndarray] = None
    serial_interval: Optional[np.ndarray] = None
    accepted: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.lam)

    @property
    def n_accepted(self):
        return len(self) if self.accepted is None else int(np.count_nonzero(self.accepted))

    def accepted_r0(self):
        if self.r0 is None:
            raise ConfigError("batch has no R0 values")
        return self.r0 if self.accepted is None else self.r0[self.accepted]

    def to_csv(self, path_or_file):
        """Write one row per draw: lambda, gamma, sigma, r0, serial_interval, accepted."""
        n = len(self)
        empty = np.full(n, np.nan)
        cols = [
            self.lam,
            self.gamma,
            empty if self.sigma is None else self.sigma,
            empty if self.r0 is None else self.r0,
            empty if self.serial_interval is None else self.serial_interval,
            np.ones(n, bool) if self.accepted is None else self.accepted,
        ]
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["lambda", "gamma", "sigma", "r0", "serial_interval", "accepted"])
            for row in zip(*cols):
                w.writerow([repr(float(v)) for v in row[:5]] + [int(row[5])])
        finally:
            if own:
                fh.close()


@dataclass(frozen=True)
class QuantileSummary:
    q025: float
    q50: float
    q975: float
    n_accepted: int
    n_total: int

    def as_dict(self):
        return {
            "q025": self.q025,
            "q50": self.q50,
            "q975": self.q975,
            "n_accepted": self.n_accepted,
            "n_total": self.n_total,
        }


def sample_params(spec, M, seed, stream=()):
    """Draw ``M`` independent parameter sets.

    Draws are generated in fixed-size chunks, chunk ``c`` using the substream
    ``(seed, *stream, c)``; the result is the same for any worker count.
    """
    if not isinstance(spec, DistributionSpec):
        raise ConfigError("spec must be a DistributionSpec")
    M = int(M)
    if M < 1:
        raise ConfigError(f"M must be at least 1, got {M}")
    has_latent = spec.latent_period is not None

    def draw(args):
        c, (lo, hi) = args
        rng = _rng.substream(seed, *stream, c)
        size = hi - lo
        lam = spec.lam.sample(rng, size)
        inf = spec.infectious_period.sample(rng, size)
        lat = spec.latent_period.sample(rng, size) if has_latent else None
        return lam, inf, lat

    parts = _rng.pmap(draw, enumerate(_rng.chunk_bounds(M)))
    lam = np.concatenate([p[0] for p in parts])
    gamma = 1.0 / np.concatenate([p[1] for p in parts])
    sigma = 1.0 / np.concatenate([p[2] for p in parts]) if has_latent else None
    return SampleBatch(lam=lam, gamma=gamma, sigma=sigma, seed=seed)


def serial_interval(gamma, sigma):
    """Latent period plus half the infectious period, ``1/sigma + 0.5/gamma``."""
    gamma = np.asarray(gamma, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if not (np.all(gamma > 0) and np.all(sigma > 0)):
        raise DomainError("gamma and sigma must be positive")
    si = 1.0 / sigma + 0.5 / gamma
    return float(si) if si.ndim == 0 else si


def apply_si_filter(batch, window):
    """Return a copy of ``batch`` with acceptance flags for ``window`` (inclusive)."""
    if not isinstance(window, SerialIntervalWindow):
        window = SerialIntervalWindow(*window)
    if batch.sigma is None:
        raise ConfigError("serial-interval filtering needs latent-period draws")
    si = batch.serial_interval
    if si is None:
        si = serial_interval(batch.gamma, batch.sigma)
    return replace(batch, serial_interval=si, accepted=window.contains(si))


def quantile(sorted_values, p):
    """Linear-interpolation quantile ``h = (n-1) p + 1`` on pre-sorted data.

    Works along the last axis, so a stack of sorted samples can be handled at
    once.
    """
    x = np.asarray(sorted_values, dtype=float)
    n = x.shape[-1]
    # 1-based position, evaluated exactly as written so results agree bitwise
    h = (n - 1) * float(p) + 1
    lo = int(math.floor(h))
    hi = min(lo + 1, n)
    frac = h - lo
    a = x[..., lo - 1]
    b = x[..., hi - 1]
    return a + frac * (b - a)


def percentile_summary(values, probs=PROBS, n_total=None):
    """Summarise accepted R0 values by their 2.5/50/97.5 percentiles."""
    v = np.asarray(values, dtype=float).ravel()
    n_total = len(v) if n_total is None else int(n_total)
    if len(v) < 2:
        raise InsufficientSampleError(
            f"need at least 2 accepted values, got {len(v)} of {n_total}",
            n_accepted=len(v),
            n_total=n_total,
        )
    if len(probs) != 3:
        raise ValueError("probs must hold three probabilities")
    v = np.sort(v)
    q = [float(quantile(v, p)) for p in probs]
    return QuantileSummary(q[0], q[1], q[2], n_accepted=len(v), n_total=n_total)


def evaluate(structure, spec, window, M, seed, stream=()):
    """Sample, compute per-draw R0 and serial interval, and flag by window."""
    if not isinstance(structure, StructureSpec):
        raise ConfigError("structure must be a StructureSpec")
    if structure.needs_latent and spec.latent_period is None:
        raise ConfigError(f"structure {structure.kind} needs a latent-period distribution")
    if window is not None and spec.latent_period is None:
        raise ConfigError("a serial-interval window needs a latent-period distribution")
    batch = sample_params(spec, M, seed, stream)
    batch.r0 = structure.r0(batch.lam, batch.gamma, batch.sigma)
    if batch.sigma is not None:
        batch.serial_interval = serial_interval(batch.gamma, batch.sigma)
    if window is not None:
        batch = apply_si_filter(batch, window)
    else:
        batch.accepted = np.ones(len(batch), dtype=bool)
    return batch


def estimate_r0_mc(structure, spec, window=None, M=10**6, seed=8):
    """Full pipeline: percentile summary of R0 over accepted draws."""
    batch = evaluate(structure, spec, window, M, seed)
    return percentile_summary(batch.accepted_r0(), n_total=len(batch))
