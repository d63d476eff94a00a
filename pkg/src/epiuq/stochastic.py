"""Discrete-time chain-binomial SEIR simulation.

Each cycle of length ``dt`` draws

    X ~ Binom(S, 1 - exp(-beta I dt))    newly exposed
    Y ~ Binom(E, 1 - exp(-sigma dt))     newly infectious
    Z ~ Binom(I, 1 - exp(-gamma dt))     newly recovered

from the state at the start of the cycle, then updates all four compartments.
The force of infection is ``beta * I`` with no division by N unless
``frequency_dependent`` is set.
"""

import math
from dataclasses import dataclass, field, replace

import numba as nb
import numpy as np

from . import _rng
from .errors import ConfigError
from .uncertainty import quantile

I_ZERO = "I_ZERO"
EI_ZERO = "EI_ZERO"
COLUMNS = ("t", "S", "E", "I", "R")


@dataclass(frozen=True)
class EpidemicState:
    t: float
    S: int
    E: int
    I: int
    R: int

    def __post_init__(self):
        for name in "SEIR":
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ConfigError(f"{name} must be a non-negative integer, got {v}")

    @property
    def N(self):
        return self.S + self.E + self.I + self.R


@dataclass(frozen=True)
class SimConfig:
    beta: float
    sigma: float
    gamma: float
    initial: EpidemicState
    delta_t: float = 0.25
    seed: int = 8
    max_steps: int = 10**6
    termination: str = I_ZERO
    frequency_dependent: bool = False

    def __post_init__(self):
        if not self.delta_t > 0:
            raise ConfigError(f"delta_t must be positive, got {self.delta_t}")
        for name in ("beta", "sigma", "gamma"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be a finite non-negative rate, got {v}")
        if int(self.max_steps) < 1:
            raise ConfigError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.termination not in (I_ZERO, EI_ZERO):
            raise ConfigError(f"termination must be {I_ZERO} or {EI_ZERO}")


@dataclass
class Trajectory:
    """Rows of ``(t, S, E, I, R)``; ``t`` is ``row * dt``."""

    t: np.ndarray
    counts: np.ndarray  # int64, shape (rows, 4)
    truncated: bool = False

    def __len__(self):
        return len(self.t)

    def __getitem__(self, name):
        if name == "t":
            return self.t
        return self.counts[:, "SEIR".index(name)]

    def state(self, i):
        S, E, I, R = (int(v) for v in self.counts[i])
        return EpidemicState(float(self.t[i]), S, E, I, R)

    @property
    def final_size(self):
        """Individuals ever infected, ``N - S`` at the end of the run."""
        return int(self.counts[0].sum() - self.counts[-1, 0])

    def rows(self):
        for t, c in zip(self.t, self.counts):
            yield (float(t), *(int(v) for v in c))


@nb.njit(cache=True)
def _probs(S, E, I, R, beta, sigma, gamma, dt, freq):
    force = beta * I
    if freq:
        N = S + E + I + R
        force = force / N if N > 0 else 0.0
    return -math.expm1(-dt * force), -math.expm1(-dt * sigma), -math.expm1(-dt * gamma)


@nb.njit(cache=True)
def _step(rng, S, E, I, R, beta, sigma, gamma, dt, freq):
    p_infect, p_latent, p_recover = _probs(S, E, I, R, beta, sigma, gamma, dt, freq)
    x = rng.binomial(S, p_infect) if S > 0 and p_infect > 0 else 0
    y = rng.binomial(E, p_latent) if E > 0 and p_latent > 0 else 0
    z = rng.binomial(I, p_recover) if I > 0 and p_recover > 0 else 0
    return S - x, E + x - y, I + y - z, R + z


@nb.njit(cache=True)
def _run(rng, S, E, I, R, beta, sigma, gamma, dt, freq, until_e, max_steps):
    cap = 1024
    out = np.empty((cap, 4), dtype=np.int64)
    out[0, 0] = S
    out[0, 1] = E
    out[0, 2] = I
    out[0, 3] = R
    rows = 1
    steps = 0
    while I > 0 or (until_e and E > 0):
        if steps >= max_steps:
            return out[:rows], True
        S, E, I, R = _step(rng, S, E, I, R, beta, sigma, gamma, dt, freq)
        steps += 1
        if rows == cap:
            grown = np.empty((cap * 2, 4), dtype=np.int64)
            grown[:cap] = out
            out = grown
            cap *= 2
        out[rows, 0] = S
        out[rows, 1] = E
        out[rows, 2] = I
        out[rows, 3] = R
        rows += 1
    return out[:rows], False


def make_rng(seed, *keys):
    return _rng.substream(seed, *keys)


def transition_probabilities(state, config):
    """``(p_infect, p_latent, p_recover)`` for one cycle from ``state``."""
    return _probs(
        state.S, state.E, state.I, state.R,
        float(config.beta), float(config.sigma), float(config.gamma),
        float(config.delta_t), bool(config.frequency_dependent),
    )


def step(state, config, rng):
    """Advance ``state`` by one cycle using generator ``rng``."""
    S, E, I, R = _step(
        rng, state.S, state.E, state.I, state.R,
        float(config.beta), float(config.sigma), float(config.gamma),
        float(config.delta_t), bool(config.frequency_dependent),
    )
    return EpidemicState(state.t + config.delta_t, int(S), int(E), int(I), int(R))


def simulate(config, rng=None):
    """Run one outbreak until the termination condition or ``max_steps``.

    With no ``rng`` the generator is the substream for ``config.seed``; the
    result is identical to calling :func:`step` repeatedly with that generator.
    """
    if rng is None:
        rng = make_rng(config.seed)
    s = config.initial
    counts, truncated = _run(
        rng, s.S, s.E, s.I, s.R,
        float(config.beta), float(config.sigma), float(config.gamma),
        float(config.delta_t), bool(config.frequency_dependent),
        config.termination == EI_ZERO, int(config.max_steps),
    )
    t = s.t + config.delta_t * np.arange(len(counts))
    return Trajectory(t=t, counts=counts, truncated=bool(truncated))


@dataclass
class EnsembleSummary:
    final_sizes: np.ndarray
    extinct: np.ndarray
    durations: np.ndarray
    extinction_threshold: int
    grid: np.ndarray
    bands: dict = field(default_factory=dict)  # compartment -> (3, len(grid))
    n_truncated: int = 0

    @property
    def n_runs(self):
        return len(self.final_sizes)

    @property
    def extinction_fraction(self):
        return float(np.mean(self.extinct))

    def final_size_quantiles(self, probs=(0.025, 0.5, 0.975)):
        s = np.sort(self.final_sizes.astype(float))
        return [float(quantile(s, p)) for p in probs]

    def mean_major_final_size(self):
        major = self.final_sizes[~self.extinct]
        return float(major.mean()) if len(major) else math.nan

    def mean_band(self, compartment):
        return self.bands.get(compartment + "_mean")


def _on_grid(traj, grid, dt):
    # state is held at its last value after the run stops
    idx = np.floor((grid - traj.t[0]) / dt + 1e-9).astype(np.int64)
    return traj.counts[np.clip(idx, 0, len(traj) - 1)].astype(np.int32)


def run_ensemble(config, n_runs, seed=None, extinction_threshold=20, grid_step=1.0,
                 t_max=None, probs=(0.025, 0.5, 0.975), bands=True):
    """Run ``n_runs`` independent outbreaks, run ``k`` using substream ``(seed, k)``.

    Returns per-run final sizes and durations, an early-extinction flag
    (final size below ``extinction_threshold``), and, unless ``bands`` is
    false, pointwise quantile bands and means of every compartment on a common
    time grid with spacing ``grid_step`` days.
    """
    n_runs = int(n_runs)
    if n_runs < 1:
        raise ConfigError(f"n_runs must be at least 1, got {n_runs}")
    if not grid_step > 0:
        raise ConfigError(f"grid_step must be positive, got {grid_step}")
    seed = config.seed if seed is None else seed

    def one(k):
        return simulate(config, make_rng(seed, k))

    trajs = _rng.pmap(one, range(n_runs))
    final = np.array([tr.final_size for tr in trajs], dtype=np.int64)
    durations = np.array([tr.t[-1] - tr.t[0] for tr in trajs])
    if t_max is None:
        t_max = float(durations.max())
    grid = config.initial.t + np.arange(0.0, t_max + grid_step / 2, grid_step)
    out = {}
    if bands:
        stack = np.stack([_on_grid(tr, grid, config.delta_t) for tr in trajs])
        for j, name in enumerate("SEIR"):
            col = stack[:, :, j]
            out[name + "_mean"] = col.mean(axis=0)
            srt = np.sort(col, axis=0).T.astype(float)
            out[name] = np.stack([quantile(srt, p) for p in probs])
    return EnsembleSummary(
        final_sizes=final,
        extinct=final < extinction_threshold,
        durations=durations,
        extinction_threshold=extinction_threshold,
        grid=grid,
        bands=out,
        n_truncated=sum(tr.truncated for tr in trajs),
    )


def with_seed(config, seed):
    return replace(config, seed=seed)
