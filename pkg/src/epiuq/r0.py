"""Closed-form basic reproduction numbers and growth rates.

All functions accept scalars or numpy arrays and broadcast. Rates are per day,
``lam`` is the early exponential growth rate of the epidemic.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainError

STRUCTURES = ("sir", "seir", "seminr")


@dataclass(frozen=True)
class RateSet:
    """One set of transition rates."""

    lam: float
    gamma: float
    sigma: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if self.sigma is not None and not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not self.lam > -self.gamma:
            raise DomainError(f"lambda must exceed -gamma, got {self.lam}")


@dataclass(frozen=True)
class StructureSpec:
    """Model structure; ``m`` and ``n`` are the Erlang shapes for SEmInR."""

    kind: str = "sir"
    m: float = 1.0
    n: float = 1.0

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in STRUCTURES:
            raise ConfigError(f"unknown structure {self.kind!r}; expected one of {STRUCTURES}")
        object.__setattr__(self, "kind", kind)
        if kind == "seminr" and not (self.m > 0 and self.n > 0):
            raise ConfigError(f"m and n must be positive, got m={self.m}, n={self.n}")

    @property
    def needs_latent(self):
        return self.kind != "sir"

    def r0(self, lam, gamma, sigma=None):
        """Evaluate this structure's closed-form R0."""
        if self.kind == "sir":
            return r0_sir(lam, gamma)
        if sigma is None:
            raise ConfigError(f"structure {self.kind} needs sigma")
        if self.kind == "seir":
            return r0_seir(lam, gamma, sigma)
        return r0_seminr(lam, gamma, sigma, self.m, self.n)


def _positive(name, x):
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainError(f"{name} must be positive")
    return x


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def r0_sir(lam, gamma):
    """R0 of the SIR model from the growth rate: ``1 + lam/gamma``."""
    gamma = _positive("gamma", gamma)
    return _out(1.0 + np.asarray(lam, dtype=float) / gamma)


def r0_from_beta(beta, gamma):
    """R0 as the ratio of transmission coefficient to recovery rate."""
    gamma = _positive("gamma", gamma)
    beta = np.asarray(beta, dtype=float)
    if np.any(beta < 0):
        raise DomainError("beta must be non-negative")
    return _out(beta / gamma)


def r0_seir(lam, gamma, sigma):
    """R0 of the SEIR model: ``(1 + lam/gamma) * (1 + lam/sigma)``."""
    gamma = _positive("gamma", gamma)
    sigma = _positive("sigma", sigma)
    lam = np.asarray(lam, dtype=float)
    return _out((1.0 + lam / gamma) * (1.0 + lam / sigma))


def r0_seminr(lam, gamma, sigma, m, n):
    """R0 with Erlang latent (shape ``m``) and infectious (shape ``n``) periods.

    Evaluates ``lam (lam/(sigma m) + 1)^m / (gamma [1 - (lam/(gamma n) + 1)^-n])``.
    Powers go through log1p/expm1 so small growth rates keep full precision.
    The expression is 0/0 at ``lam = 0`` and is rejected there; use
    :func:`r0_seir` when the limit is wanted.
    """
    gamma = _positive("gamma", gamma)
    sigma = _positive("sigma", sigma)
    m = _positive("m", m)
    n = _positive("n", n)
    lam = np.asarray(lam, dtype=float)
    if not np.all(lam > 0):
        raise DomainError("lambda must be positive for the SEmInR formula")
    latent = np.exp(m * np.log1p(lam / (sigma * m)))
    infectious = -np.expm1(-n * np.log1p(lam / (gamma * n)))
    return _out(lam * latent / (gamma * infectious))


def growth_rate_sir(beta, gamma):
    """SIR growth rate ``beta - gamma``."""
    gamma = _positive("gamma", gamma)
    return _out(np.asarray(beta, dtype=float) - gamma)


def growth_rate_seir(beta, gamma, sigma):
    """Dominant root of ``lam^2 + (sigma+gamma) lam + sigma (gamma - beta) = 0``.

    This is the root for which ``r0_seir(lam, gamma, sigma) == beta/gamma``.
    Written in rationalised form to avoid cancellation near ``beta == gamma``.
    """
    gamma = _positive("gamma", gamma)
    sigma = _positive("sigma", sigma)
    beta = np.asarray(beta, dtype=float)
    if np.any(beta < 0):
        raise DomainError("beta must be non-negative")
    disc = np.sqrt((sigma - gamma) ** 2 + 4.0 * sigma * beta)
    return _out(2.0 * sigma * (beta - gamma) / ((sigma + gamma) + disc))
