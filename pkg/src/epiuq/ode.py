"""Deterministic SIR, SEIR and SEmInR dynamics with fixed-step RK4.

The state vector is ``(S, I, R)``, ``(S, E, I, R)`` or
``(S, E_1..E_m, I_1..I_n, R)``. The force of infection is ``beta * I * S / N``,
with ``I`` summed over the infectious substates. Chains advance at rates
``m*sigma`` and ``n*gamma`` so the mean stage durations stay ``1/sigma`` and
``1/gamma``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, StepSizeError
from .r0 import StructureSpec

NEGATIVE_TOL = 1e-9


@dataclass(frozen=True)
class OdeConfig:
    structure: StructureSpec
    beta: float
    gamma: float
    N: float
    initial: np.ndarray
    sigma: Optional[float] = None
    dt: float = 0.01
    t_end: float = 100.0

    def __post_init__(self):
        s = self.structure
        if s.kind == "seminr" and not (float(s.m).is_integer() and float(s.n).is_integer()):
            raise ConfigError(f"ODE chains need integer m and n, got m={s.m}, n={s.n}")
        if s.needs_latent and not (self.sigma is not None and self.sigma > 0):
            raise ConfigError(f"structure {s.kind} needs a positive sigma")
        if not self.gamma >= 0 or not self.beta >= 0:
            raise ConfigError("beta and gamma must be non-negative")
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.t_end >= 0:
            raise ConfigError(f"t_end must be non-negative, got {self.t_end}")
        if not self.N > 0:
            raise ConfigError(f"N must be positive, got {self.N}")
        y0 = np.asarray(self.initial, dtype=float)
        if y0.shape != (n_compartments(s),):
            raise ConfigError(f"initial state has shape {y0.shape}, expected ({n_compartments(s)},)")
        object.__setattr__(self, "initial", y0)

    @property
    def shape(self):
        return chain_shape(self.structure)


def chain_shape(structure):
    """Number of exposed and infectious substates."""
    if structure.kind == "sir":
        return 0, 1
    if structure.kind == "seir":
        return 1, 1
    return int(structure.m), int(structure.n)


def n_compartments(structure):
    m, n = chain_shape(structure)
    return m + n + 2


def labels(structure):
    """Column names: ``S, I, R`` / ``S, E, I, R`` / ``S, E1..Em, I1..In, R``."""
    m, n = chain_shape(structure)
    if structure.kind != "seminr":
        return ["S"] + ["E"] * m + ["I", "R"]
    return ["S"] + [f"E{i}" for i in range(1, m + 1)] + [f"I{i}" for i in range(1, n + 1)] + ["R"]


def initial_state(structure, N, I0, E0=0.0, R0=0.0):
    """State vector with ``I0`` in the first infectious substate and ``E0`` in the first exposed one."""
    m, n = chain_shape(structure)
    y = np.zeros(m + n + 2)
    y[0] = N - I0 - E0 - R0
    if m:
        y[1] = E0
    elif E0:
        raise ConfigError("SIR has no exposed compartment")
    y[1 + m] = I0
    y[-1] = R0
    return y


def derivatives(y, config):
    """Time derivative of the state vector."""
    y = np.asarray(y, dtype=float)
    m, n = config.shape
    if y.shape != (m + n + 2,):
        raise ConfigError(f"state has shape {y.shape}, expected ({m + n + 2},)")
    S = y[0]
    E = y[1 : 1 + m]
    I = y[1 + m : 1 + m + n]
    infection = config.beta * I.sum() * S / config.N
    ng = n * config.gamma
    d = np.empty_like(y)
    d[0] = -infection
    if m:
        ms = m * config.sigma
        outflow_e = ms * E
        d[1] = infection - outflow_e[0]
        d[2 : 1 + m] = outflow_e[:-1] - outflow_e[1:]
        inflow_i = outflow_e[-1]
    else:
        inflow_i = infection
    outflow_i = ng * I
    d[1 + m] = inflow_i - outflow_i[0]
    d[2 + m : 1 + m + n] = outflow_i[:-1] - outflow_i[1:]
    d[-1] = outflow_i[-1]
    return d


@dataclass
class OdeSolution:
    t: np.ndarray
    y: np.ndarray  # (len(t), compartments)
    labels: list

    def __iter__(self):
        return iter((self.t, self.y))

    def total(self, prefix):
        """Sum of the columns whose label starts with ``prefix`` (``"E"``, ``"I"``, ...)."""
        cols = [j for j, name in enumerate(self.labels) if name.startswith(prefix)]
        return self.y[:, cols].sum(axis=1)


def integrate(config):
    """Classical RK4 on the grid ``0, dt, ..., t_end``.

    Returns an :class:`OdeSolution`; it also unpacks as ``t, Y``. Raises
    :class:`StepSizeError` if any compartment drops below ``-1e-9 N``.
    """
    dt = float(config.dt)
    steps = int(round(config.t_end / dt))
    if abs(steps * dt - config.t_end) > 1e-9 * max(1.0, config.t_end):
        raise ConfigError(f"t_end={config.t_end} is not a multiple of dt={dt}")
    t = dt * np.arange(steps + 1)
    Y = np.empty((steps + 1, len(config.initial)))
    y = config.initial.copy()
    Y[0] = y
    floor = -NEGATIVE_TOL * config.N
    f = derivatives
    for k in range(steps):
        k1 = f(y, config)
        k2 = f(y + 0.5 * dt * k1, config)
        k3 = f(y + 0.5 * dt * k2, config)
        k4 = f(y + dt * k3, config)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if y.min() < floor:
            raise StepSizeError(
                f"compartment fell to {y.min():.3g} at t={t[k + 1]:.6g}; use a smaller dt than {dt}"
            )
        Y[k + 1] = y
    return OdeSolution(t, Y, labels(config.structure))
