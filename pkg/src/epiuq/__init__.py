"""Uncertainty quantification for compartmental epidemic models.

Closed-form R0 under SIR, SEIR and SEmInR structures, Monte Carlo propagation
of parameter uncertainty with serial-interval filtering, Monte Carlo error,
chain-binomial SEIR simulation, RK4 integration of the ODE systems, and
cross-structure comparison.
"""

from .errors import ConfigError, DomainError, InsufficientSampleError, StepSizeError
from .mce import MceConfig, mce_bootstrap, mce_replicate, mce_table
from .ode import OdeConfig, derivatives, initial_state, integrate
from .r0 import (
    RateSet,
    StructureSpec,
    growth_rate_seir,
    growth_rate_sir,
    r0_from_beta,
    r0_seir,
    r0_seminr,
    r0_sir,
)
from .stochastic import EpidemicState, SimConfig, Trajectory, run_ensemble, simulate, step
from .structural import compare_structures
from .uncertainty import (
    REFERENCE_RANGES,
    DistributionSpec,
    PointMass,
    QuantileSummary,
    SampleBatch,
    SerialIntervalWindow,
    Uniform,
    apply_si_filter,
    estimate_r0_mc,
    percentile_summary,
    sample_params,
    serial_interval,
)

__version__ = "0.1.0"
