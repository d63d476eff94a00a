import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epiuq.errors import ConfigError, StepSizeError
from epiuq.ode import OdeConfig, derivatives, initial_state, integrate, labels
from epiuq.r0 import StructureSpec, growth_rate_seir

SIR = StructureSpec("sir")
SEIR = StructureSpec("seir")


def config(structure, beta=0.5, gamma=0.2, sigma=0.25, N=1000.0, I0=1.0, dt=0.01, t_end=100.0):
    return OdeConfig(structure, beta, gamma, N, initial_state(structure, N, I0), sigma, dt, t_end)


def test_sir_disease_free():
    c = config(SIR, I0=0.0)
    assert np.all(derivatives(c.initial, c) == 0)


def test_sir_substitution():
    c = config(SIR, beta=0.4, gamma=0.2)
    np.testing.assert_allclose(derivatives([500.0, 500.0, 0.0], c), [-100.0, 0.0, 100.0])


def test_seir_substitution():
    c = config(SEIR, beta=0.4, gamma=0.2, sigma=0.5)
    # S' = -0.4*100*800/1000, E' = 32 - 0.5*50, I' = 25 - 20, R' = 20
    np.testing.assert_allclose(derivatives([800.0, 50.0, 100.0, 50.0], c), [-32.0, 7.0, 5.0, 20.0])


@given(
    st.lists(st.floats(0, 1e4), min_size=9, max_size=9),
    st.floats(0, 3), st.floats(0.01, 2), st.floats(0.01, 2),
)
@settings(max_examples=100)
def test_derivatives_sum_to_zero(y, beta, gamma, sigma):
    s = StructureSpec("seminr", 3, 4)
    c = OdeConfig(s, beta, gamma, 1e4, np.zeros(9), sigma)
    d = derivatives(np.array(y), c)
    assert abs(d.sum()) <= 1e-9 * (1 + np.abs(d).max())


def test_dimension_mismatch():
    c = config(SEIR)
    with pytest.raises(ConfigError):
        derivatives([1.0, 2.0, 3.0], c)
    with pytest.raises(ConfigError):
        OdeConfig(SEIR, 0.5, 0.2, 1000.0, [999.0, 1.0, 0.0], 0.25)


def test_non_integer_chain_rejected():
    with pytest.raises(ConfigError):
        config(StructureSpec("seminr", 4.5, 3))


def test_labels():
    assert labels(SIR) == ["S", "I", "R"]
    assert labels(SEIR) == ["S", "E", "I", "R"]
    assert labels(StructureSpec("seminr", 2, 3)) == ["S", "E1", "E2", "I1", "I2", "I3", "R"]


def test_pure_decay():
    sol = integrate(config(SIR, beta=0.0, I0=10.0, dt=0.001, t_end=20.0))
    assert np.all(sol.y[:, 0] == sol.y[0, 0])
    np.testing.assert_allclose(sol.y[:, 1], 10.0 * np.exp(-0.2 * sol.t), rtol=1e-6)


@pytest.mark.parametrize("structure", [SIR, SEIR, StructureSpec("seminr", 3, 2)])
def test_conservation_and_monotone(structure):
    sol = integrate(config(structure, dt=0.01, t_end=150.0))
    assert np.abs(sol.y.sum(axis=1) - 1000.0).max() <= 1e-9 * 1000.0
    assert np.all(np.diff(sol.y[:, 0]) <= 0)
    assert np.all(np.diff(sol.y[:, -1]) >= 0)


def test_seminr_one_one_is_seir():
    a = integrate(config(StructureSpec("seminr", 1, 1))).y
    b = integrate(config(SEIR)).y
    assert np.abs(a - b).max() <= 1e-8


def test_fourth_order_convergence():
    sols = [integrate(config(SEIR, dt=dt, t_end=100.0)).y for dt in (0.5, 0.25, 0.125)]
    coarse = np.abs(sols[0] - sols[1][::2]).max()
    fine = np.abs(sols[1][::2] - sols[2][::4]).max()
    assert 12 <= coarse / fine <= 20


def test_early_growth_slope():
    sol = integrate(config(SEIR, beta=0.5, gamma=0.2, sigma=0.25, N=1e12, dt=0.01, t_end=60.0))
    window = (sol.t >= 30) & (sol.t <= 60)
    slope = np.polyfit(sol.t[window], np.log(sol.y[window, 2]), 1)[0]
    assert slope == pytest.approx(growth_rate_seir(0.5, 0.2, 0.25), rel=0.02)


def test_fast_latency_approaches_sir():
    seir = integrate(config(SEIR, sigma=1e3, dt=0.001, t_end=100.0)).y
    sir = integrate(config(SIR, dt=0.001, t_end=100.0)).y
    merged = np.column_stack([seir[:, 0], seir[:, 1] + seir[:, 2], seir[:, 3]])
    assert np.abs(merged - sir).max() <= 0.01 * sir[:, 1].max()


def test_step_size_error():
    with pytest.raises(StepSizeError):
        integrate(config(SEIR, sigma=1e3, dt=0.01, t_end=5.0))


def test_grid_mismatch():
    with pytest.raises(ConfigError):
        integrate(config(SIR, dt=0.3, t_end=1.0))
