import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epiuq.errors import ConfigError, DomainError
from epiuq.r0 import (
    RateSet,
    StructureSpec,
    growth_rate_seir,
    growth_rate_sir,
    r0_from_beta,
    r0_seir,
    r0_seminr,
    r0_sir,
)

rates = st.floats(0.01, 2.0)
growth = st.floats(0.001, 1.0)
shapes = st.floats(0.5, 10.0)

# 50-digit mpmath evaluation of the SEmInR expression at (0.255, 1/9, 1/4.1, 4.5, 3)
SEMINR_HP = 7.1818829223184891081751084426855501289237248337814


@pytest.mark.parametrize(
    "lam, gamma, expected",
    [(0.1, 0.2, 1.5), (0.0, 0.2, 1.0), (0.2, 0.2, 2.0)],
)
def test_r0_sir(lam, gamma, expected):
    assert r0_sir(lam, gamma) == expected


@pytest.mark.parametrize(
    "beta, gamma, expected",
    [(0.3, 0.2, 1.5), (0.2, 0.2, 1.0), (0.0, 0.2, 0.0)],
)
def test_r0_from_beta(beta, gamma, expected):
    assert r0_from_beta(beta, gamma) == pytest.approx(expected, rel=1e-15)


def test_r0_seir_paper_example():
    assert r0_seir(0.1, 1 / 5, 1 / 5) == 2.25


def test_r0_seminr_paper_example():
    assert abs(r0_seminr(0.1, 1 / 5, 1 / 5, 4.5, 3) - 2.17) <= 0.005


def test_r0_seminr_high_precision_oracle():
    assert r0_seminr(0.255, 1 / 9, 1 / 4.1, 4.5, 3) == pytest.approx(SEMINR_HP, rel=1e-13)


def test_r0_seminr_against_mpmath_grid():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    for lam, g, s, m, n in itertools.product((0.01, 0.2), (0.1, 0.5), (0.2, 1.0), (1, 4.5), (1, 3)):
        L, G, S, Mm, Nn = (mp.mpf(v) for v in (lam, g, s, m, n))
        ref = L * (L / (S * Mm) + 1) ** Mm / (G * (1 - (L / (G * Nn) + 1) ** (-Nn)))
        assert r0_seminr(lam, g, s, m, n) == pytest.approx(float(ref), rel=1e-13)


@given(st.floats(0.01, 5.0), st.floats(0.01, 5.0))
def test_zero_growth_gives_one(gamma, sigma):
    assert r0_sir(0.0, gamma) == 1.0
    assert r0_seir(0.0, gamma, sigma) == 1.0


@given(growth, rates, rates)
def test_seir_symmetric(lam, a, b):
    assert r0_seir(lam, a, b) == r0_seir(lam, b, a)


@given(growth, rates, rates)
def test_seminr_reduces_to_seir(lam, gamma, sigma):
    assert r0_seminr(lam, gamma, sigma, 1, 1) == pytest.approx(r0_seir(lam, gamma, sigma), rel=1e-12)


# first-order deviation is about 1e-8 * (1/sigma + 1/gamma), so keep rates >= 0.05
@given(st.floats(0.05, 2.0), st.floats(0.05, 2.0), shapes, shapes)
def test_seminr_small_growth_limit(gamma, sigma, m, n):
    assert abs(r0_seminr(1e-8, gamma, sigma, m, n) - 1.0) <= 1e-6


@given(rates, rates, shapes, shapes)
@settings(max_examples=50)
def test_monotone_in_growth_rate(gamma, sigma, m, n):
    lam = np.linspace(1e-4, 1.0, 200)
    assert np.all(np.diff(r0_sir(lam, gamma)) > 0)
    assert np.all(np.diff(r0_seir(lam, gamma, sigma)) > 0)
    assert np.all(np.diff(r0_seminr(lam, gamma, sigma, m, n)) > 0)


def test_growth_rate_sir():
    assert growth_rate_sir(0.3, 0.2) == pytest.approx(0.1, abs=1e-15)
    assert growth_rate_sir(0.2, 0.2) == 0.0


@given(rates, st.floats(0.0, 2.0))
def test_growth_rate_sir_round_trip(gamma, beta):
    lam = growth_rate_sir(beta, gamma)
    assert r0_sir(lam, gamma) == pytest.approx(r0_from_beta(beta, gamma), rel=1e-12, abs=1e-12)


@given(rates, rates)
def test_growth_rate_seir_zero_at_threshold(gamma, sigma):
    assert growth_rate_seir(gamma, gamma, sigma) == 0.0


def test_growth_rate_seir_quadratic_oracle():
    beta, gamma, sigma = 0.4, 0.2, 0.2
    roots = np.roots([1.0, sigma + gamma, sigma * (gamma - beta)])
    assert growth_rate_seir(beta, gamma, sigma) == pytest.approx(roots.real.max(), rel=1e-12)
    assert growth_rate_seir(beta, gamma, sigma) == pytest.approx((-0.4 + np.sqrt(0.32)) / 2, rel=1e-12)


def test_growth_rate_seir_round_trip_grid():
    beta, gamma, sigma = np.meshgrid(
        np.linspace(0.05, 1.0, 20), np.linspace(0.05, 0.5, 10), np.linspace(0.05, 0.5, 10)
    )
    lam = growth_rate_seir(beta, gamma, sigma)
    np.testing.assert_allclose(r0_seir(lam, gamma, sigma), beta / gamma, rtol=1e-10)


def test_vectorised_and_scalar_agree():
    lam = np.array([0.1, 0.2, 0.3])
    out = r0_seminr(lam, 0.2, 0.2, 4.5, 3)
    assert out.shape == (3,)
    assert out[0] == r0_seminr(0.1, 0.2, 0.2, 4.5, 3)


@pytest.mark.parametrize(
    "call",
    [
        lambda: r0_sir(0.1, 0.0),
        lambda: r0_sir(0.1, -1.0),
        lambda: r0_from_beta(0.1, 0.0),
        lambda: r0_from_beta(-0.1, 0.2),
        lambda: r0_seir(0.1, 0.2, 0.0),
        lambda: r0_seminr(0.0, 0.2, 0.2, 4.5, 3),
        lambda: r0_seminr(-0.1, 0.2, 0.2, 4.5, 3),
        lambda: r0_seminr(0.1, 0.2, 0.2, 0.0, 3),
        lambda: r0_seminr(0.1, 0.2, 0.2, 4.5, -1),
        lambda: growth_rate_sir(0.3, 0.0),
        lambda: growth_rate_seir(0.3, 0.2, 0.0),
        lambda: RateSet(lam=-0.3, gamma=0.2),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_structure_spec():
    assert StructureSpec("SEIR").kind == "seir"
    assert StructureSpec("seminr", 4.5, 3).r0(0.1, 0.2, 0.2) == r0_seminr(0.1, 0.2, 0.2, 4.5, 3)
    with pytest.raises(ConfigError):
        StructureSpec("sis")
    with pytest.raises(ConfigError):
        StructureSpec("seminr", 0, 3)
    with pytest.raises(ConfigError):
        StructureSpec("seir").r0(0.1, 0.2)
