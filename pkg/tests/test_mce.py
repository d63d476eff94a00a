import itertools
import statistics

import numpy as np
import pytest

from epiuq.errors import ConfigError, InsufficientSampleError
from epiuq.mce import MceConfig, mce_bootstrap, mce_replicate, mce_table, resolve_statistic
from epiuq.r0 import StructureSpec
from epiuq.uncertainty import REFERENCE_RANGES, DistributionSpec, PointMass, SerialIntervalWindow, Uniform

SEMINR = StructureSpec("seminr", 4.5, 3)
WINDOW = SerialIntervalWindow(7, 8)


def exhaustive_bootstrap_sd(sample, stat):
    """Exact SD of the statistic over all n^n equally likely resamples."""
    values = [stat(r) for r in itertools.product(sample, repeat=len(sample))]
    return statistics.pstdev(values)


def test_bootstrap_constant_sample():
    assert mce_bootstrap([0.1] * 50, B=1000, seed=3) == 0.0


@pytest.mark.parametrize("sample", [[1, 2, 3], [1, 2, 3, 4], [0.5, 2.0, 7.0, 7.5]])
def test_bootstrap_median_matches_enumeration(sample):
    exact = exhaustive_bootstrap_sd(sample, statistics.median)
    assert mce_bootstrap(sample, B=10**5, statistic="median", seed=1) == pytest.approx(exact, abs=0.02)


def test_bootstrap_mean_matches_enumeration():
    sample = [1, 2, 3, 4]
    exact = exhaustive_bootstrap_sd(sample, statistics.fmean)
    assert mce_bootstrap(sample, B=10**5, statistic="mean", seed=2) == pytest.approx(exact, abs=0.01)


def test_enumeration_oracle_frozen():
    # values computed once by enumerating 3^3 and 4^4 resamples
    assert exhaustive_bootstrap_sd([1, 2, 3], statistics.median) == pytest.approx(0.7200822998230956, rel=1e-12)
    assert exhaustive_bootstrap_sd([1, 2, 3, 4], statistics.median) == pytest.approx(0.7551903733496608, rel=1e-12)


def test_bootstrap_doubling_B_is_stable():
    rng = np.random.default_rng(0)
    sample = rng.normal(size=200)
    B = 2000
    reps = [mce_bootstrap(sample, B, seed=s) for s in range(100, 130)]
    mce_of_mce = float(np.std(reps, ddof=1))
    a = mce_bootstrap(sample, B, seed=7)
    b = mce_bootstrap(sample, 2 * B, seed=7)
    assert abs(a - b) < 3 * mce_of_mce


def test_bootstrap_deterministic_and_worker_independent(monkeypatch):
    sample = np.linspace(0, 1, 300) ** 2
    monkeypatch.setenv("EPIUQ_THREADS", "1")
    a = mce_bootstrap(sample, 20_000, seed=4)
    monkeypatch.setenv("EPIUQ_THREADS", "8")
    assert mce_bootstrap(sample, 20_000, seed=4) == a


def test_bootstrap_errors():
    with pytest.raises(InsufficientSampleError):
        mce_bootstrap([1.0], B=10)
    with pytest.raises(ConfigError):
        mce_bootstrap([1.0, 2.0], B=1)


def test_replicate_point_mass_is_zero():
    spec = DistributionSpec(PointMass(0.25), PointMass(9.0), PointMass(4.1))
    assert mce_replicate(SEMINR, spec, None, MceConfig(M=100, B=50)).mce == 0.0


def test_replicate_table2_small():
    res = mce_replicate(SEMINR, REFERENCE_RANGES, WINDOW, MceConfig(M=10**3, B=1000, seed=8))
    assert res.n_failed == 0
    assert abs(res.mce - 0.110) <= 0.25 * 0.110


def test_scaling_ratio():
    rows = mce_table(SEMINR, REFERENCE_RANGES, WINDOW, [10**3, 10**4], B=400, seed=8)
    ratio = rows[0]["mce"] / rows[1]["mce"]
    assert 2.0 <= ratio <= 4.5


def test_replicate_reproducible():
    cfg = MceConfig(M=2000, B=20, seed=9)
    a = mce_replicate(SEMINR, REFERENCE_RANGES, WINDOW, cfg)
    b = mce_replicate(SEMINR, REFERENCE_RANGES, WINDOW, cfg)
    assert a.mce == b.mce
    np.testing.assert_array_equal(a.values, b.values)


def test_replicate_failures_reported():
    # a tiny M with a narrow window leaves most replicates empty
    cfg = MceConfig(M=5, B=50, seed=1)
    with pytest.raises(InsufficientSampleError):
        mce_replicate(SEMINR, REFERENCE_RANGES, SerialIntervalWindow(7.0, 7.05), cfg)


def test_replicate_tolerates_few_failures(caplog):
    spec = DistributionSpec(Uniform(0.21, 0.3), Uniform(4, 14), Uniform(2.2, 6))
    cfg = MceConfig(M=40, B=200, seed=3)
    res = mce_replicate(SEMINR, spec, WINDOW, cfg)
    # P(no acceptance in 40 draws) = (1 - 0.1737)^40 ~ 5e-4
    assert res.n_failed <= 20
    assert res.mce > 0


@pytest.mark.parametrize(
    "statistic, expected",
    [("median", 3.0), ("mean", 3.0), (0.25, 2.0), ("q75", 4.0), ("0.5", 3.0)],
)
def test_statistics(statistic, expected):
    assert resolve_statistic(statistic)(np.array([1.0, 2, 3, 4, 5])) == expected


def test_unknown_statistic():
    with pytest.raises(ConfigError):
        resolve_statistic("mode")
    with pytest.raises(ConfigError):
        MceConfig(M=1, B=10)
