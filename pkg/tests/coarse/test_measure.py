import logging
import math

import numpy as np
import pytest

from cauchytool.coarse.measure import (
    FRACTIONAL_PROXY_LABEL, SampleSummary, change_of_measure_cost, fractional_moment, sample_x_statistic
)
from cauchytool.coarse.plan import manual_plan
from cauchytool.env.spec import EnvSpec, RADEMACHER
from cauchytool.errors import InvalidParameterError
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.window import wide_window, window_for
from cauchytool.walk.sampling import sample_walks


def test_sample_summary():
    summary = SampleSummary.of([1.0, -1.0, 3.0])
    assert summary.count == 3
    assert summary.mean == pytest.approx(1.0)
    assert summary.second_moment == pytest.approx(11.0 / 3.0)
    assert summary.std == pytest.approx(2.0)
    assert summary.mean_stderr == pytest.approx(2.0 / math.sqrt(3.0))


def test_change_of_measure_cost_identities(law16):
    plan = manual_plan(law16, 0.7, 64, 8, 3, k_penalty=3.0, theta=0.7)
    cost = change_of_measure_cost(plan, [0.0, 1.0, 1e4])
    assert cost.exceed_fraction == pytest.approx(1.0 / 3.0)
    assert cost.mean == pytest.approx((2.0 + math.exp(7.0)) / 3.0)
    assert cost.tail_form == pytest.approx(cost.mean)
    expected = 1.0 + (math.exp(7.0) - 1.0) * (1.0 + 1e8) / 3.0 * math.exp(-18.0)
    assert cost.chebyshev == pytest.approx(expected)


def test_x_statistic_sample(law16, gaussian_env):
    plan = manual_plan(law16, 0.7, 16, 4, 2, multiplier=2.0)
    values = sample_x_statistic(plan, gaussian_env, 16, ReplicaPool(2))
    assert len(values) == 16
    assert values == sample_x_statistic(plan, gaussian_env, 16)
    assert len(set(values)) == 16

    path = sample_walks(law16, 1, 16, seed=1)[0]
    tilted = sample_x_statistic(plan, gaussian_env, 16, tilt_path=path)
    assert tilted != values

    with pytest.raises(InvalidParameterError):
        sample_x_statistic(plan, gaussian_env, 1)


@pytest.mark.slow
def test_x_statistic_moments(law16):
    plan = manual_plan(law16, 0.7, 64, 8, 3, multiplier=2.0)
    values = sample_x_statistic(plan, EnvSpec(seed=4242), 2000, ReplicaPool(4))
    summary = SampleSummary.of(values)
    assert abs(summary.mean) <= 3.0 * summary.mean_stderr
    assert summary.second_moment <= 1.0 + 3.0 * summary.second_moment_stderr

    cost = change_of_measure_cost(plan, values)
    assert cost.mean <= 2.0
    assert cost.chebyshev <= 2.0


def test_fractional_moment_beta_zero(small_law, gaussian_env):
    estimate = fractional_moment(small_law, gaussian_env, 0.0, 0.7, 6, 4, wide_window(small_law, 6))
    assert estimate.mean == pytest.approx(1.0, abs=1e-12)
    assert estimate.proxy == pytest.approx(0.0, abs=1e-12)
    assert estimate.label == FRACTIONAL_PROXY_LABEL


def test_fractional_moment_jensen(law16, gaussian_env):
    estimate = fractional_moment(law16, gaussian_env, 1.0, 0.7, 32, 64, window_for(law16, 8, 32))
    assert 0.0 < estimate.mean <= 1.0 + 3.0 * estimate.stderr
    assert estimate.proxy == pytest.approx(math.log(estimate.mean) / (0.7 * 32))


def test_fractional_moment_validation(small_law, gaussian_env):
    window = wide_window(small_law, 4)
    with pytest.raises(InvalidParameterError):
        fractional_moment(small_law, gaussian_env, 1.0, 1.0, 4, 4, window)
    with pytest.raises(InvalidParameterError):
        fractional_moment(small_law, gaussian_env, 1.0, 0.5, 4, 1, window)


@pytest.mark.slow
def test_fractional_moment_decreases(law64):
    env = EnvSpec(seed=99)
    means = [fractional_moment(law64, env, 1.0, 0.7, n, 256, window_for(law64, 8, n), ReplicaPool(4)).mean
             for n in (32, 128, 512)]
    assert means[0] > means[1] > means[2]
    assert np.all(np.isfinite(means))


def test_tilt_outside_gaussian_is_approximate(law16, caplog):
    caplog.set_level(logging.INFO)
    plan = manual_plan(law16, 0.7, 16, 4, 2, multiplier=2.0)
    path = sample_walks(law16, 1, 16, seed=1)[0]

    sample_x_statistic(plan, EnvSpec(seed=4), 2, tilt_path=path)
    assert 'size-biased mean only' not in caplog.text

    sample_x_statistic(plan, EnvSpec(RADEMACHER, seed=4), 2, tilt_path=path)
    assert 'size-biased mean only' in caplog.text
