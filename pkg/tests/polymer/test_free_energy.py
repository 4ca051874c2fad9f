import pytest

from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.free_energy import LOWER_BOUND_LABEL, estimate_free_energy
from cauchytool.polymer.window import wide_window, window_for


def test_beta_zero_is_zero(small_law, gaussian_env):
    estimate = estimate_free_energy(small_law, gaussian_env, 0.0, 8, 4, wide_window(small_law, 8))
    assert estimate.mean == pytest.approx(0.0, abs=1e-12)
    assert estimate.stderr < 1e-12
    assert estimate.label == LOWER_BOUND_LABEL


@pytest.mark.parametrize('horizon', [32, 128])
def test_jensen(law64, gaussian_env, horizon):
    estimate = estimate_free_energy(law64, gaussian_env, 1.0, horizon, 32, window_for(law64, 8, horizon))
    assert estimate.mean <= 3.0 * estimate.stderr
    assert estimate.stderr > 0.0


def test_independent_of_thread_count(law16, gaussian_env):
    window = window_for(law16, 8, 20)
    single = estimate_free_energy(law16, gaussian_env, 0.8, 20, 9, window, ReplicaPool(1))
    threaded = estimate_free_energy(law16, gaussian_env, 0.8, 20, 9, window, ReplicaPool(4))
    assert single.mean == threaded.mean
    assert single.stderr == threaded.stderr
    assert single.seeds == threaded.seeds == [gaussian_env.seed + i for i in range(9)]


def test_row(law16, gaussian_env):
    estimate = estimate_free_energy(law16, gaussian_env, 0.8, 10, 3, window_for(law16, 4, 10))
    row = estimate.row(gaussian_env.seed)
    assert sorted(row) == sorted(['beta', 'N', 'M', 'mean', 'stderr', 'window_R', 'seed', 'label'])
    assert row['N'] == 10 and row['M'] == 3 and row['window_R'] == 4


def test_needs_two_replicas(small_law, gaussian_env):
    with pytest.raises(InvalidParameterError):
        estimate_free_energy(small_law, gaussian_env, 1.0, 4, 1, wide_window(small_law, 4))


@pytest.mark.slow
def test_nondecreasing_in_horizon(law64):
    env = EnvSpec(seed=2718)
    estimates = [estimate_free_energy(law64, env, 1.0, n, 32, window_for(law64, 8, n), ReplicaPool(4))
                 for n in (64, 256, 1024)]
    for shorter, longer in zip(estimates, estimates[1:]):
        spread = (shorter.stderr ** 2 + longer.stderr ** 2) ** 0.5
        assert longer.mean >= shorter.mean - 3.0 * spread
