import numpy as np
import pytest

from cauchytool.errors import InvalidParameterError
from cauchytool.walk.sampling import sample_walks


def test_shape_and_start(small_law):
    walks = sample_walks(small_law, 5, 7, seed=3)
    assert walks.shape == (5, 8)
    assert np.all(walks[:, 0] == 0)


def test_steps_in_support(small_law):
    steps = np.diff(sample_walks(small_law, 200, 50, seed=4), axis=1)
    assert set(np.unique(steps).tolist()) <= {-2, -1, 1, 2}


def test_step_frequencies(small_law):
    steps = np.diff(sample_walks(small_law, 1000, 100, seed=5), axis=1).ravel()
    for k in (-2, -1, 1, 2):
        assert np.mean(steps == k) == pytest.approx(small_law.prob(k), abs=0.01)


def test_deterministic(law64):
    first = sample_walks(law64, 10, 20, seed=99)
    assert np.array_equal(first, sample_walks(law64, 10, 20, seed=99))
    assert not np.array_equal(first, sample_walks(law64, 10, 20, seed=100))


def test_invalid(small_law):
    with pytest.raises(InvalidParameterError):
        sample_walks(small_law, 0, 5, seed=1)
