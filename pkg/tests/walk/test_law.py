import math

import numpy as np
import pytest

from cauchytool.errors import InvalidParameterError
from cauchytool.walk.law import build_canonical_law, build_log_power_law


def test_two_point_law(two_point_law):
    assert two_point_law.prob(1) == pytest.approx(0.5)
    assert two_point_law.prob(-1) == pytest.approx(0.5)
    assert two_point_law.prob(0) == 0.0
    assert two_point_law.tail_constant == pytest.approx(0.5)


def test_small_law_constants(small_law):
    assert small_law.tail_constant == pytest.approx(0.4)
    assert small_law.prob(1) == pytest.approx(0.4)
    assert small_law.prob(-2) == pytest.approx(0.1)
    assert small_law.prob(3) == 0.0


def test_canonical_law_is_normalized_and_symmetric(law4096):
    assert law4096.mass == pytest.approx(1.0, abs=1e-14)
    assert np.array_equal(law4096.probs, law4096.probs[::-1])
    assert law4096.prob(0) == 0.0


def test_canonical_constant_approaches_limit():
    law = build_canonical_law(1 << 16)
    assert law.tail_constant == pytest.approx(3.0 / math.pi ** 2, rel=1e-4)


def test_canonical_probs_follow_inverse_square(law64):
    for k in (1, 5, 17, 64):
        assert law64.prob(k) == pytest.approx(law64.tail_constant / k ** 2, rel=1e-14)


def test_tail_probabilities(small_law):
    assert small_law.tail_prob(0) == pytest.approx(1.0)
    assert small_law.tail_prob(1) == pytest.approx(0.2)
    assert small_law.tail_prob(2) == 0.0
    assert small_law.tail_prob(10) == 0.0
    np.testing.assert_allclose(small_law.tail_prob(np.array([0, 1, 2])), [1.0, 0.2, 0.0])


def test_slowly_varying_value(small_law):
    assert small_law.slowly_varying_value(1) == pytest.approx(0.2)
    assert small_law.slowly_varying_value(2) == 0.0


def test_invalid_x_max():
    with pytest.raises(InvalidParameterError):
        build_canonical_law(0)
    with pytest.raises(InvalidParameterError):
        build_log_power_law(-3, 1.0)


def test_log_power_law():
    law = build_log_power_law(100, 1.5)
    assert law.mass == pytest.approx(1.0, abs=1e-14)
    expected = law.tail_constant * math.log(4.0) ** 1.5 / 9.0
    assert law.prob(3) == pytest.approx(expected, rel=1e-12)
    assert law.prob(-3) == law.prob(3)
    assert str(law.slowly_varying) == 'log-power(1.5)'


def test_fingerprint_is_stable_and_distinct(law64):
    assert law64.fingerprint() == build_canonical_law(64).fingerprint()
    assert law64.fingerprint() != build_canonical_law(65).fingerprint()
    assert law64.fingerprint() != build_log_power_law(64, 0.0).fingerprint()
