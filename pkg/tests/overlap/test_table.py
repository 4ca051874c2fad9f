import math

import numpy as np
import pytest

from cauchytool.errors import InvalidParameterError, NeedsLongerTableError
from cauchytool.overlap.table import build_overlap, d_inverse, fit_log_growth
from cauchytool.walk.law import build_canonical_law
from cauchytool.walk.pmf import n_step_pmf


def exact_first_collision(law):
    k = np.arange(1, law.support_radius + 1, dtype=np.float64)
    return 2.0 * law.tail_constant ** 2 * float(np.sum(k ** -4.0))


def test_first_collision_truncated(law4096, table4096):
    assert table4096.collision[1] == pytest.approx(exact_first_collision(law4096), abs=1e-12)
    assert table4096.d[0] == 0.0
    assert table4096.d[1] == table4096.collision[1]


def test_first_collision_limit():
    law = build_canonical_law(1 << 19)
    table = build_overlap(law, 1)
    assert table.collision[1] == pytest.approx(0.2, abs=1e-6)


def test_matches_pmf_collisions(law16):
    table = build_overlap(law16, 32, window_radius=16 * 32)
    for n in range(1, 33):
        expected = n_step_pmf(law16, n, 16 * n).collision()
        assert table.collision[n] == pytest.approx(expected, abs=1e-12)
    assert np.max(table.error) < 1e-12


def test_two_point_law(two_point_law):
    table = build_overlap(two_point_law, 4)
    np.testing.assert_allclose(table.collision[1:], [0.5, 0.375, 0.3125, 0.2734375], atol=1e-14)


def test_d_is_nondecreasing(table4096):
    assert np.all(np.diff(table4096.d) > 0.0)
    assert np.all(table4096.error >= 0.0)
    assert np.all(np.diff(table4096.error) >= 0.0)


def test_d_inverse_round_trip(table4096):
    for k in list(range(0, 50)) + [100, 1000, table4096.n_max - 1]:
        assert d_inverse(table4096, float(table4096.d[k])) == k
    assert table4096.d_inverse(0.1) == 0


def test_d_inverse_between_values(table4096):
    x = 0.5 * (table4096.d[10] + table4096.d[11])
    assert d_inverse(table4096, x) == 10


def test_d_inverse_beyond_table(table4096):
    with pytest.raises(NeedsLongerTableError) as error:
        d_inverse(table4096, float(table4096.d[table4096.n_max]))
    assert error.value.n_max == table4096.n_max
    with pytest.raises(InvalidParameterError):
        d_inverse(table4096, -1.0)


def test_d_value(table4096):
    assert table4096.d_value(7) == table4096.d[7]
    with pytest.raises(NeedsLongerTableError):
        table4096.d_value(table4096.n_max + 1)


def test_columns(table4096):
    columns = table4096.columns()
    assert columns['n'][0] == 1 and columns['n'][-1] == table4096.n_max
    assert all(len(values) == table4096.n_max for values in columns.values())


def test_invalid_build(small_law):
    with pytest.raises(InvalidParameterError):
        build_overlap(small_law, 0)
    with pytest.raises(InvalidParameterError):
        build_overlap(small_law, 4, window_radius=1)


def test_rescaled_collision_stabilizes(large_table):
    scaling = large_table.scaling
    values = [scaling.a_n(n) * large_table.collision[n] for n in (1 << 12, 1 << 14)]
    assert values[1] == pytest.approx(values[0], rel=0.05)
    assert values[1] == pytest.approx(1.0 / math.pi ** 2, rel=0.05)


def test_log_growth_fit(large_table):
    fit = fit_log_growth(large_table, 1 << 8)
    assert fit['points'] == 8
    assert fit['slope'] == pytest.approx(1.0 / 6.0, rel=0.1)
    assert fit['rvalue'] > 0.999


def test_fit_needs_two_points(table4096):
    with pytest.raises(InvalidParameterError):
        fit_log_growth(table4096, 4096)


@pytest.mark.slow
def test_logarithmic_growth_constant():
    law = build_canonical_law(1 << 22)
    table = build_overlap(law, 1 << 18)
    ratios = [table.d[n] / math.log(n) for n in (1 << 16, 1 << 18)]
    assert ratios[1] == pytest.approx(ratios[0], rel=0.03)

    n = 1 << 14
    predicted = table.scaling.a_n(n) * table.collision[n] / table.scaling.phi_n(n)
    assert ratios[1] == pytest.approx(predicted, rel=0.1)
    assert table.error[table.n_max] < 1e-3 * table.d[table.n_max]
