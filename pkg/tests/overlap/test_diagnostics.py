import math

import numpy as np
import pytest

from cauchytool.errors import InvalidParameterError
from cauchytool.overlap.diagnostics import (
    d_ratio_check, recurrence_diagnostic, restricted_overlap, window_collision_bound
)
from cauchytool.overlap.table import build_overlap
from cauchytool.walk.law import build_canonical_law
from cauchytool.walk.pmf import n_step_pmf
from cauchytool.walk.scaling import scaling_constants


@pytest.fixture(scope='module')
def law4():
    return build_canonical_law(4)


def test_recurrence_report(law65536):
    report = recurrence_diagnostic(law65536, 1 << 14)
    assert report.n[-1] == 1 << 14
    assert np.all(np.diff(report.inverse_nl) > 0)
    assert np.all(np.diff(report.inverse_a) > 0)
    assert report.recurrent_type

    top = [s / math.log(n) for n, s in zip(report.n[-2:], report.inverse_a[-2:])]
    assert top[1] == pytest.approx(top[0], rel=0.05)

    ratio = report.inverse_nl[-1] / report.inverse_a[-1]
    assert 0.1 <= ratio <= 10.0
    assert len(report.rows()) == len(report.n)


def test_recurrence_needs_interior_range(law64):
    with pytest.raises(InvalidParameterError):
        recurrence_diagnostic(law64, 64)
    with pytest.raises(InvalidParameterError):
        recurrence_diagnostic(law64, 1)


def test_unrestricted_overlap_is_d(law4):
    table = build_overlap(law4, 8, window_radius=64)
    assert restricted_overlap(law4, 8, float('inf')) == pytest.approx(table.d[8], abs=1e-12)


def test_first_step_overlap(law4096):
    k = np.arange(1, 4097, dtype=np.float64)
    expected = 2.0 * law4096.tail_constant ** 2 * float(np.sum(k ** -4.0))
    assert restricted_overlap(law4096, 1, 1e6) == pytest.approx(expected, abs=1e-12)


def test_restriction_direct(law16):
    u = 6
    multiplier = 1.5
    scaling = scaling_constants(law16, u)
    expected = 0.0
    for t in range(1, u + 1):
        pmf = n_step_pmf(law16, t, 16 * t)
        reach = multiplier * scaling.a_n(t)
        expected += sum(pmf.prob(x) ** 2 for x in range(-16 * t, 16 * t + 1) if abs(x) <= reach)
    assert restricted_overlap(law16, u, multiplier) == pytest.approx(expected, rel=1e-10)


def test_restricted_below_full(law64):
    full = restricted_overlap(law64, 32, float('inf'))
    values = [restricted_overlap(law64, 32, r) for r in (0.5, 1.0, 2.0, 8.0)]
    assert values == sorted(values)
    assert values[-1] <= full * (1 + 1e-12)


@pytest.mark.slow
def test_restriction_loses_little_mass(law65536):
    u = 1 << 10
    table = build_overlap(law65536, u)
    ratio = restricted_overlap(law65536, u, 8.0) / table.d[u]
    assert 0.95 < ratio <= 1.0 + 1e-9


def test_d_ratio(large_table):
    assert d_ratio_check(large_table, 1, 100) == 1.0
    ratios = [d_ratio_check(large_table, 8, u) for u in (1 << 8, 1 << 10, 1 << 12)]
    assert all(r >= 1.0 for r in ratios)
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] < 1.35


def test_d_ratio_invalid(table4096):
    with pytest.raises(InvalidParameterError):
        d_ratio_check(table4096, 2, 4096)
    with pytest.raises(InvalidParameterError):
        d_ratio_check(table4096, 0, 4)


def test_collision_bound_full_range(law4):
    bound = window_collision_bound(law4, 8, (-32, 32))
    assert bound.restricted == pytest.approx(bound.full, rel=1e-12)

    table = build_overlap(law4, 8, window_radius=64)
    with_table = window_collision_bound(law4, 8, (-32, 32), table=table)
    assert with_table.full == table.d[8]
    assert with_table.slack == pytest.approx(0.0, abs=1e-12)


def test_collision_bound_origin(law4):
    bound = window_collision_bound(law4, 8, (0, 0))
    expected = sum(n_step_pmf(law4, s, 4 * s).prob(0) ** 2 for s in range(1, 9))
    assert bound.restricted == pytest.approx(expected, rel=1e-12)
    assert bound.slack > 0.0


def test_collision_bound_block(law4096):
    a_l = scaling_constants(law4096, 64).a_n(64)
    reach = int(math.ceil(2 * a_l)) - 1
    bound = window_collision_bound(law4096, 256, (-reach, reach))
    assert 0.0 < bound.restricted <= bound.full
    assert bound.slack >= 0.0


def test_collision_bound_invalid(law4):
    with pytest.raises(InvalidParameterError):
        window_collision_bound(law4, 0, (0, 0))
    with pytest.raises(InvalidParameterError):
        window_collision_bound(law4, 3, (2, 1))
