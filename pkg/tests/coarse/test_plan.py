import math

import pytest

from cauchytool.coarse.plan import manual_plan, plan
from cauchytool.errors import InvalidParameterError, InvalidPlanError, NeedsLongerTableError, TooLargeBetaError
from cauchytool.overlap.diagnostics import restricted_overlap
from cauchytool.overlap.table import build_overlap


def test_too_large_beta(table4096):
    with pytest.raises(TooLargeBetaError):
        plan(3.0, 0.1, table4096)


def test_needs_longer_table(table4096):
    with pytest.raises(NeedsLongerTableError) as error:
        plan(0.3, 0.1, table4096)
    assert error.value.threshold == pytest.approx(1.1 / 0.09)


def test_plan_scales(large_table):
    epsilon = 0.1
    beta = math.sqrt((1 + epsilon) / large_table.d[1 << 12])
    result = plan(beta, epsilon, large_table)

    threshold = (1 + epsilon) / beta ** 2
    power = 1 - epsilon ** 2
    assert result.u == math.floor(result.l ** power)
    assert large_table.d[result.u] >= threshold * (1 - 1e-12)
    assert large_table.d[math.floor((result.l - 1) ** power)] < threshold
    assert 1 <= result.q < result.u < result.l

    a_l = large_table.scaling.a_n(result.l)
    expected_q = math.ceil(max(0.5 * math.log(a_l / result.l), math.log(large_table.d[result.l])) / epsilon ** 2)
    assert result.q == expected_q
    assert result.a_l == a_l
    assert result.d_u == large_table.d[result.u]
    assert result.upper_half_holds
    assert not result.manual


def test_plan_monotone_in_beta(large_table):
    betas = [math.sqrt(1.1 / large_table.d[n]) for n in (1 << 10, 1 << 11, 1 << 12)]
    lengths = [plan(beta, 0.1, large_table).l for beta in betas]
    assert lengths == sorted(lengths)


def test_plan_validation(table4096):
    with pytest.raises(InvalidParameterError):
        plan(1.0, 1.2, table4096)
    with pytest.raises(InvalidParameterError):
        plan(1.0, 0.1, table4096, theta=0.4)
    with pytest.raises(InvalidParameterError):
        plan(-1.0, 0.1, table4096)


def test_manual_plan(law16):
    result = manual_plan(law16, 0.5, 64, 8, 3, multiplier=2.0)
    assert result.manual
    assert result.d_u == pytest.approx(restricted_overlap(law16, 8, float('inf')))
    assert result.normalization == pytest.approx(
        (2 * 2.0 * 64 * result.a_l) ** -0.5 * result.d_u ** -1.5
    )
    assert result.site_reach == 2 * result.a_l - 1
    assert 'law' not in result.to_dict()
    assert result.to_dict()['q'] == 3


def test_manual_plan_with_table(law16):
    table = build_overlap(law16, 16)
    result = manual_plan(law16, 0.5, 64, 8, 3, table=table)
    assert result.d_u == table.d[8]


@pytest.mark.parametrize('l,u,q', [(8, 8, 2), (8, 3, 3), (8, 4, 0), (4, 6, 2)])
def test_manual_plan_order(law16, l, u, q):
    with pytest.raises(InvalidPlanError):
        manual_plan(law16, 0.5, l, u, q)


def test_w_window_check(law16):
    manual_plan(law16, 0.5, 64, 8, 3).check_w_window()
    with pytest.raises(InvalidPlanError):
        manual_plan(law16, 0.5, 8, 3, 2).check_w_window()
