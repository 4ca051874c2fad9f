import pytest

from cauchytool.env.spec import EnvSpec
from cauchytool.overlap.table import build_overlap
from cauchytool.walk.law import build_canonical_law


@pytest.fixture(scope='session')
def two_point_law():
    return build_canonical_law(1)


@pytest.fixture(scope='session')
def small_law():
    return build_canonical_law(2)


@pytest.fixture(scope='session')
def law16():
    return build_canonical_law(16)


@pytest.fixture(scope='session')
def law64():
    return build_canonical_law(64)


@pytest.fixture(scope='session')
def law4096():
    return build_canonical_law(1 << 12)


@pytest.fixture(scope='session')
def law65536():
    return build_canonical_law(1 << 16)


@pytest.fixture(scope='session')
def gaussian_env():
    return EnvSpec('gaussian-unit', seed=12345)


@pytest.fixture(scope='session')
def rademacher_env():
    return EnvSpec('rademacher', seed=777)


@pytest.fixture(scope='session')
def table4096(law4096):
    """
    Overlap table of the X_max = 2^12 law up to N = 2^12.
    """
    return build_overlap(law4096, 1 << 12)


@pytest.fixture(scope='session')
def large_table():
    """
    Overlap table of the X_max = 2^20 law up to N = 2^15.
    """
    return build_overlap(build_canonical_law(1 << 20), 1 << 15)
