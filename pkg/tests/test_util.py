import math

import numpy as np
import pytest

from cauchytool.util import SEED_MASK, HashUtil, PathUtil, SeedUtil, StatUtil


def test_mean_stderr():
    mean, stderr = StatUtil.mean_stderr([1.0, 2.0, 3.0, 4.0])
    assert mean == 2.5
    assert stderr == pytest.approx(math.sqrt(5.0 / 3.0) / 2.0)


def test_mean_stderr_single_value():
    assert StatUtil.mean_stderr([7.0]) == (7.0, 0.0)


def test_mean_stderr_empty():
    with pytest.raises(ValueError):
        StatUtil.mean_stderr([])


def test_replica_seed_wraps():
    assert SeedUtil.replica_seed(5, 3) == 8
    assert SeedUtil.replica_seed(SEED_MASK, 1) == 0
    assert SeedUtil.replica_seed(SEED_MASK - 1, 4) == 2


def test_fingerprint_ignores_key_order():
    assert HashUtil.fingerprint({'a': 1, 'b': [1, 2]}) == HashUtil.fingerprint({'b': [1, 2], 'a': 1})
    assert HashUtil.fingerprint({'a': 1}) != HashUtil.fingerprint({'a': 2})
    assert len(HashUtil.fingerprint({})) == 64


def test_array_fingerprint():
    first = np.arange(5, dtype=np.float64)
    assert HashUtil.array_fingerprint(first) == HashUtil.array_fingerprint(first.copy())
    assert HashUtil.array_fingerprint(first) != HashUtil.array_fingerprint(first[::-1])


def test_ensure_base_path_exists(tmp_path):
    target = tmp_path / 'a' / 'b' / 'file.txt'
    PathUtil.ensure_base_path_exists(str(target))
    assert target.parent.is_dir()
    PathUtil.ensure_base_path_exists(str(target))
