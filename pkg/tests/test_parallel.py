import time

import pytest

from cauchytool.parallel import ReplicaPool


def slow_identity(seed):
    # later replicas finish first
    time.sleep(0.001 * (10 - seed % 10))
    return seed


def test_seeds_are_counter_offsets():
    assert ReplicaPool().seeds(100, 3) == [100, 101, 102]


@pytest.mark.parametrize('threads', [1, 2, 4])
def test_results_in_index_order(threads):
    pool = ReplicaPool(threads)
    assert pool.map_seeds(slow_identity, 0, 10) == list(range(10))


def test_thread_count_does_not_change_results():
    def job(seed):
        return seed * seed % 97

    assert ReplicaPool(1).map_seeds(job, 11, 20) == ReplicaPool(5).map_seeds(job, 11, 20)


def test_invalid_thread_count():
    with pytest.raises(ValueError):
        ReplicaPool(0)


def test_default_runs_inline():
    assert ReplicaPool().threads == 1
    assert str(ReplicaPool(3)) == 'ReplicaPool(threads=3)'
