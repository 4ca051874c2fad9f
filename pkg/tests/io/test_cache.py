import logging
import pickle
import sqlite3

import numpy as np
import pytest
from diskcache import Cache

from cauchytool.errors import CacheMismatchError
from cauchytool.io.cache import TableCache
from cauchytool.overlap.table import build_overlap, default_window


def test_miss_then_hit(tmp_path, law16, caplog):
    caplog.set_level(logging.INFO)
    cache = TableCache(str(tmp_path / 'cache'))

    built = cache.load(law16, 64)
    assert (cache.hits, cache.misses) == (0, 1)

    loaded = cache.load(law16, 64)
    assert (cache.hits, cache.misses) == (1, 1)
    assert 'Cache hit' in caplog.text
    np.testing.assert_array_equal(loaded.d, built.d)
    assert loaded.fingerprint == law16.fingerprint()


def test_persists_across_instances(tmp_path, law16):
    TableCache(str(tmp_path)).load(law16, 32)
    second = TableCache(str(tmp_path))
    second.load(law16, 32)
    assert second.hits == 1


def test_keys_distinguish_parameters(tmp_path, law16, law64):
    cache = TableCache(str(tmp_path))
    keys = {
        cache.key(law16, 64, 100),
        cache.key(law16, 65, 100),
        cache.key(law16, 64, 101),
        cache.key(law64, 64, 100),
    }
    assert len(keys) == 4


def test_invalid_entry_is_rebuilt(tmp_path, law16, caplog):
    cache = TableCache(str(tmp_path))
    key = cache.key(law16, 16, default_window(law16, 16))
    with Cache(str(tmp_path)) as raw:
        raw.set(key, 'garbage')

    table = cache.load(law16, 16)
    assert cache.misses == 1
    assert table.n_max == 16
    assert 'rebuilding' in caplog.text

    assert TableCache(str(tmp_path)).load(law16, 16).n_max == 16


def test_mismatched_law(tmp_path, law16, law64):
    cache = TableCache(str(tmp_path))
    window = default_window(law64, 16)
    with Cache(str(tmp_path)) as raw:
        raw.set(cache.key(law64, 16, window), build_overlap(law16, 16, window))

    with pytest.raises(CacheMismatchError):
        cache.load(law64, 16, window)


def test_unreadable_entry_is_rebuilt(tmp_path, law16, caplog):
    cache = TableCache(str(tmp_path))
    cache.load(law16, 16)
    key = cache.key(law16, 16, default_window(law16, 16))

    # Overwrite the stored pickle with bytes pickle.load rejects
    with sqlite3.connect(str(tmp_path / 'cache.db')) as db:
        db.execute(
            'UPDATE Cache SET mode = 4, filename = NULL, value = ? WHERE key = ?',
            (sqlite3.Binary(b'\x00not a pickle'), key),
        )
    with Cache(str(tmp_path)) as raw, pytest.raises(pickle.UnpicklingError):
        raw.get(key)

    fresh = TableCache(str(tmp_path))
    table = fresh.load(law16, 16)
    assert (fresh.hits, fresh.misses) == (0, 1)
    assert table.n_max == 16
    assert 'unreadable' in caplog.text

    assert TableCache(str(tmp_path)).load(law16, 16).fingerprint == law16.fingerprint()


def test_truncated_entry_is_rebuilt(tmp_path, law16, monkeypatch):
    def truncated(self, key, default=None, **kwargs):
        raise EOFError('Ran out of input')

    monkeypatch.setattr(Cache, 'get', truncated)
    cache = TableCache(str(tmp_path))
    assert cache.load(law16, 16).n_max == 16
    assert cache.misses == 1
