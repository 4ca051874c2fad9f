import logging
import pickle
from typing import Optional

from diskcache import Cache

from cauchytool.errors import CacheMismatchError
from cauchytool.overlap.table import OverlapTable, build_overlap, default_window
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)

# Raised by pickle.load on truncated or foreign bytes
UNREADABLE_ENTRY_ERRORS = (
    pickle.UnpicklingError, EOFError, AttributeError, ImportError, IndexError, KeyError, TypeError, ValueError,
)


class TableCache:
    """
    Disk cache for overlap tables, keyed by law fingerprint, N_max and window.
    """

    KEY_FORMAT: str = "overlap:{}:{}:{}"

    def __init__(self, cache_path: str) -> None:
        """
        Initialize instance.
        """
        self.cache_path = cache_path
        self.hits = 0
        self.misses = 0

    def key(self, law: IncrementLaw, n_max: int, window_radius: int) -> str:
        """
        Cache key of the table for this law, N_max and window radius.
        """
        return self.KEY_FORMAT.format(law.fingerprint(), n_max, window_radius)

    def load(self, law: IncrementLaw, n_max: int, window_radius: Optional[int] = None) -> OverlapTable:
        """
        Load the table from the cache, or build and store it if the entry is missing or invalid.
        """
        window_radius = default_window(law, n_max) if window_radius is None else window_radius
        key = self.key(law, n_max, window_radius)

        with Cache(self.cache_path) as cache:
            try:
                table = cache.get(key)
            except UNREADABLE_ENTRY_ERRORS as e:
                LOG.warning("Cache entry %s is unreadable (%s: %s), rebuilding", key, type(e).__name__, e)
                cache.delete(key)
            else:
                if isinstance(table, OverlapTable):
                    if table.fingerprint != law.fingerprint():
                        raise CacheMismatchError(
                            "Cached table {} was built for law {}, requested {}".format(
                                key, table.fingerprint, law.fingerprint()
                            )
                        )
                    LOG.info("Cache hit for %s", key)
                    self.hits += 1
                    return table

                if table is not None:
                    LOG.warning("Cache entry invalid, rebuilding %s", key)
                else:
                    LOG.info("Cache entry not found, building %s", key)

            self.misses += 1
            table = build_overlap(law, n_max, window_radius)
            cache.set(key, table)

        return table
