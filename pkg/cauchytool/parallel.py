import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

from cauchytool.util import SeedUtil


LOG = logging.getLogger(__name__)

T = TypeVar('T')


class ReplicaPool:
    """
    Runs independent replicas on a thread pool.

    Replica i receives the seed (master + i) mod 2^64 and results are returned
    in index order, so the outcome does not depend on the thread count.
    """

    def __init__(self, threads: Optional[int] = None) -> None:
        """
        Initialize instance. `threads` of None or 1 runs replicas inline.
        """
        if threads is not None and threads < 1:
            raise ValueError("Thread count must be >= 1, got {}".format(threads))
        self.threads = threads or 1

    def seeds(self, master: int, count: int) -> List[int]:
        """
        Seeds of replicas 0..count - 1, independent of the thread count.
        """
        return [SeedUtil.replica_seed(master, index) for index in range(count)]

    def map_seeds(self, job: Callable[[int], T], master: int, count: int) -> List[T]:
        """
        Evaluate `job(seed)` for every replica seed, results ordered by replica index.
        """
        seeds = self.seeds(master, count)
        LOG.debug("Running %d replicas from master seed %d on %d thread(s)", count, master, self.threads)

        if self.threads == 1:
            return [job(seed) for seed in seeds]

        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            return list(executor.map(job, seeds))

    def __str__(self) -> str:
        return 'ReplicaPool(threads={})'.format(self.threads)
