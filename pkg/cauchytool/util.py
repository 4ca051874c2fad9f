import hashlib
import json
import math
import os
from typing import Any, Iterable, Tuple

import numpy as np


SEED_MASK = (1 << 64) - 1


class PathUtil:
    """
    Utility class for path operations.
    """

    @staticmethod
    def ensure_path_exists(path: str) -> None:
        """
        Recursively create the directory structure for the given path if it does not exist.
        """
        if path and not os.path.exists(path):
            os.makedirs(path)

    @staticmethod
    def ensure_base_path_exists(path: str) -> None:
        """
        Strip the filename of the given path and recursively create the directory structure.
        """
        base_path = os.path.dirname(path)
        PathUtil.ensure_path_exists(base_path)


class StatUtil:
    """
    Utility class for replica statistics.
    """

    @staticmethod
    def mean_stderr(values: Iterable[float]) -> Tuple[float, float]:
        """
        Return the sample mean and the standard error of the mean.
        A single value has standard error 0.
        """
        data = np.asarray(list(values), dtype=np.float64)
        if data.size == 0:
            raise ValueError("Cannot summarize an empty sample")

        mean = float(np.mean(data))
        if data.size == 1:
            return mean, 0.0

        return mean, float(np.std(data, ddof=1) / math.sqrt(data.size))


class SeedUtil:
    """
    Utility class for deriving reproducible seeds.
    """

    @staticmethod
    def replica_seed(master: int, index: int) -> int:
        """
        Derive the seed of replica `index` from the master seed by counter offset.
        """
        return (master + index) & SEED_MASK


class HashUtil:
    """
    Utility class for stable fingerprints.
    """

    @staticmethod
    def fingerprint(payload: Any) -> str:
        """
        SHA-256 of the canonical JSON form of the payload.
        """
        text = json.dumps(payload, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    @staticmethod
    def array_fingerprint(*arrays: np.ndarray) -> str:
        """
        SHA-256 over the raw bytes of the given arrays.
        """
        digest = hashlib.sha256()
        for array in arrays:
            digest.update(np.ascontiguousarray(array).tobytes())

        return digest.hexdigest()
