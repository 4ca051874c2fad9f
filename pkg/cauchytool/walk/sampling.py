import numpy as np

from cauchytool.errors import InvalidParameterError
from cauchytool.util import SEED_MASK
from cauchytool.walk.law import IncrementLaw


def walk_generator(seed: int) -> np.random.Generator:
    """
    Counter-based generator keyed by the seed.
    """
    return np.random.Generator(np.random.Philox(key=seed & SEED_MASK))


def sample_walks(law: IncrementLaw, count: int, length: int, seed: int) -> np.ndarray:
    """
    Sample `count` walk trajectories S_0 = 0, S_1, ..., S_length.

    Returns an integer array of shape (count, length + 1).
    """
    if count < 1 or length < 1:
        raise InvalidParameterError(
            "Need count >= 1 and length >= 1, got count={} length={}".format(count, length)
        )

    cdf = np.cumsum(law.probs)
    uniforms = walk_generator(seed).random((count, length)) * cdf[-1]
    index = np.minimum(np.searchsorted(cdf, uniforms, side='right'), cdf.size - 1)
    steps = index - law.support_radius

    paths = np.zeros((count, length + 1), dtype=np.int64)
    np.cumsum(steps, axis=1, out=paths[:, 1:])
    return paths
