import logging
from dataclasses import dataclass, field

import numpy as np

from cauchytool.errors import InvalidParameterError
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ScalingSequence:
    """
    Scaling constants a_n and phi(n) = a_n / n for n = 1..n_max (index 0 unused).
    """
    n_max: int
    a: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.a.setflags(write=False)

    @property
    def phi(self) -> np.ndarray:
        n = np.arange(self.n_max + 1, dtype=np.float64)
        n[0] = 1.0
        out = self.a / n
        out[0] = 0.0
        return out

    def a_n(self, n: int) -> int:
        if n < 1 or n > self.n_max:
            raise InvalidParameterError("n={} outside scaling range 1..{}".format(n, self.n_max))
        return int(self.a[n])

    def phi_n(self, n: int) -> float:
        return self.a_n(n) / n


def scaling_constants(law: IncrementLaw, n_max: int) -> ScalingSequence:
    """
    a_n = min{a >= 1 : n * P(|S_1| > a) <= 1} for n = 1..n_max.
    """
    if n_max < 1:
        raise InvalidParameterError("n_max must be >= 1, got {}".format(n_max))

    tail = law.tail[1:]
    n = np.arange(1, n_max + 1, dtype=np.float64)

    # tail is nonincreasing, so the first a with tail <= 1/n is found on the negated array
    index = np.searchsorted(-tail, -1.0 / n, side='left')
    index = np.minimum(index, tail.size - 1)

    # rounding of 1/n: step forward where n * tail still exceeds 1
    while True:
        bad = (n * tail[index] > 1.0) & (index < tail.size - 1)
        if not np.any(bad):
            break
        index[bad] += 1

    a = np.zeros(n_max + 1, dtype=np.int64)
    a[1:] = index + 1

    LOG.debug("Scaling constants up to n=%d: a_n_max=%d", n_max, a[-1])
    return ScalingSequence(n_max, a)
