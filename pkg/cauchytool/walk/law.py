import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from cauchytool.errors import InvalidParameterError
from cauchytool.util import HashUtil


LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlowlyVarying:
    """
    Descriptor of the slowly varying factor L(.) of the increment tail.
    """
    kind: str = 'constant'
    exponent: float = 0.0

    def __str__(self) -> str:
        if self.kind == 'constant':
            return self.kind
        return '{}({:g})'.format(self.kind, self.exponent)


@dataclass(frozen=True, eq=False)
class IncrementLaw:
    """
    Symmetric, finitely supported step distribution with Cauchy-type tails.

    `probs[k + support_radius]` is P(S_1 - S_0 = k) for |k| <= support_radius.
    """
    support_radius: int
    probs: np.ndarray = field(repr=False)
    tail_constant: float
    slowly_varying: SlowlyVarying = SlowlyVarying()

    def __post_init__(self) -> None:
        if self.probs.shape != (2 * self.support_radius + 1,):
            raise InvalidParameterError(
                "Law with support radius {} needs {} probabilities, got {}".format(
                    self.support_radius, 2 * self.support_radius + 1, self.probs.shape
                )
            )
        self.probs.setflags(write=False)
        object.__setattr__(self, '_tail', self._compute_tail())

    def _compute_tail(self) -> np.ndarray:
        """
        P(|S_1| > a) for a = 0..support_radius, summed from the far end.
        """
        positive = self.probs[self.support_radius + 1:]
        tail = np.zeros(self.support_radius + 1)
        tail[:-1] = 2.0 * np.cumsum(positive[::-1])[::-1]
        tail.setflags(write=False)
        return tail

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.support_radius, self.support_radius + 1)

    @property
    def tail(self) -> np.ndarray:
        return self._tail  # type: ignore

    @property
    def mass(self) -> float:
        return float(np.sum(self.probs))

    def prob(self, k: int) -> float:
        """
        P(S_1 - S_0 = k), zero outside the support.
        """
        if abs(k) > self.support_radius:
            return 0.0
        return float(self.probs[k + self.support_radius])

    def tail_prob(self, a: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        """
        P(|S_1| > a) for integer a >= 0 (vectorized).
        """
        index = np.minimum(np.asarray(a), self.support_radius)
        values = self.tail[index]
        return float(values) if np.ndim(values) == 0 else values

    def slowly_varying_value(self, k: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        """
        L(k) = k * P(|S_1| > k); zero at and beyond the support edge.
        """
        k = np.asarray(k)
        values = np.abs(k) * self.tail_prob(np.abs(k))
        return float(values) if np.ndim(values) == 0 else values

    def fingerprint(self) -> str:
        """
        Stable identifier of the law, used for cache keys and output headers.
        """
        return HashUtil.fingerprint({
            'x_max': self.support_radius,
            'slowly_varying': str(self.slowly_varying),
            'probs': HashUtil.array_fingerprint(self.probs),
        })

    def __str__(self) -> str:
        return 'IncrementLaw(x_max={}, c={:.6g}, L={})'.format(
            self.support_radius, self.tail_constant, self.slowly_varying
        )


def _symmetric_law(x_max: int, weights: np.ndarray, slowly_varying: SlowlyVarying) -> IncrementLaw:
    """
    Place `weights` (for k = 1..x_max) symmetrically and normalize.
    The returned tail constant is the normalizer c, so probs(k) = c * weights(k).
    """
    c = 1.0 / (2.0 * np.sum(weights))
    half = c * weights
    probs = np.zeros(2 * x_max + 1)
    probs[x_max + 1:] = half
    probs[:x_max] = half[::-1]
    return IncrementLaw(x_max, probs, float(c), slowly_varying)


def build_canonical_law(x_max: int) -> IncrementLaw:
    """
    Exact truncated Cauchy-type law: P(S_1 = +-k) = c * k^-2 for 1 <= k <= x_max, P(S_1 = 0) = 0.
    """
    if x_max < 1:
        raise InvalidParameterError("X_max must be a positive integer, got {}".format(x_max))

    k = np.arange(1, x_max + 1, dtype=np.float64)
    c = 1.0 / (2.0 * np.sum(1.0 / (k * k)))
    probs = np.zeros(2 * x_max + 1)
    probs[x_max + 1:] = c / (k * k)
    probs[:x_max] = probs[x_max + 1:][::-1]

    LOG.debug("Built canonical law x_max=%d c=%.12g", x_max, c)
    return IncrementLaw(x_max, probs, float(c), SlowlyVarying())


def build_log_power_law(x_max: int, exponent: float) -> IncrementLaw:
    """
    Symmetric law with P(S_1 = +-k) proportional to k^-2 * log(k + 1)^exponent.
    """
    if x_max < 1:
        raise InvalidParameterError("X_max must be a positive integer, got {}".format(x_max))

    k = np.arange(1, x_max + 1, dtype=np.float64)
    weights = np.log1p(k) ** exponent / (k * k)
    law = _symmetric_law(x_max, weights, SlowlyVarying('log-power', float(exponent)))

    LOG.debug("Built log-power law x_max=%d exponent=%g", x_max, exponent)
    return law
