import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy import signal

from cauchytool.errors import InvalidParameterError
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NStepPmf:
    """
    Distribution of S_n restricted to [-radius, radius].

    `probs[k + radius]` is P(S_n = k). Mass that left the window during the
    computation is kept in `truncation_loss`, never renormalized away.
    """
    n: int
    radius: int
    probs: np.ndarray = field(repr=False)
    truncation_loss: float
    x_max: int = 0

    def __post_init__(self) -> None:
        self.probs.setflags(write=False)

    @property
    def offsets(self) -> np.ndarray:
        """
        Integer offsets -radius..radius matching `probs`.
        """
        return np.arange(-self.radius, self.radius + 1)

    @property
    def mass(self) -> float:
        """
        Mass kept inside the window, 1 - truncation_loss up to rounding.
        """
        return float(np.sum(self.probs))

    def prob(self, k: int) -> float:
        """
        P(S_n = k), zero outside the stored window.
        """
        if abs(k) > self.radius:
            return 0.0
        return float(self.probs[k + self.radius])

    def window(self, radius: int) -> np.ndarray:
        """
        Probabilities for offsets -radius..radius, zero padded beyond the stored range.
        """
        out = np.zeros(2 * radius + 1)
        keep = min(radius, self.radius)
        out[radius - keep:radius + keep + 1] = self.probs[self.radius - keep:self.radius + keep + 1]
        return out

    def collision(self) -> float:
        """
        Sum of squared probabilities, P(S_n = S'_n) for an independent copy.
        """
        return float(np.dot(self.probs, self.probs))


def convolve_truncated(a: np.ndarray, b: np.ndarray, radius: int) -> Tuple[np.ndarray, float]:
    """
    Convolve two centered symmetric arrays and cut the result to [-radius, radius].

    Returns the truncated array (of radius min(radius, ra + rb)) and the mass dropped by the cut.
    """
    ra = (a.size - 1) // 2
    rb = (b.size - 1) // 2
    full = signal.convolve(a, b, method='auto')
    np.maximum(full, 0.0, out=full)

    reach = ra + rb
    keep = min(radius, reach)
    cut = reach - keep
    if cut == 0:
        out, dropped = full, 0.0
    else:
        out = full[cut:full.size - cut]
        dropped = float(np.sum(full[:cut]) + np.sum(full[full.size - cut:]))

    return 0.5 * (out + out[::-1]), dropped


def _single_step(law: IncrementLaw) -> NStepPmf:
    """
    The law itself as the n = 1 pmf.
    """
    return NStepPmf(1, law.support_radius, np.array(law.probs), 0.0, law.support_radius)


def _combine(first: NStepPmf, second: NStepPmf, radius: int) -> NStepPmf:
    """
    Distribution of the sum of two independent pieces, truncated to the window.
    """
    probs, dropped = convolve_truncated(first.probs, second.probs, radius)
    la, lb = first.truncation_loss, second.truncation_loss
    loss = la + lb - la * lb + dropped
    return NStepPmf(first.n + second.n, (probs.size - 1) // 2, probs, loss, first.x_max)


def _check_window(law: IncrementLaw, window_radius: int) -> None:
    if window_radius < law.support_radius:
        raise InvalidParameterError(
            "Window radius {} is smaller than the step support {}".format(
                window_radius, law.support_radius
            )
        )


def n_step_pmf(law: IncrementLaw, n: int, window_radius: Optional[int] = None) -> NStepPmf:
    """
    Distribution of S_n by binary doubling, restricted to [-window_radius, window_radius].

    Exact up to rounding whenever window_radius >= n * X_max.
    """
    if n < 1:
        raise InvalidParameterError("Step count must be >= 1, got {}".format(n))

    window_radius = law.support_radius if window_radius is None else window_radius
    _check_window(law, window_radius)

    result: Optional[NStepPmf] = None
    power = _single_step(law)
    remaining = n
    while True:
        if remaining & 1:
            result = power if result is None else _combine(result, power, window_radius)
        remaining >>= 1
        if not remaining:
            break
        power = _combine(power, power, window_radius)
        LOG.debug("Doubling reached n=%d radius=%d", power.n, power.radius)

    assert result is not None
    return result


def iter_pmfs(law: IncrementLaw, t_max: int, window_radius: Optional[int] = None) -> Iterator[NStepPmf]:
    """
    Yield the distributions of S_1, ..., S_t_max by one-step convolution.
    """
    window_radius = law.support_radius if window_radius is None else window_radius
    _check_window(law, window_radius)

    step = _single_step(law)
    current = step
    yield current
    for _ in range(1, t_max):
        current = _combine(current, step, window_radius)
        yield current
