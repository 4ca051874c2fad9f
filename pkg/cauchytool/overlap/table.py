import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import fft, stats

from cauchytool.errors import InvalidParameterError, NeedsLongerTableError
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.llt import DEFAULT_WINDOW_MULTIPLIER
from cauchytool.walk.scaling import ScalingSequence, scaling_constants


LOG = logging.getLogger(__name__)

# Spectral terms with |phi|^(2n) below this are dropped
SPECTRAL_CUTOFF = 1e-20


@dataclass(frozen=True, eq=False)
class OverlapTable:
    """
    Collision probabilities P(S_n = S'_n) and their prefix sums D(N) for n <= n_max.

    `collision[0]` is unused and 0, `d[0] = 0`. `error[n]` is the estimated
    aliasing error of D(n) caused by evaluating on a cycle of length `cycle`.
    """
    law: IncrementLaw = field(repr=False)
    fingerprint: str
    n_max: int
    window_radius: int
    cycle: int
    collision: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)
    error: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        for array in (self.collision, self.d, self.error):
            array.setflags(write=False)

    @property
    def scaling(self) -> ScalingSequence:
        return scaling_constants(self.law, self.n_max)

    def d_value(self, n: int) -> float:
        """
        D(n), raising if n is beyond the table.
        """
        if n < 0:
            raise InvalidParameterError("D(n) needs n >= 0, got {}".format(n))
        if n > self.n_max:
            raise NeedsLongerTableError(float('nan'), self.n_max)
        return float(self.d[n])

    def d_inverse(self, x: float) -> int:
        """
        max{N <= n_max : D(N) <= x}.
        """
        return d_inverse(self, x)

    def columns(self) -> Dict[str, np.ndarray]:
        """
        Columnar export (n, collision, D, error, a_n) for n = 1..n_max.
        """
        return {
            'n': np.arange(1, self.n_max + 1),
            'collision': self.collision[1:],
            'D': self.d[1:],
            'D_error': self.error[1:],
            'a_n': self.scaling.a[1:],
        }

    def __str__(self) -> str:
        return 'OverlapTable(N_max={}, cycle={}, D(N_max)={:.6g})'.format(
            self.n_max, self.cycle, self.d[self.n_max]
        )


def default_window(law: IncrementLaw, n_max: int) -> int:
    a_n = scaling_constants(law, n_max).a_n(n_max)
    return max(law.support_radius, DEFAULT_WINDOW_MULTIPLIER * a_n)


def _cycle_length(window_radius: int) -> int:
    return 1 << int(math.ceil(math.log2(2 * window_radius + 1)))


def _spectrum(law: IncrementLaw, cycle: int) -> np.ndarray:
    """
    Characteristic function of the step at the angles 2 pi j / cycle, j = 0..cycle/2.
    """
    wrapped = np.zeros(cycle)
    x_max = law.support_radius
    wrapped[:x_max + 1] = law.probs[x_max:]
    wrapped[cycle - x_max:] = law.probs[:x_max]
    # the law is symmetric, so the transform is real up to rounding
    return fft.rfft(wrapped).real


def _checkpoints(n_max: int) -> List[int]:
    points = [1 << k for k in range(n_max.bit_length()) if (1 << k) <= n_max]
    if points[-1] != n_max:
        points.append(n_max)
    return points


def _aliasing_errors(phi: np.ndarray, cycle: int, n_max: int) -> np.ndarray:
    """
    Per-n estimate of the error the cycle adds to the collision probability.

    The wrapped pmf is recovered at dyadic checkpoints; its value at the
    antipode and its far-half mass bound the folded-back contribution. Each n
    uses the next checkpoint at or above it.
    """
    errors = np.zeros(n_max + 1)
    quarter = cycle // 4
    previous = 0
    for point in _checkpoints(n_max):
        wrapped = fft.irfft(phi ** point, n=cycle)
        np.maximum(wrapped, 0.0, out=wrapped)
        antipode = wrapped[cycle // 2]
        far_mass = float(np.sum(wrapped[quarter:cycle - quarter + 1]))
        errors[previous + 1:point + 1] = 4.0 * antipode + 4.0 * far_mass / cycle
        previous = point

    return errors


def build_overlap(law: IncrementLaw, n_max: int, window_radius: Optional[int] = None) -> OverlapTable:
    """
    Tabulate collision(n) = sum_x p_n(x)^2 and D(N) = sum_{n <= N} collision(n).

    Collisions are evaluated with Parseval's identity on a cycle of length
    L >= 2 * window_radius + 1: collision(n) = L^-1 sum_j phi_j^(2n). Terms are
    taken in decreasing |phi_j| and cut once |phi_j|^(2n) < SPECTRAL_CUTOFF, so
    the work per n shrinks like 1 / n.
    """
    if n_max < 1:
        raise InvalidParameterError("N_max must be >= 1, got {}".format(n_max))

    window_radius = default_window(law, n_max) if window_radius is None else window_radius
    if window_radius < law.support_radius:
        raise InvalidParameterError(
            "Window radius {} is smaller than the step support {}".format(window_radius, law.support_radius)
        )

    cycle = _cycle_length(window_radius)
    LOG.info("Building overlap table N_max=%d on cycle %d for %s", n_max, cycle, law)

    phi = _spectrum(law, cycle)
    weights = np.full(phi.size, 2.0 / cycle)
    weights[0] = 1.0 / cycle
    weights[-1] = 1.0 / cycle

    squared = phi * phi
    order = np.argsort(-squared, kind='stable')
    squared = squared[order]
    weights = weights[order]
    with np.errstate(divide='ignore'):
        decay = -np.log(squared)

    budget = -math.log(SPECTRAL_CUTOFF)
    collision = np.zeros(n_max + 1)
    powers = np.ones(squared.size)
    for n in range(1, n_max + 1):
        active = int(np.searchsorted(decay, budget / n, side='right'))
        powers[:active] *= squared[:active]
        collision[n] = float(np.dot(weights[:active], powers[:active]))

    d = np.cumsum(collision)
    error = np.cumsum(_aliasing_errors(phi, cycle, n_max))

    table = OverlapTable(law, law.fingerprint(), n_max, window_radius, cycle, collision, d, error)
    LOG.info("Built %s", table)
    return table


def d_inverse(table: OverlapTable, x: float) -> int:
    """
    max{N : D(N) <= x}, ties resolved to the larger N.
    """
    if x < 0 or math.isnan(x):
        raise InvalidParameterError("D inverse needs x >= 0, got {}".format(x))

    if table.d[table.n_max] <= x:
        raise NeedsLongerTableError(x, table.n_max)

    return int(np.searchsorted(table.d, x, side='right')) - 1


def fit_log_growth(table: OverlapTable, n_lo: int = 1, n_hi: Optional[int] = None) -> Dict[str, float]:
    """
    Least-squares fit D(N) = slope * log N + intercept over dyadic N in [n_lo, n_hi].
    """
    n_hi = table.n_max if n_hi is None else n_hi
    points = [n for n in _checkpoints(table.n_max) if n_lo <= n <= n_hi and n & (n - 1) == 0]
    if len(points) < 2:
        raise InvalidParameterError("Need at least two dyadic N in [{}, {}]".format(n_lo, n_hi))

    fit = stats.linregress(np.log(points), table.d[points])
    return {
        'slope': float(fit.slope),
        'intercept': float(fit.intercept),
        'rvalue': float(fit.rvalue),
        'points': len(points),
    }
