import logging

import numpy as np
from scipy import signal

from cauchytool.errors import NumericOverflowError
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)


class LayerPropagator:
    """
    One step of the killed walk on [-radius, radius], acting on log weights.

    The kernel is symmetric, so the same operator serves the forward recursion
    and the backward one. Weights are stored as logarithms; each step rescales
    by the layer maximum before exponentiating.
    """

    def __init__(self, law: IncrementLaw, radius: int) -> None:
        """
        Initialize instance.
        """
        self.law = law
        self.radius = radius
        self.kernel = np.array(law.probs)

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.radius, self.radius + 1)

    def origin(self) -> np.ndarray:
        """
        Log weights of the unit mass at 0.
        """
        layer = np.full(2 * self.radius + 1, -np.inf)
        layer[self.radius] = 0.0
        return layer

    def step(self, log_weights: np.ndarray) -> np.ndarray:
        """
        log sum_y exp(log_weights(y)) P(S_1 = x - y) for every x in the window.
        """
        shift = np.max(log_weights)
        if not np.isfinite(shift):
            raise NumericOverflowError("Layer maximum is {}, cannot propagate".format(shift))

        weights = np.exp(log_weights - shift)
        spread = signal.convolve(weights, self.kernel, mode='same', method='auto')
        np.maximum(spread, 0.0, out=spread)

        with np.errstate(divide='ignore'):
            return np.log(spread) + shift

    def apply(self, log_weights: np.ndarray, log_potential: np.ndarray) -> np.ndarray:
        """
        Propagate one step and multiply by the site potential exp(log_potential).
        """
        out = self.step(log_weights) + log_potential
        if np.any(np.isnan(out)) or np.any(out == np.inf):
            raise NumericOverflowError("Non-finite layer weights after propagation")
        return out
