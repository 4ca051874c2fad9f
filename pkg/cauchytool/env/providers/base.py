import abc
from typing import Callable

import numpy as np

from cauchytool.errors import InvalidParameterError


# Central-difference steps for the generic derivatives
FIRST_DERIVATIVE_STEP = 1e-5
# Second differences scale quadrature noise by 1 / h^2, about 1e-7 at this step
SECOND_DERIVATIVE_STEP = 1e-3

UNIFORM_SCALE = 2.0 ** -52


class Disorder(abc.ABC):
    """
    Abstract interface for site disorder laws with mean 0 and variance 1.

    Implementations provide the log-moment-generating function and turn raw
    64-bit counter output into site values. Derivatives fall back to central
    finite differences with one Richardson extrapolation step.
    """

    name = 'abstract'

    def __init__(self, beta_max: float) -> None:
        """
        Initialize instance with the admissible range |beta| <= beta_max.
        """
        if beta_max <= 0:
            raise InvalidParameterError("beta_max must be positive, got {}".format(beta_max))
        self.beta_max = beta_max

    def check_beta(self, beta: float) -> None:
        """
        Raise if beta is outside the configured range.
        """
        if not np.isfinite(beta) or abs(beta) > self.beta_max:
            raise InvalidParameterError(
                "beta={} outside configured range [-{}, {}] for {}".format(
                    beta, self.beta_max, self.beta_max, self.name
                )
            )

    def log_mgf(self, beta: float) -> float:
        """
        lambda(beta) = log E[exp(beta * omega)].
        """
        self.check_beta(beta)
        return self._log_mgf(beta)

    def lambda_prime(self, beta: float) -> float:
        self.check_beta(beta)
        return self._richardson(
            lambda s: (self._log_mgf(beta + s) - self._log_mgf(beta - s)) / (2 * s),
            FIRST_DERIVATIVE_STEP,
        )

    def lambda_double_prime(self, beta: float) -> float:
        self.check_beta(beta)
        center = self._log_mgf(beta)
        return self._richardson(
            lambda s: (self._log_mgf(beta + s) - 2 * center + self._log_mgf(beta - s)) / (s * s),
            SECOND_DERIVATIVE_STEP,
        )

    @abc.abstractmethod
    def _log_mgf(self, beta: float) -> float:
        """
        lambda(beta) without the range check.
        """
        raise Exception("Not implemented")

    @abc.abstractmethod
    def transform(self, raw: np.ndarray) -> np.ndarray:
        """
        Map raw counter output of shape (count, 4) to `count` site values.
        """
        raise Exception("Not implemented")

    @staticmethod
    def _richardson(stencil: Callable[[float], float], h: float) -> float:
        return (4.0 * stencil(h / 2) - stencil(h)) / 3.0

    @staticmethod
    def uniforms(words: np.ndarray) -> np.ndarray:
        """
        Open-interval uniforms from the top 52 bits of each word.
        """
        return ((words >> np.uint64(12)).astype(np.float64) + 0.5) * UNIFORM_SCALE

    def __str__(self) -> str:
        return self.name
