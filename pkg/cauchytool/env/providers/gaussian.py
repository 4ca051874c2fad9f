import numpy as np
from scipy import special

from cauchytool.env.providers.base import Disorder


class GaussianDisorder(Disorder):
    """
    Standard normal site values, lambda(beta) = beta^2 / 2.
    """

    name = 'gaussian-unit'

    def _log_mgf(self, beta: float) -> float:
        return 0.5 * beta * beta

    def lambda_prime(self, beta: float) -> float:
        self.check_beta(beta)
        return beta

    def lambda_double_prime(self, beta: float) -> float:
        self.check_beta(beta)
        return 1.0

    def transform(self, raw: np.ndarray) -> np.ndarray:
        """
        Inverse normal CDF of one uniform per site.
        """
        return special.ndtri(self.uniforms(raw[:, 0]))
