import math

import numpy as np

from cauchytool.env.providers.base import Disorder


class RademacherDisorder(Disorder):
    """
    Site values +1 or -1 with probability 1/2 each, lambda(beta) = log cosh(beta).
    """

    name = 'rademacher'

    def _log_mgf(self, beta: float) -> float:
        # log cosh(b) = |b| + log1p(exp(-2|b|)) - log 2, stable for large |b|
        b = abs(beta)
        return b + math.log1p(math.exp(-2.0 * b)) - math.log(2.0)

    def lambda_prime(self, beta: float) -> float:
        self.check_beta(beta)
        return math.tanh(beta)

    def lambda_double_prime(self, beta: float) -> float:
        self.check_beta(beta)
        return 1.0 / math.cosh(beta) ** 2

    def transform(self, raw: np.ndarray) -> np.ndarray:
        bits = (raw[:, 0] >> np.uint64(63)).astype(np.float64)
        return 2.0 * bits - 1.0
