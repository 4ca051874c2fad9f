import logging
import math

import numpy as np
from scipy import integrate, special

from cauchytool.env.providers.base import Disorder
from cauchytool.errors import InvalidParameterError


LOG = logging.getLogger(__name__)

QUAD_TOLERANCE = 1e-13


class TruncatedGaussianDisorder(Disorder):
    """
    Standard normal conditioned on |Z| <= bound, rescaled to unit variance.

    lambda(beta) is evaluated by adaptive quadrature; its derivatives use the
    generic finite-difference route of the base class.
    """

    name = 'truncated-gaussian'

    def __init__(self, beta_max: float, bound: float) -> None:
        """
        Initialize instance and compute the rescaling to unit variance.
        """
        super().__init__(beta_max)
        if bound <= 0:
            raise InvalidParameterError("Truncation bound must be positive, got {}".format(bound))

        self.bound = bound
        self.mass = special.ndtr(bound) - special.ndtr(-bound)
        density = math.exp(-0.5 * bound * bound) / math.sqrt(2.0 * math.pi)
        self.scale = math.sqrt(1.0 - 2.0 * bound * density / self.mass)

    @property
    def support(self) -> float:
        """
        Largest attainable |omega| after rescaling.
        """
        return self.bound / self.scale

    def _log_mgf(self, beta: float) -> float:
        t = beta / self.scale

        def integrand(z: float) -> float:
            return math.exp(t * z - 0.5 * z * z)

        value, error = integrate.quad(
            integrand, -self.bound, self.bound, epsabs=QUAD_TOLERANCE, epsrel=QUAD_TOLERANCE
        )
        if error > 1e-10 * max(1.0, value):
            LOG.warning("Quadrature error %.3g at beta=%g exceeds tolerance", error, beta)

        return math.log(value / (math.sqrt(2.0 * math.pi) * self.mass))

    def log_mgf_closed_form(self, beta: float) -> float:
        """
        exp(t^2/2) * (Phi(B - t) - Phi(-B - t)) / (2 Phi(B) - 1), t = beta / scale, in log form.
        """
        t = beta / self.scale
        window = special.ndtr(self.bound - t) - special.ndtr(-self.bound - t)
        return 0.5 * t * t + math.log(window) - math.log(self.mass)

    def transform(self, raw: np.ndarray) -> np.ndarray:
        """
        Inverse CDF restricted to [-bound, bound], then rescaled.
        """
        low = special.ndtr(-self.bound)
        u = low + self.uniforms(raw[:, 0]) * self.mass
        values = special.ndtri(u)
        return np.clip(values, -self.bound, self.bound) / self.scale

    def __str__(self) -> str:
        return '{}({:g})'.format(self.name, self.bound)
