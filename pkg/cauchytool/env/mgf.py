from typing import Tuple

from cauchytool.env.spec import EnvSpec


def log_mgf(spec: EnvSpec, beta: float) -> float:
    """
    lambda(beta) = log E[exp(beta * omega)].
    """
    return spec.disorder().log_mgf(beta)


def lambda_prime(spec: EnvSpec, beta: float) -> float:
    """
    lambda'(beta), the mean site value under the size-biased law.
    """
    return spec.disorder().lambda_prime(beta)


def lambda_double_prime(spec: EnvSpec, beta: float) -> float:
    return spec.disorder().lambda_double_prime(beta)


def gamma(spec: EnvSpec, beta: float) -> float:
    """
    gamma(beta) = lambda(2 beta) - 2 lambda(beta), the per-collision weight of the replica pair.
    """
    disorder = spec.disorder()
    value = disorder.log_mgf(2.0 * beta) - 2.0 * disorder.log_mgf(beta)
    # convexity and lambda(0) = 0 make this nonnegative; clamp rounding noise near 0
    return max(value, 0.0)


def tilted_moments(spec: EnvSpec, beta: float) -> Tuple[float, float]:
    """
    Mean and variance of a site value on the path under the size-biased law
    exp(beta * omega - lambda(beta)) dP: (lambda'(beta), lambda''(beta)).
    """
    disorder = spec.disorder()
    return disorder.lambda_prime(beta), disorder.lambda_double_prime(beta)
