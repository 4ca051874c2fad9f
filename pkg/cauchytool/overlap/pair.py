import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import ndimage, signal

from cauchytool.env.field import FieldView
from cauchytool.env.mgf import gamma
from cauchytool.env.spec import EnvSpec
from cauchytool.errors import NumericOverflowError, ResourceLimitError
from cauchytool.polymer.window import WindowSpec
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)

# Largest number of (x, x') pair states held in memory
DEFAULT_STATE_BUDGET = 1 << 21

# Kernels up to this length are applied directly, longer ones by FFT
DIRECT_KERNEL_LIMIT = 65


@dataclass(frozen=True)
class PairMoment:
    """
    E[exp(gamma Y); S, S' in T] and E[beta^2 Y exp(gamma Y); S, S' in T] for the
    collision count Y = sum_{n <= N} 1{S_n = S'_n} of two independent walks.
    """
    beta: float
    horizon: int
    gamma: float
    moment: float
    weighted: float


def _spread(matrix: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """
    Apply the one-step kernel to both coordinates of the pair state, killing mass that leaves.
    """
    if kernel.size <= DIRECT_KERNEL_LIMIT:
        out = ndimage.convolve1d(matrix, kernel, axis=0, mode='constant', cval=0.0)
        return ndimage.convolve1d(out, kernel, axis=1, mode='constant', cval=0.0)

    out = signal.fftconvolve(matrix, kernel[:, np.newaxis], mode='same', axes=0)
    out = signal.fftconvolve(out, kernel[np.newaxis, :], mode='same', axes=1)
    np.maximum(out, 0.0, out=out)
    return out


def _check_budget(window: WindowSpec, budget: int) -> None:
    states = window.width * window.width
    if states > budget:
        raise ResourceLimitError(
            "Pair chain on radius {} needs {} states, budget is {}".format(window.radius, states, budget)
        )


def _pair_origin(window: WindowSpec) -> np.ndarray:
    state = np.zeros((window.width, window.width))
    state[window.radius, window.radius] = 1.0
    return state


def pair_overlap_moment(law: IncrementLaw,
                        env: EnvSpec,
                        beta: float,
                        horizon: int,
                        window: WindowSpec,
                        budget: int = DEFAULT_STATE_BUDGET) -> PairMoment:
    """
    Windowed second moment E[Zbar_N^2] = E^{x2}[exp(gamma(beta) Y_N); S, S' in T].

    The pair chain (S_n, S'_n) is propagated with the factor exp(gamma) on the
    diagonal. A second track carries the derivative in gamma, which is the
    Y-weighted expectation E[Y exp(gamma Y)].
    """
    window.check(law)
    _check_budget(window, budget)

    g = gamma(env, beta)
    factor = math.exp(g)
    kernel = np.array(law.probs)

    state = _pair_origin(window)
    derivative = np.zeros_like(state)
    for n in range(1, horizon + 1):
        state = _spread(state, kernel)
        derivative = _spread(derivative, kernel)

        diagonal = np.diagonal(state).copy() * factor
        np.fill_diagonal(state, diagonal)
        np.fill_diagonal(derivative, np.diagonal(derivative) * factor + diagonal)

    moment = float(np.sum(state))
    weighted = beta * beta * float(np.sum(derivative))
    if not (math.isfinite(moment) and math.isfinite(weighted)):
        raise NumericOverflowError("Pair moment overflowed at beta={} N={}".format(beta, horizon))

    LOG.debug("Pair moment beta=%g N=%d: %.10g (weighted %.10g)", beta, horizon, moment, weighted)
    return PairMoment(beta, horizon, g, moment, weighted)


def replica_collision_weight(law: IncrementLaw,
                             env: Union[EnvSpec, FieldView],
                             beta: float,
                             horizon: int,
                             window: WindowSpec,
                             budget: int = DEFAULT_STATE_BUDGET) -> float:
    """
    Environment-dependent pair sum

        sum_k sum_x E[exp(beta sum_n omega(n, S_n) - N lambda) 1{S_k = x, S in T}]^2

    evaluated with two replicas sharing the environment. Times beta^2 / Zbar^2
    it equals the squared gradient norm of log Zbar.
    """
    window.check(law)
    _check_budget(window, budget)

    view = env if isinstance(env, FieldView) else FieldView(env)
    lam = view.disorder.log_mgf(beta)
    kernel = np.array(law.probs)
    radius = window.radius

    state = _pair_origin(window)
    collisions = np.zeros_like(state)
    for n in range(1, horizon + 1):
        site = np.exp(beta * view.row(n, -radius, radius) - lam)
        potential = np.outer(site, site)
        state = _spread(state, kernel) * potential
        collisions = _spread(collisions, kernel) * potential
        collisions[np.diag_indices(window.width)] += np.diagonal(state)

    weight = float(np.sum(collisions))
    if not math.isfinite(weight):
        raise NumericOverflowError("Replica collision weight overflowed at beta={} N={}".format(beta, horizon))
    return weight
