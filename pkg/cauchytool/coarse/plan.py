import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from cauchytool.errors import InvalidParameterError, InvalidPlanError, NeedsLongerTableError, TooLargeBetaError
from cauchytool.overlap.diagnostics import restricted_overlap
from cauchytool.overlap.table import OverlapTable
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.1
DEFAULT_THETA = 0.7
DEFAULT_K = 3.0
DEFAULT_R = 8.0


@dataclass(frozen=True)
class CoarseGrainPlan:
    """
    Scales of the coarse-graining: block length l, chain gap bound u, chain
    order q, block multiplier R, penalty K and fractional exponent theta.
    """
    law: IncrementLaw = field(repr=False, compare=False)
    epsilon: float
    beta: float
    l: int
    u: int
    q: int
    multiplier: float
    k_penalty: float
    theta: float
    d_u: float
    a_l: int
    manual: bool = False

    @property
    def phi_l(self) -> float:
        return self.a_l / self.l

    @property
    def normalization(self) -> float:
        """
        (2 R l a_l)^-1/2 * D(u)^-q/2.
        """
        return (2.0 * self.multiplier * self.l * self.a_l) ** -0.5 * self.d_u ** (-0.5 * self.q)

    @property
    def site_reach(self) -> int:
        """
        Largest |x| with |x| < R a_l.
        """
        return int(math.ceil(self.multiplier * self.a_l)) - 1

    @property
    def upper_half_holds(self) -> bool:
        return self.beta ** 2 * self.d_u <= 1.0 + 2.0 * self.epsilon

    def check_w_window(self) -> None:
        if not self.l / 2 + self.q * self.u < self.l:
            raise InvalidPlanError(
                "W statistic needs l/2 + q*u < l, got l={} q={} u={}".format(self.l, self.q, self.u)
            )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop('law')
        return data


def _check_shape(epsilon: float, theta: float, multiplier: float, k_penalty: float) -> None:
    if not 0 < epsilon < 1:
        raise InvalidParameterError("epsilon must lie in (0, 1), got {}".format(epsilon))
    if not 0.5 < theta < 1:
        raise InvalidParameterError("theta must lie in (1/2, 1), got {}".format(theta))
    if not multiplier > 0:
        raise InvalidParameterError("R must be positive, got {}".format(multiplier))
    if not k_penalty > 0:
        raise InvalidParameterError("K must be positive, got {}".format(k_penalty))


def _check_order(l: int, u: int, q: int, error: type = InvalidPlanError) -> None:
    if not 1 <= q < u < l:
        raise error("Plan needs 1 <= q < u < l, got q={} u={} l={}".format(q, u, l))


def _block_length(u0: int, power: float) -> int:
    """
    Smallest n with floor(n^power) >= u0.
    """
    n = max(1, int(math.floor(u0 ** (1.0 / power))) - 2)
    while int(math.floor(n ** power)) < u0:
        n += 1
    while n > 1 and int(math.floor((n - 1) ** power)) >= u0:
        n -= 1
    return n


def plan(beta: float,
         epsilon: float,
         table: OverlapTable,
         theta: float = DEFAULT_THETA,
         multiplier: float = DEFAULT_R,
         k_penalty: float = DEFAULT_K) -> CoarseGrainPlan:
    """
    l = inf{n : D(floor(n^(1 - eps^2))) >= (1 + eps) / beta^2}, u = floor(l^(1 - eps^2)),
    q = ceil(eps^-2 max(log sqrt(phi(l)), log D(l))).
    """
    _check_shape(epsilon, theta, multiplier, k_penalty)
    if not beta > 0:
        raise InvalidParameterError("beta must be positive, got {}".format(beta))

    threshold = (1.0 + epsilon) / beta ** 2
    if table.d[table.n_max] < threshold:
        raise NeedsLongerTableError(threshold, table.n_max)

    power = 1.0 - epsilon ** 2
    u0 = int(np.searchsorted(table.d, threshold, side='left'))
    l = _block_length(u0, power)
    u = int(math.floor(l ** power))
    if l > table.n_max:
        raise NeedsLongerTableError(threshold, table.n_max)

    a_l = scaling_constants(table.law, l).a_n(l)
    d_l = float(table.d[l])
    logs = [0.5 * math.log(a_l / l)]
    if d_l > 0:
        logs.append(math.log(d_l))
    q = int(math.ceil(max(logs) / epsilon ** 2))

    _check_order(l, u, q, TooLargeBetaError)

    d_u = float(table.d[u])
    if beta ** 2 * d_u < 1.0 + epsilon:
        raise InvalidPlanError("beta^2 D(u) = {:.6g} < 1 + eps".format(beta ** 2 * d_u))

    result = CoarseGrainPlan(table.law, epsilon, beta, l, u, q, multiplier, k_penalty, theta, d_u, a_l)
    if not result.upper_half_holds:
        LOG.warning("beta^2 D(u) = %.6g exceeds 1 + 2 eps at l=%d", beta ** 2 * d_u, l)

    LOG.info("Plan beta=%g eps=%g: l=%d u=%d q=%d", beta, epsilon, l, u, q)
    return result


def manual_plan(law: IncrementLaw,
                beta: float,
                l: int,
                u: int,
                q: int,
                table: Optional[OverlapTable] = None,
                epsilon: float = DEFAULT_EPSILON,
                theta: float = DEFAULT_THETA,
                multiplier: float = DEFAULT_R,
                k_penalty: float = DEFAULT_K) -> CoarseGrainPlan:
    """
    Plan with explicit (l, u, q) for desk-scale experiments. D(u) is read from
    the table when given and summed from exact pmfs otherwise.
    """
    _check_shape(epsilon, theta, multiplier, k_penalty)
    _check_order(l, u, q)

    d_u = table.d_value(u) if table is not None else restricted_overlap(law, u, float('inf'))
    a_l = scaling_constants(law, l).a_n(l)
    return CoarseGrainPlan(law, epsilon, beta, l, u, q, multiplier, k_penalty, theta, d_u, a_l, True)
