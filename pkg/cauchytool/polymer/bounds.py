import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from cauchytool.env.field import field
from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError, NeedsLongerTableError
from cauchytool.overlap.pair import pair_overlap_moment
from cauchytool.overlap.table import OverlapTable, d_inverse, fit_log_growth
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.run import grad_norm_sq, run_polymer
from cauchytool.polymer.window import WindowSpec
from cauchytool.util import StatUtil
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)

# Existential constants of the beta^-4 upper bound, unknown and set to 1
PLACEHOLDER_C1 = 1.0
PLACEHOLDER_C2 = 1.0


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon < 1:
        raise InvalidParameterError("epsilon must lie in (0, 1), got {}".format(epsilon))


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise InvalidParameterError("beta must be positive, got {}".format(beta))


def n_beta_eps(beta: float, epsilon: float, table: OverlapTable) -> int:
    """
    max{n : D(n) <= (1 - epsilon) / beta^2}.
    """
    _check_beta(beta)
    _check_epsilon(epsilon)
    return d_inverse(table, (1.0 - epsilon) / (beta * beta))


@dataclass(frozen=True)
class BoundReport:
    """
    Numerical values of the free-energy bounds at one (beta, epsilon).

    The upper bound in D^-1((1 + eps) / beta^2) is printed with both exponent
    readings, +(1 + eps) as stated and -(1 + eps) which is consistent with the
    lower bound. The beta^-4 upper bound uses placeholder constants.
    """
    beta: float
    epsilon: float
    upper_horizon: int
    upper_stated: float
    upper_reciprocal: Optional[float]
    weak_horizon: Optional[int]
    weak_upper: Optional[float]
    weak_constants_placeholder: bool
    lower_horizon: int
    lower: Optional[float]
    lower_note: str
    log_growth_slope: Optional[float]
    limit_constant: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def bound_report(beta: float,
                 epsilon: float,
                 table: OverlapTable,
                 fit_from: int = 1 << 6) -> BoundReport:
    """
    Evaluate the upper and lower free-energy bounds on the overlap table.

    Raises NeedsLongerTableError when a horizon of the main bounds lies beyond
    the table. The beta^-4 horizon is reported as None in that case since its
    constants are placeholders anyway.
    """
    _check_beta(beta)
    _check_epsilon(epsilon)

    upper_horizon = d_inverse(table, (1.0 + epsilon) / beta ** 2)
    upper_stated = -float(upper_horizon) ** (1.0 + epsilon)
    upper_reciprocal = -float(upper_horizon) ** -(1.0 + epsilon) if upper_horizon > 0 else None

    lower_horizon = d_inverse(table, (1.0 - epsilon) / beta ** 2)
    if lower_horizon == 0:
        lower, lower_note = None, 'horizon 0, bound vacuous'
    else:
        lower, lower_note = -float(lower_horizon) ** -(1.0 - epsilon), ''

    try:
        weak_horizon: Optional[int] = d_inverse(table, PLACEHOLDER_C2 / beta ** 4)
        weak_upper: Optional[float] = -PLACEHOLDER_C1 * weak_horizon
    except NeedsLongerTableError:
        LOG.warning("beta^-4 horizon at beta=%g lies beyond N_max=%d", beta, table.n_max)
        weak_horizon, weak_upper = None, None

    slope: Optional[float] = None
    limit: Optional[float] = None
    if table.n_max >= 2 * fit_from:
        slope = fit_log_growth(table, fit_from)['slope']
        limit = -1.0 / slope

    return BoundReport(
        beta, epsilon,
        upper_horizon, upper_stated, upper_reciprocal,
        weak_horizon, weak_upper, True,
        lower_horizon, lower, lower_note,
        slope, limit,
    )


@dataclass(frozen=True)
class GoodEventEstimate:
    """
    Monte Carlo probability of {Zbar >= 1/2, |grad log Zbar| <= gradient_bound}
    reported next to the Paley-Zygmund lower bound of P(Zbar >= 1/2).
    """
    probability: float
    stderr: float
    paley_zygmund: float
    window_probability: float
    second_moment: float
    replicas: int


def _window_probability(law: IncrementLaw, env: EnvSpec, horizon: int, window: WindowSpec) -> float:
    return run_polymer(law, env, 0.0, horizon, window, keep_layers=False).z_bar


def good_event_probability(law: IncrementLaw,
                           env: EnvSpec,
                           beta: float,
                           horizon: int,
                           replicas: int,
                           window: WindowSpec,
                           gradient_bound: float,
                           pool: Optional[ReplicaPool] = None) -> GoodEventEstimate:
    """
    Fraction of environments where Zbar >= 1/2 and the gradient norm is at most gradient_bound.
    """
    if replicas < 2:
        raise InvalidParameterError("Need M >= 2 replicas, got {}".format(replicas))
    pool = pool or ReplicaPool()

    def job(seed: int) -> float:
        run = run_polymer(law, env.with_seed(seed), beta, horizon, window)
        good = run.z_bar >= 0.5 and math.sqrt(grad_norm_sq(run)) <= gradient_bound
        return 1.0 if good else 0.0

    probability, stderr = StatUtil.mean_stderr(pool.map_seeds(job, env.seed, replicas))

    mean = _window_probability(law, env, horizon, window)
    second = pair_overlap_moment(law, env, beta, horizon, window).moment
    paley_zygmund = max(mean - 0.5, 0.0) ** 2 / second

    LOG.info("Good event probability %.4g +- %.2g, Paley-Zygmund bound %.4g", probability, stderr, paley_zygmund)
    return GoodEventEstimate(probability, stderr, paley_zygmund, mean, second, replicas)


@dataclass(frozen=True)
class GradientMomentCheck:
    """
    E[|grad log Zbar|^2 1{Zbar >= 1/2}] by Monte Carlo against 4 E[beta^2 Y exp(gamma Y)].
    """
    mean: float
    stderr: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.mean <= self.bound + 3.0 * self.stderr


def gradient_second_moment_check(law: IncrementLaw,
                                 env: EnvSpec,
                                 beta: float,
                                 horizon: int,
                                 replicas: int,
                                 window: WindowSpec,
                                 pool: Optional[ReplicaPool] = None) -> GradientMomentCheck:
    """
    Averaged form of the gradient bound on the event {Zbar >= 1/2}.
    """
    if replicas < 2:
        raise InvalidParameterError("Need M >= 2 replicas, got {}".format(replicas))
    pool = pool or ReplicaPool()

    def job(seed: int) -> float:
        run = run_polymer(law, field(env.with_seed(seed)), beta, horizon, window)
        return grad_norm_sq(run) if run.z_bar >= 0.5 else 0.0

    mean, stderr = StatUtil.mean_stderr(pool.map_seeds(job, env.seed, replicas))
    bound = 4.0 * pair_overlap_moment(law, env, beta, horizon, window).weighted

    check = GradientMomentCheck(mean, stderr, bound)
    if not check.holds:
        LOG.warning("Gradient second moment %.6g exceeds bound %.6g", mean, bound)
    return check


def window_escape_probability(law: IncrementLaw, env: EnvSpec, horizon: int, window: WindowSpec) -> float:
    """
    P(S leaves the window before N).
    """
    return float(np.clip(1.0 - _window_probability(law, env, horizon, window), 0.0, 1.0))
