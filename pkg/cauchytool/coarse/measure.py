import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from cauchytool.coarse.chain import g_function, w_exact_mean, w_statistic, x_statistic
from cauchytool.coarse.plan import CoarseGrainPlan
from cauchytool.env.field import FieldView, field
from cauchytool.env.mgf import lambda_prime
from cauchytool.env.spec import GAUSSIAN, EnvSpec
from cauchytool.errors import InvalidParameterError
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.run import run_polymer
from cauchytool.polymer.window import WindowSpec
from cauchytool.util import StatUtil
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.sampling import sample_walks


LOG = logging.getLogger(__name__)

FRACTIONAL_PROXY_LABEL = 'Monte-Carlo-biased upper-bound proxy'


@dataclass(frozen=True)
class SampleSummary:
    """
    Mean and second moment of a Monte Carlo sample, each with its standard error.
    """
    count: int
    mean: float
    mean_stderr: float
    second_moment: float
    second_moment_stderr: float
    std: float

    @classmethod
    def of(cls, values: Sequence[float]) -> 'SampleSummary':
        data = np.asarray(values, dtype=np.float64)
        mean, mean_stderr = StatUtil.mean_stderr(data)
        second, second_stderr = StatUtil.mean_stderr(data * data)
        std = float(np.std(data, ddof=1)) if data.size > 1 else 0.0
        return cls(int(data.size), mean, mean_stderr, second, second_stderr, std)


def sample_x_statistic(plan: CoarseGrainPlan,
                       env: EnvSpec,
                       replicas: int,
                       pool: Optional[ReplicaPool] = None,
                       tilt_path: Optional[np.ndarray] = None) -> List[float]:
    """
    X over `replicas` independent fields. With `tilt_path` every field is
    shifted by lambda'(beta) along the path.

    For gaussian-unit sites the shifted field is an exact sample of the
    size-biased law exp(beta * omega - lambda) dP along the path. For the other
    kinds the tilt also changes the shape of the site law, and the shift only
    matches its mean.
    """
    if replicas < 2:
        raise InvalidParameterError("Need M >= 2 fields, got {}".format(replicas))
    pool = pool or ReplicaPool()
    shift = lambda_prime(env, plan.beta) if tilt_path is not None else 0.0
    if tilt_path is not None and env.kind != GAUSSIAN:
        LOG.info("Tilt of %s sites by lambda'=%.6g matches the size-biased mean only", env.kind, shift)

    def job(seed: int) -> float:
        view: FieldView = field(env.with_seed(seed))
        if tilt_path is not None:
            view = view.tilted(tilt_path, shift)
        return x_statistic(plan, view)

    return pool.map_seeds(job, env.seed, replicas)


def sample_w_statistic(plan: CoarseGrainPlan, replicas: int, seed: int) -> np.ndarray:
    """
    W_l along `replicas` sampled trajectories of length l.
    """
    paths = sample_walks(plan.law, replicas, plan.l, seed)
    return w_statistic(plan, paths)


@dataclass(frozen=True)
class WMeanCheck:
    mean: float
    stderr: float
    exact: float

    @property
    def holds(self) -> bool:
        return abs(self.mean - self.exact) <= 3.0 * self.stderr


def w_mean_check(plan: CoarseGrainPlan, replicas: int, seed: int) -> WMeanCheck:
    mean, stderr = StatUtil.mean_stderr(sample_w_statistic(plan, replicas, seed))
    return WMeanCheck(mean, stderr, w_exact_mean(plan))


@dataclass(frozen=True)
class ChangeOfMeasureCost:
    """
    E[g^(-theta / (1 - theta))] by Monte Carlo, with the tail-probability form
    and the Chebyshev bound built from the same sample.
    """
    mean: float
    stderr: float
    tail_form: float
    chebyshev: float
    exceed_fraction: float


def change_of_measure_cost(plan: CoarseGrainPlan, x_values: Sequence[float]) -> ChangeOfMeasureCost:
    exponent = -plan.theta / (1.0 - plan.theta)
    costs = [g_function(plan, x) ** exponent for x in x_values]
    mean, stderr = StatUtil.mean_stderr(costs)

    data = np.asarray(x_values, dtype=np.float64)
    jump = math.exp(plan.theta * plan.k_penalty / (1.0 - plan.theta)) - 1.0
    exceed = float(np.mean(data >= math.exp(plan.k_penalty ** 2)))
    tail_form = 1.0 + jump * exceed
    chebyshev = 1.0 + jump * float(np.mean(data * data)) * math.exp(-2.0 * plan.k_penalty ** 2)
    return ChangeOfMeasureCost(mean, stderr, tail_form, chebyshev, exceed)


@dataclass(frozen=True)
class FractionalMomentEstimate:
    """
    Monte Carlo E[Zbar_N^theta] and the proxy (theta N)^-1 log of it.
    """
    beta: float
    theta: float
    horizon: int
    replicas: int
    mean: float
    stderr: float
    proxy: float
    label: str = FRACTIONAL_PROXY_LABEL


def fractional_moment(law: IncrementLaw,
                      env: EnvSpec,
                      beta: float,
                      theta: float,
                      horizon: int,
                      replicas: int,
                      window: WindowSpec,
                      pool: Optional[ReplicaPool] = None) -> FractionalMomentEstimate:
    if not 0 < theta < 1:
        raise InvalidParameterError("theta must lie in (0, 1), got {}".format(theta))
    if replicas < 2:
        raise InvalidParameterError("Need M >= 2 replicas, got {}".format(replicas))
    pool = pool or ReplicaPool()

    def job(seed: int) -> float:
        run = run_polymer(law, env.with_seed(seed), beta, horizon, window, keep_layers=False)
        return math.exp(theta * run.log_zbar)

    mean, stderr = StatUtil.mean_stderr(pool.map_seeds(job, env.seed, replicas))
    proxy = math.log(mean) / (theta * horizon)

    LOG.info("Fractional moment beta=%g theta=%g N=%d: %.6g +- %.2g", beta, theta, horizon, mean, stderr)
    return FractionalMomentEstimate(beta, theta, horizon, replicas, mean, stderr, proxy)
