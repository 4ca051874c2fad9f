import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.run import run_polymer
from cauchytool.polymer.window import WindowSpec
from cauchytool.util import StatUtil
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)

LOWER_BOUND_LABEL = 'estimate of lower bound'


@dataclass(frozen=True)
class FreeEnergyEstimate:
    """
    Replica mean of (1/N) log Zbar_N.

    Since the free energy is the supremum over N of (1/N) E[log Zhat_N], every
    finite-N value estimates a lower bound of it.
    """
    beta: float
    horizon: int
    replicas: int
    mean: float
    stderr: float
    seeds: List[int] = field(repr=False)
    window_multiplier: float = float('nan')
    label: str = LOWER_BOUND_LABEL

    def row(self, master_seed: int) -> Dict[str, object]:
        return {
            'beta': self.beta,
            'N': self.horizon,
            'M': self.replicas,
            'mean': self.mean,
            'stderr': self.stderr,
            'window_R': self.window_multiplier,
            'seed': master_seed,
            'label': self.label,
        }


def estimate_free_energy(law: IncrementLaw,
                         env: EnvSpec,
                         beta: float,
                         horizon: int,
                         replicas: int,
                         window: WindowSpec,
                         pool: Optional[ReplicaPool] = None) -> FreeEnergyEstimate:
    """
    Run `replicas` independent environments with seeds derived from env.seed.
    """
    if replicas < 2:
        raise InvalidParameterError("Free energy needs M >= 2 replicas, got {}".format(replicas))

    pool = pool or ReplicaPool()

    def job(seed: int) -> float:
        run = run_polymer(law, env.with_seed(seed), beta, horizon, window, keep_layers=False)
        return run.log_zbar / horizon

    values = pool.map_seeds(job, env.seed, replicas)
    mean, stderr = StatUtil.mean_stderr(values)

    LOG.info("Free energy beta=%g N=%d M=%d: %.6g +- %.2g (%s)", beta, horizon, replicas, mean, stderr,
             LOWER_BOUND_LABEL)
    return FreeEnergyEstimate(
        beta, horizon, replicas, mean, stderr, pool.seeds(env.seed, replicas), window.multiplier
    )
